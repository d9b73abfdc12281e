#include "unilin/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace unilin {

Interval enclose(const Rational& q)
{
    static const Rational max_double = exact_rational(std::numeric_limits<double>::max());
    if (q > max_double) {
        return {std::numeric_limits<double>::max(), kInf};
    }
    if (q < -max_double) {
        return {-kInf, -std::numeric_limits<double>::max()};
    }
    // mpq_get_d truncates toward zero.
    const double d = q.get_d();
    const int side = cmp(exact_rational(d), q);
    if (side == 0) {
        return Interval(d);
    }
    if (side < 0) {
        return {d, std::nextafter(d, kInf)};
    }
    return {std::nextafter(d, -kInf), d};
}

Rational exact_rational(double x)
{
    if (!std::isfinite(x)) {
        throw std::invalid_argument("exact_rational: non-finite value");
    }
    Rational q(x); // mpq_set_d is exact
    return q;
}

Rational ratio(long p, long q)
{
    Rational r(p, q);
    r.canonicalize();
    return r;
}

namespace {

mpz_class pow10(unsigned long exponent)
{
    mpz_class result;
    mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
    return result;
}

[[noreturn]] void malformed(std::string_view text)
{
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        auto all_digits = [](std::string_view s) {
            if (s.empty()) {
                return false;
            }
            for (char c : s) {
                if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
                    return false;
                }
            }
            return true;
        };
        if (!all_digits(num) || !all_digits(den)) {
            malformed(text);
        }
        const mpz_class n(std::string(num), 10);
        const mpz_class d(std::string(den), 10);
        if (d == 0) {
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        }
        Rational q(n, d);
        q.canonicalize();
        return q;
    }

    std::string digits;
    long exponent = 0;
    bool seen_point = false;
    bool seen_digit = false;
    std::size_t i = 0;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) {
                --exponent;
            }
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) {
        malformed(text);
    }
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') {
            malformed(text);
        }
        ++i;
        bool negative = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            negative = text[i] == '-';
            ++i;
        }
        if (i == text.size()) {
            malformed(text);
        }
        long e = 0;
        for (; i < text.size(); ++i) {
            const char c = text[i];
            if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
                malformed(text);
            }
            if (e > 100000) {
                throw std::invalid_argument("exponent out of range in '" + std::string(text) + "'");
            }
            e = e * 10 + (c - '0');
        }
        exponent += negative ? -e : e;
    }

    mpz_class mantissa(digits, 10);
    Rational q;
    if (exponent >= 0) {
        q = Rational(mantissa * pow10(static_cast<unsigned long>(exponent)));
    } else {
        q = Rational(mantissa, pow10(static_cast<unsigned long>(-exponent)));
        q.canonicalize();
    }
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

} // namespace unilin
