#include "unilin/format.hpp"

#include "unilin/rational.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace unilin {

namespace {

Rational power_of_ten(long e)
{
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(e)));
    if (e >= 0) {
        return Rational(p);
    }
    Rational q(mpz_class(1), p);
    q.canonicalize();
    return q;
}

// k * 10^p as plain or scientific decimal text.
std::string decimal_text(const mpz_class& k, long p)
{
    if (k == 0) {
        return "0";
    }
    std::string s = mpz_class(abs(k)).get_str();
    while (s.size() > 1 && s.back() == '0') {
        s.pop_back();
        ++p;
    }
    const std::string sign = k < 0 ? "-" : "";
    const long len = static_cast<long>(s.size());
    if (p >= 0 && len + p <= 21) {
        return sign + s + std::string(static_cast<std::size_t>(p), '0');
    }
    if (p < 0) {
        const long point = len + p;
        if (point > 0) {
            return sign + s.substr(0, static_cast<std::size_t>(point)) + "." +
                   s.substr(static_cast<std::size_t>(point));
        }
        if (point > -7) {
            return sign + "0." + std::string(static_cast<std::size_t>(-point), '0') + s;
        }
    }
    std::string out = sign + s.substr(0, 1);
    if (len > 1) {
        out += "." + s.substr(1);
    }
    return out + "e" + std::to_string(len - 1 + p);
}

std::string format_directed(double x, int digits, bool up)
{
    if (digits < 1) {
        throw std::invalid_argument("digits must be at least 1");
    }
    if (std::isnan(x)) {
        throw std::invalid_argument("cannot format NaN");
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    if (x == 0.0) {
        return "0";
    }
    const Rational q = exact_rational(x);
    const Rational mag = abs(q);
    // decimal exponent e with 10^e <= |x| < 10^(e+1)
    long e = static_cast<long>(std::floor(std::log10(std::abs(x))));
    while (power_of_ten(e) > mag) {
        --e;
    }
    while (power_of_ten(e + 1) <= mag) {
        ++e;
    }
    const long p = e - digits + 1;
    const Rational scaled = q / power_of_ten(p);
    mpz_class k;
    if (up) {
        mpz_cdiv_q(k.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    } else {
        mpz_fdiv_q(k.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    }
    return decimal_text(k, p);
}

} // namespace

std::string format_down(double x, int digits) { return format_directed(x, digits, false); }
std::string format_up(double x, int digits) { return format_directed(x, digits, true); }

std::pair<std::string, std::string> print_outward(const Interval& x, int digits)
{
    if (x.is_empty()) {
        return {"empty", "empty"};
    }
    return {format_down(x.lo(), digits), format_up(x.hi(), digits)};
}

} // namespace unilin
