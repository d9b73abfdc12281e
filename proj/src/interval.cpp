#include "unilin/interval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace unilin {

namespace rounding {

namespace {

constexpr double kMax = std::numeric_limits<double>::max();
// Below this magnitude the error terms of fma-based transformations may be
// inexact, so results are padded by one ulp unconditionally.
constexpr double kTiny = 0x1p-960;

double next_down(double x) { return std::nextafter(x, -kInf); }
double next_up(double x) { return std::nextafter(x, kInf); }

// Clean up the sign of zero so that printed endpoints never read "-0".
double unsign_zero(double x) { return x == 0.0 ? 0.0 : x; }

// Error of a + b = s, exact when s is finite.
double two_sum_error(double a, double b, double s)
{
    const double bb = s - a;
    return (a - (s - bb)) + (b - bb);
}

enum class Direction { down, up };

double overflowed(double value, Direction dir)
{
    // value is +-inf produced from finite operands
    if (dir == Direction::down) {
        return value > 0 ? kMax : -kInf;
    }
    return value < 0 ? -kMax : kInf;
}

double adjust(double value, double error_sign, Direction dir)
{
    if (dir == Direction::down) {
        return error_sign < 0 ? next_down(value) : value;
    }
    return error_sign > 0 ? next_up(value) : value;
}

double pad_one(double value, Direction dir)
{
    return dir == Direction::down ? next_down(value) : next_up(value);
}

double add_dir(double a, double b, Direction dir)
{
    const double s = a + b;
    if (!std::isfinite(s)) {
        if (std::isfinite(a) && std::isfinite(b)) {
            return overflowed(s, dir);
        }
        return s;
    }
    return unsign_zero(adjust(s, two_sum_error(a, b, s), dir));
}

double mul_dir(double a, double b, Direction dir)
{
    // 0 * inf is taken as 0, the interval-arithmetic convention.
    if (a == 0.0 || b == 0.0) {
        return 0.0;
    }
    const double p = a * b;
    if (!std::isfinite(p)) {
        if (std::isfinite(a) && std::isfinite(b)) {
            return overflowed(p, dir);
        }
        return p;
    }
    if (std::abs(p) < kTiny) {
        return pad_one(p, dir);
    }
    return unsign_zero(adjust(p, std::fma(a, b, -p), dir));
}

double div_dir(double a, double b, Direction dir)
{
    if (a == 0.0) {
        return 0.0;
    }
    if (std::isinf(b)) {
        // finite / inf -> 0; inf / inf is excluded by callers
        return 0.0;
    }
    const double q = a / b;
    if (!std::isfinite(q)) {
        if (std::isfinite(a)) {
            return overflowed(q, dir);
        }
        return q;
    }
    if (std::abs(q) < kTiny || std::abs(a) < kTiny) {
        return unsign_zero(pad_one(q, dir));
    }
    // a - q*b is exact, its sign relative to b decides the side of q.
    const double rem = std::fma(-q, b, a);
    const double side = (rem == 0.0) ? 0.0 : ((rem > 0) == (b > 0) ? 1.0 : -1.0);
    return unsign_zero(adjust(q, side, dir));
}

double sqrt_dir(double a, Direction dir)
{
    const double r = std::sqrt(a);
    if (a == 0.0 || std::isinf(a)) {
        return r;
    }
    if (a < kTiny) {
        return dir == Direction::down ? std::max(0.0, next_down(r)) : next_up(r);
    }
    const double rem = std::fma(-r, r, a);
    return adjust(r, rem, dir);
}

} // namespace

double add_down(double a, double b) { return add_dir(a, b, Direction::down); }
double add_up(double a, double b) { return add_dir(a, b, Direction::up); }
double sub_down(double a, double b) { return add_dir(a, -b, Direction::down); }
double sub_up(double a, double b) { return add_dir(a, -b, Direction::up); }
double mul_down(double a, double b) { return mul_dir(a, b, Direction::down); }
double mul_up(double a, double b) { return mul_dir(a, b, Direction::up); }
double div_down(double a, double b) { return div_dir(a, b, Direction::down); }
double div_up(double a, double b) { return div_dir(a, b, Direction::up); }
double sqrt_down(double a) { return sqrt_dir(a, Direction::down); }
double sqrt_up(double a) { return sqrt_dir(a, Direction::up); }

double pad_down(double x, int steps)
{
    for (int i = 0; i < steps; ++i) {
        x = next_down(x);
    }
    return x;
}

double pad_up(double x, int steps)
{
    for (int i = 0; i < steps; ++i) {
        x = next_up(x);
    }
    return x;
}

} // namespace rounding

using namespace rounding;

Interval::Interval(double x) : lo_(x), hi_(x)
{
    if (!std::isfinite(x)) {
        throw std::invalid_argument("degenerate interval requires a finite value");
    }
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi)
{
    if (std::isnan(lo) || std::isnan(hi) || lo > hi || lo == kInf || hi == -kInf) {
        std::ostringstream msg;
        msg << "invalid interval [" << lo << ", " << hi << "]";
        throw std::invalid_argument(msg.str());
    }
}

Interval Interval::empty() noexcept { return Interval(kInf, -kInf, Unchecked{}); }

bool Interval::subset_of(const Interval& other) const noexcept
{
    if (is_empty()) {
        return true;
    }
    return other.lo_ <= lo_ && hi_ <= other.hi_;
}

bool operator==(const Interval& a, const Interval& b) noexcept
{
    if (a.is_empty() || b.is_empty()) {
        return a.is_empty() && b.is_empty();
    }
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
}

Interval add(const Interval& a, const Interval& b)
{
    if (a.is_empty() || b.is_empty()) {
        return Interval::empty();
    }
    return {add_down(a.lo(), b.lo()), add_up(a.hi(), b.hi())};
}

Interval sub(const Interval& a, const Interval& b)
{
    if (a.is_empty() || b.is_empty()) {
        return Interval::empty();
    }
    return {sub_down(a.lo(), b.hi()), sub_up(a.hi(), b.lo())};
}

Interval neg(const Interval& a)
{
    if (a.is_empty()) {
        return a;
    }
    return {a.hi() == 0.0 ? 0.0 : -a.hi(), a.lo() == 0.0 ? 0.0 : -a.lo()};
}

Interval mul(const Interval& a, const Interval& b)
{
    if (a.is_empty() || b.is_empty()) {
        return Interval::empty();
    }
    const double ends_a[2] = {a.lo(), a.hi()};
    const double ends_b[2] = {b.lo(), b.hi()};
    double lo = kInf;
    double hi = -kInf;
    for (double x : ends_a) {
        for (double y : ends_b) {
            lo = std::min(lo, mul_down(x, y));
            hi = std::max(hi, mul_up(x, y));
        }
    }
    return {lo, hi};
}

Interval div(const Interval& a, const Interval& b, EvalFlag* flags)
{
    if (a.is_empty() || b.is_empty()) {
        return Interval::empty();
    }
    if (b.lo() == 0.0 && b.hi() == 0.0) {
        if (flags != nullptr) {
            *flags |= EvalFlag::undefined_quotient;
        }
        return Interval::empty();
    }
    if (b.contains_zero()) {
        if (a.lo() == 0.0 && a.hi() == 0.0) {
            return Interval(0.0);
        }
        if (a.contains_zero() || (b.lo() < 0.0 && b.hi() > 0.0)) {
            return Interval::entire();
        }
        if (b.lo() == 0.0) {
            if (a.hi() < 0.0) {
                return {-kInf, div_up(a.hi(), b.hi())};
            }
            return {div_down(a.lo(), b.hi()), kInf};
        }
        // b.hi() == 0
        if (a.hi() < 0.0) {
            return {div_down(a.hi(), b.lo()), kInf};
        }
        return {-kInf, div_up(a.lo(), b.lo())};
    }
    if (b.lo() > 0.0) {
        if (a.lo() >= 0.0) {
            return {div_down(a.lo(), b.hi()), div_up(a.hi(), b.lo())};
        }
        if (a.hi() <= 0.0) {
            return {div_down(a.lo(), b.lo()), div_up(a.hi(), b.hi())};
        }
        return {div_down(a.lo(), b.lo()), div_up(a.hi(), b.lo())};
    }
    if (a.lo() >= 0.0) {
        return {div_down(a.hi(), b.hi()), div_up(a.lo(), b.lo())};
    }
    if (a.hi() <= 0.0) {
        return {div_down(a.hi(), b.lo()), div_up(a.lo(), b.hi())};
    }
    return {div_down(a.hi(), b.hi()), div_up(a.lo(), b.hi())};
}

std::string to_string(StdFunction f)
{
    switch (f) {
    case StdFunction::sin:
        return "sin";
    case StdFunction::cos:
        return "cos";
    case StdFunction::exp:
        return "exp";
    case StdFunction::ln:
        return "ln";
    case StdFunction::sqrt:
        return "sqrt";
    case StdFunction::abs:
        return "abs";
    }
    return "?";
}

namespace {

// Scalar libm results are trusted to within this many ulps.
constexpr int kLibmPad = 4;
// Beyond this magnitude the critical-point search for sin/cos is not attempted.
constexpr double kTrigArgLimit = 1e8;

Interval clamp_unit(double lo, double hi)
{
    return {std::max(-1.0, pad_down(lo, kLibmPad)), std::min(1.0, pad_up(hi, kLibmPad))};
}

// Whether some point phase + k*2pi (k integer) may lie in [lo, hi]. Errs on
// the side of answering yes.
bool may_contain_phase(double lo, double hi, double phase)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    constexpr double slack = 1e-9;
    const double k_lo = std::ceil((lo - phase) / two_pi - slack);
    const double k_hi = std::floor((hi - phase) / two_pi + slack);
    return k_lo <= k_hi;
}

Interval eval_trig(double (*fn)(double), double max_phase, double min_phase, const Interval& a)
{
    constexpr double full_turn = 6.3;
    if (!a.is_bounded() || std::abs(a.lo()) > kTrigArgLimit || std::abs(a.hi()) > kTrigArgLimit ||
        a.hi() - a.lo() >= full_turn) {
        return {-1.0, 1.0};
    }
    const double f_lo = fn(a.lo());
    const double f_hi = fn(a.hi());
    double lo = std::min(f_lo, f_hi);
    double hi = std::max(f_lo, f_hi);
    bool exact_hi = false;
    bool exact_lo = false;
    if (may_contain_phase(a.lo(), a.hi(), max_phase)) {
        hi = 1.0;
        exact_hi = true;
    }
    if (may_contain_phase(a.lo(), a.hi(), min_phase)) {
        lo = -1.0;
        exact_lo = true;
    }
    const Interval padded = clamp_unit(lo, hi);
    return {exact_lo ? -1.0 : padded.lo(), exact_hi ? 1.0 : padded.hi()};
}

void raise(EvalFlag* flags, EvalFlag f)
{
    if (flags != nullptr) {
        *flags |= f;
    }
}

} // namespace

Interval eval_std(StdFunction f, const Interval& a, EvalFlag* flags)
{
    if (a.is_empty()) {
        return a;
    }
    constexpr double pi = std::numbers::pi;
    switch (f) {
    case StdFunction::sin:
        return eval_trig([](double x) { return std::sin(x); }, pi / 2, -pi / 2, a);
    case StdFunction::cos:
        return eval_trig([](double x) { return std::cos(x); }, 0.0, pi, a);
    case StdFunction::exp: {
        const double lo = a.lo() == -kInf ? 0.0 : std::max(0.0, pad_down(std::exp(a.lo()), kLibmPad));
        const double hi = a.hi() == kInf ? kInf : pad_up(std::exp(a.hi()), kLibmPad);
        return {lo, hi};
    }
    case StdFunction::ln: {
        if (a.hi() <= 0.0) {
            raise(flags, EvalFlag::domain_violation);
            return Interval::empty();
        }
        const double lo = a.lo() <= 0.0 ? -kInf : pad_down(std::log(a.lo()), kLibmPad);
        const double hi = a.hi() == kInf ? kInf : pad_up(std::log(a.hi()), kLibmPad);
        return {lo, hi};
    }
    case StdFunction::sqrt: {
        if (a.hi() < 0.0) {
            raise(flags, EvalFlag::domain_violation);
            return Interval::empty();
        }
        return {sqrt_down(std::max(0.0, a.lo())), sqrt_up(a.hi())};
    }
    case StdFunction::abs:
        if (a.lo() >= 0.0) {
            return a;
        }
        if (a.hi() <= 0.0) {
            return neg(a);
        }
        return {0.0, std::max(-a.lo(), a.hi())};
    }
    return Interval::entire();
}

Interval hull(const Interval& a, const Interval& b)
{
    if (a.is_empty()) {
        return b;
    }
    if (b.is_empty()) {
        return a;
    }
    return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

Interval intersect(const Interval& a, const Interval& b)
{
    if (a.is_empty() || b.is_empty()) {
        return Interval::empty();
    }
    const double lo = std::max(a.lo(), b.lo());
    const double hi = std::min(a.hi(), b.hi());
    if (lo > hi) {
        return Interval::empty();
    }
    return {lo, hi};
}

double width(const Interval& a) { return sub_up(a.hi(), a.lo()); }

double mid(const Interval& a)
{
    constexpr double max = std::numeric_limits<double>::max();
    if (a.lo() == -kInf) {
        return a.hi() == kInf ? 0.0 : -max;
    }
    if (a.hi() == kInf) {
        return max;
    }
    return 0.5 * a.lo() + 0.5 * a.hi();
}

double mignitude(const Interval& a)
{
    if (a.contains_zero()) {
        return 0.0;
    }
    return std::min(std::abs(a.lo()), std::abs(a.hi()));
}

double magnitude(const Interval& a) { return std::max(std::abs(a.lo()), std::abs(a.hi())); }

std::string to_string(const Interval& a)
{
    std::ostringstream os;
    os << a;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Interval& a)
{
    if (a.is_empty()) {
        return os << "[empty]";
    }
    const auto flags = os.flags();
    const auto prec = os.precision(17);
    os << '[' << a.lo() << ", " << a.hi() << ']';
    os.flags(flags);
    os.precision(prec);
    return os;
}

} // namespace unilin
