#ifndef UNILIN_INTERVAL_HPP
#define UNILIN_INTERVAL_HPP

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>

namespace unilin {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Directed-rounding primitives. The result of *_down is a double that is
// <= the exact real result, *_up is >= it. Both are the tightest such double
// whenever the error-free transformation is exact (no underflow).
namespace rounding {

double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_down(double a);
double sqrt_up(double a);

// Move `steps` units in the last place toward -inf / +inf.
double pad_down(double x, int steps);
double pad_up(double x, int steps);

} // namespace rounding

// Bitmask of conditions raised while evaluating interval expressions.
enum class EvalFlag : std::uint8_t {
    none = 0,
    undefined_quotient = 1U << 0U, // division by [0,0]
    domain_violation = 1U << 1U,   // argument entirely outside a function's domain
};

constexpr EvalFlag operator|(EvalFlag a, EvalFlag b)
{
    return static_cast<EvalFlag>(static_cast<std::uint8_t>(a) | static_cast<std::uint8_t>(b));
}
constexpr EvalFlag& operator|=(EvalFlag& a, EvalFlag b) { return a = a | b; }
constexpr bool has_flag(EvalFlag set, EvalFlag f)
{
    return (static_cast<std::uint8_t>(set) & static_cast<std::uint8_t>(f)) != 0;
}

// Closed interval [lo, hi] with binary64 endpoints, lo may be -inf and hi
// may be +inf. The empty set is a distinguished value.
class Interval {
public:
    // [0, 0]
    constexpr Interval() = default;
    // Degenerate interval [x, x]. Throws std::invalid_argument on NaN or infinity.
    explicit Interval(double x);
    // Throws std::invalid_argument if lo > hi, an endpoint is NaN, lo = +inf or hi = -inf.
    Interval(double lo, double hi);

    static Interval empty() noexcept;
    static Interval entire() noexcept { return Interval(-kInf, kInf, Unchecked{}); }

    [[nodiscard]] double lo() const noexcept { return lo_; }
    [[nodiscard]] double hi() const noexcept { return hi_; }

    [[nodiscard]] bool is_empty() const noexcept { return lo_ > hi_; }
    [[nodiscard]] bool is_thin() const noexcept { return lo_ == hi_; }
    [[nodiscard]] bool is_bounded() const noexcept { return lo_ > -kInf && hi_ < kInf; }
    [[nodiscard]] bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
    [[nodiscard]] bool contains_zero() const noexcept { return contains(0.0); }
    // Subset test; the empty set is a subset of everything.
    [[nodiscard]] bool subset_of(const Interval& other) const noexcept;

    friend bool operator==(const Interval& a, const Interval& b) noexcept;

private:
    struct Unchecked {};
    constexpr Interval(double lo, double hi, Unchecked) noexcept : lo_(lo), hi_(hi) {}

    double lo_ = 0.0;
    double hi_ = 0.0;
};

Interval add(const Interval& a, const Interval& b);
Interval sub(const Interval& a, const Interval& b);
Interval neg(const Interval& a);
Interval mul(const Interval& a, const Interval& b);
// A denominator containing zero (other than [0,0]) yields [-inf, +inf];
// [0,0] yields Empty and raises EvalFlag::undefined_quotient.
Interval div(const Interval& a, const Interval& b, EvalFlag* flags = nullptr);

inline Interval operator+(const Interval& a, const Interval& b) { return add(a, b); }
inline Interval operator-(const Interval& a, const Interval& b) { return sub(a, b); }
inline Interval operator-(const Interval& a) { return neg(a); }
inline Interval operator*(const Interval& a, const Interval& b) { return mul(a, b); }
inline Interval operator/(const Interval& a, const Interval& b) { return div(a, b); }

enum class StdFunction : std::uint8_t { sin, cos, exp, ln, sqrt, abs };

std::string to_string(StdFunction f);

// Enclosure of f over a ∩ domain(f). Empty input, or an input disjoint from
// the domain, gives Empty (the latter raises EvalFlag::domain_violation).
Interval eval_std(StdFunction f, const Interval& a, EvalFlag* flags = nullptr);

Interval hull(const Interval& a, const Interval& b);
Interval intersect(const Interval& a, const Interval& b);

// hi - lo rounded upward. Precondition: a is nonempty.
double width(const Interval& a);
// Midpoint rounded to nearest; finite whenever an endpoint is finite.
double mid(const Interval& a);
// min{|x| : x in a}
double mignitude(const Interval& a);
// max{|x| : x in a}
double magnitude(const Interval& a);

std::string to_string(const Interval& a);
std::ostream& operator<<(std::ostream& os, const Interval& a);

} // namespace unilin

#endif
