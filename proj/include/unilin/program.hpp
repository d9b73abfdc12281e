#ifndef UNILIN_PROGRAM_HPP
#define UNILIN_PROGRAM_HPP

#include "unilin/interval.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace unilin {

// Interval-coefficient linear expression  sum_j coeffs[j] * x_j + constant.
// Variables absent from `coeffs` have coefficient [0,0].
struct LinearForm {
    std::map<std::string, Interval> coeffs;
    Interval constant{0.0};

    static LinearForm unit(const std::string& var);

    [[nodiscard]] bool is_constant() const { return coeffs.empty(); }
    [[nodiscard]] Interval coeff(const std::string& var) const;

    // Drops exact-zero coefficients.
    void normalize();

    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

LinearForm add(const LinearForm& a, const LinearForm& b);
LinearForm sub(const LinearForm& a, const LinearForm& b);
LinearForm neg(const LinearForm& a);
LinearForm scale(const Interval& factor, const LinearForm& a);

std::string to_string(const LinearForm& f);

// Variable box: name -> enclosure, or the distinguished infeasible box.
class Box {
public:
    Box() = default;
    explicit Box(std::map<std::string, Interval> intervals);

    static Box infeasible_box();

    [[nodiscard]] bool infeasible() const { return infeasible_; }
    void mark_infeasible();

    // Missing variables read as [-inf, +inf].
    [[nodiscard]] Interval get(const std::string& var) const;
    // Intersects the stored interval with `value`; marks the box infeasible
    // when the result is empty. Returns the new interval.
    Interval narrow(const std::string& var, const Interval& value);
    void set(const std::string& var, const Interval& value);

    [[nodiscard]] const std::map<std::string, Interval>& intervals() const { return intervals_; }

    // True if every interval of this box lies inside the matching interval of
    // `other` (an infeasible box is a subset of everything).
    [[nodiscard]] bool subset_of(const Box& other) const;

    friend bool operator==(const Box&, const Box&) = default;

private:
    std::map<std::string, Interval> intervals_;
    bool infeasible_ = false;
};

Box intersect(const Box& a, const Box& b);

// A number <= inf{ sum_j r_j x_j : r_j in r.coeffs[j], x in box }, computed
// with downward rounding. r.constant is ignored. -inf when a nonzero
// coefficient meets an unbounded box side.
double dot_lower(const LinearForm& r, const Box& box);

// One constraint of an interval linear program: form(x) in bound, with the
// form's constant already folded into the bound.
struct Row {
    LinearForm form;
    Interval bound;
};

// { x in box : for all rows, some realization a of the coefficient intervals
// has a.x in bound }.
struct IntervalLinearProgram {
    std::vector<std::string> variables;
    std::vector<Row> rows;
    Box box;

    [[nodiscard]] std::optional<std::size_t> index_of(const std::string& var) const;
    // Adds `var` to `variables` if absent.
    void declare(const std::string& var);
    // Throws std::invalid_argument when a row references an undeclared
    // variable, a row bound is empty or a form carries a nonzero constant.
    void validate() const;
};

} // namespace unilin

#endif
