#include "unilin/program.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace unilin {

LinearForm LinearForm::unit(const std::string& var)
{
    LinearForm f;
    f.coeffs.emplace(var, Interval(1.0));
    return f;
}

Interval LinearForm::coeff(const std::string& var) const
{
    const auto it = coeffs.find(var);
    return it == coeffs.end() ? Interval(0.0) : it->second;
}

void LinearForm::normalize()
{
    std::erase_if(coeffs, [](const auto& entry) {
        return entry.second.lo() == 0.0 && entry.second.hi() == 0.0;
    });
}

LinearForm add(const LinearForm& a, const LinearForm& b)
{
    LinearForm out = a;
    for (const auto& [var, c] : b.coeffs) {
        auto [it, inserted] = out.coeffs.emplace(var, c);
        if (!inserted) {
            it->second = it->second + c;
        }
    }
    out.constant = a.constant + b.constant;
    out.normalize();
    return out;
}

LinearForm neg(const LinearForm& a)
{
    LinearForm out;
    for (const auto& [var, c] : a.coeffs) {
        out.coeffs.emplace(var, -c);
    }
    out.constant = -a.constant;
    return out;
}

LinearForm sub(const LinearForm& a, const LinearForm& b) { return add(a, neg(b)); }

LinearForm scale(const Interval& factor, const LinearForm& a)
{
    LinearForm out;
    for (const auto& [var, c] : a.coeffs) {
        out.coeffs.emplace(var, factor * c);
    }
    out.constant = factor * a.constant;
    out.normalize();
    return out;
}

std::string to_string(const LinearForm& f)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [var, c] : f.coeffs) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << c << "*" << var;
    }
    if (first || !(f.constant.lo() == 0.0 && f.constant.hi() == 0.0)) {
        if (!first) {
            os << " + ";
        }
        os << f.constant;
    }
    return os.str();
}

Box::Box(std::map<std::string, Interval> intervals) : intervals_(std::move(intervals))
{
    for (const auto& [var, iv] : intervals_) {
        if (iv.is_empty()) {
            infeasible_ = true;
        }
    }
}

Box Box::infeasible_box()
{
    Box b;
    b.infeasible_ = true;
    return b;
}

void Box::mark_infeasible() { infeasible_ = true; }

Interval Box::get(const std::string& var) const
{
    const auto it = intervals_.find(var);
    return it == intervals_.end() ? Interval::entire() : it->second;
}

Interval Box::narrow(const std::string& var, const Interval& value)
{
    const Interval result = intersect(get(var), value);
    intervals_.insert_or_assign(var, result);
    if (result.is_empty()) {
        infeasible_ = true;
    }
    return result;
}

void Box::set(const std::string& var, const Interval& value)
{
    intervals_.insert_or_assign(var, value);
    if (value.is_empty()) {
        infeasible_ = true;
    }
}

bool Box::subset_of(const Box& other) const
{
    if (infeasible_) {
        return true;
    }
    if (other.infeasible_) {
        return false;
    }
    for (const auto& [var, iv] : other.intervals_) {
        if (!get(var).subset_of(iv)) {
            return false;
        }
    }
    return true;
}

Box intersect(const Box& a, const Box& b)
{
    if (a.infeasible() || b.infeasible()) {
        return Box::infeasible_box();
    }
    Box out = a;
    for (const auto& [var, iv] : b.intervals()) {
        out.narrow(var, iv);
    }
    return out;
}

double dot_lower(const LinearForm& r, const Box& box)
{
    double sum = 0.0;
    for (const auto& [var, c] : r.coeffs) {
        if (c.lo() == 0.0 && c.hi() == 0.0) {
            continue;
        }
        const Interval term = c * box.get(var);
        sum = rounding::add_down(sum, term.lo());
        if (sum == -kInf) {
            return sum;
        }
    }
    return sum;
}

std::optional<std::size_t> IntervalLinearProgram::index_of(const std::string& var) const
{
    const auto it = std::find(variables.begin(), variables.end(), var);
    if (it == variables.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - variables.begin());
}

void IntervalLinearProgram::declare(const std::string& var)
{
    if (!index_of(var)) {
        variables.push_back(var);
    }
}

void IntervalLinearProgram::validate() const
{
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& row = rows[i];
        if (row.bound.is_empty()) {
            throw std::invalid_argument("row " + std::to_string(i) + " has an empty bound");
        }
        if (!(row.form.constant.lo() == 0.0 && row.form.constant.hi() == 0.0)) {
            throw std::invalid_argument("row " + std::to_string(i) + " carries an unfolded constant");
        }
        for (const auto& [var, c] : row.form.coeffs) {
            if (!index_of(var)) {
                throw std::invalid_argument("row " + std::to_string(i) + " references undeclared variable '" +
                                            var + "'");
            }
            if (c.is_empty()) {
                throw std::invalid_argument("row " + std::to_string(i) + " has an empty coefficient");
            }
        }
    }
}

} // namespace unilin
