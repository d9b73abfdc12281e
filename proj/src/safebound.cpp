#include "unilin/safebound.hpp"

#include "unilin/format.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace unilin {

SafeBoundReport safe_lower_bound(const IntervalLinearProgram& program, const LinearForm& objective,
                                 const std::vector<double>& duals, const Box& box)
{
    if (duals.size() != program.rows.size()) {
        throw std::invalid_argument("safe_lower_bound: one multiplier per row expected");
    }
    SafeBoundReport report;
    report.used_duals.assign(duals.size(), 0.0);
    report.residual.coeffs = objective.coeffs;

    double support = 0.0;
    for (std::size_t i = 0; i < duals.size(); ++i) {
        const Row& row = program.rows[i];
        double y = duals[i];
        if (std::isnan(y) || (y > 0.0 && row.bound.lo() == -kInf) || (y < 0.0 && row.bound.hi() == kInf)) {
            y = 0.0;
        }
        report.used_duals[i] = y;
        if (y == 0.0) {
            continue;
        }
        const Interval weight(y);
        for (const auto& [var, c] : row.form.coeffs) {
            auto [it, inserted] = report.residual.coeffs.emplace(var, Interval(0.0));
            it->second = it->second - weight * c;
        }
        const double side = y > 0.0 ? row.bound.lo() : row.bound.hi();
        support = rounding::add_down(support, rounding::mul_down(y, side));
    }
    report.residual.normalize();
    report.bound = rounding::add_down(dot_lower(report.residual, box), support);
    return report;
}

SafeBoundReport safe_bound(const IntervalLinearProgram& program, const std::string& var, Direction direction,
                           const std::vector<double>& duals, const Box& box)
{
    if (direction == Direction::min) {
        return safe_lower_bound(program, LinearForm::unit(var), duals, box);
    }
    SafeBoundReport report = safe_lower_bound(program, neg(LinearForm::unit(var)), duals, box);
    report.bound = -report.bound;
    return report;
}

namespace {

bool width_improved(const Interval& before, const Interval& after, double threshold)
{
    if (after.is_empty()) {
        return true;
    }
    const double w0 = width(before);
    const double w1 = width(after);
    if (w0 == kInf) {
        return w1 < kInf;
    }
    if (w0 == 0.0) {
        return false;
    }
    return (w0 - w1) >= threshold * w0;
}

} // namespace

TightenResult tighten_box(const IntervalLinearProgram& program, const TightenOptions& options)
{
    return tighten_box(program, program.box, options);
}

TightenResult tighten_box(const IntervalLinearProgram& program, const Box& start, const TightenOptions& options)
{
    program.validate();
    TightenResult result;
    result.box = intersect(program.box, start);
    for (const std::string& var : program.variables) {
        if (!result.box.intervals().contains(var)) {
            result.box.set(var, Interval::entire());
        }
    }
    if (result.box.infeasible() || program.variables.empty()) {
        return result;
    }

    // The simplex sees the program's own box; a tighter certified box leaves
    // the LP optimum unchanged, so one solve per objective serves all sweeps
    // and only the residual term is re-evaluated on the shrinking box.
    struct Solves {
        SimplexSolution lower;
        SimplexSolution upper;
    };
    std::vector<Solves> solves;
    std::optional<std::vector<double>> farkas;
    solves.reserve(program.variables.size());
    for (const std::string& var : program.variables) {
        Solves s{solve_lp(program, var, Direction::min, options.limits),
                 solve_lp(program, var, Direction::max, options.limits)};
        result.simplex_iterations += s.lower.iterations + s.upper.iterations;
        if (s.lower.status == LpStatus::infeasible && !farkas) {
            farkas = s.lower.duals;
        }
        solves.push_back(std::move(s));
    }

    const LinearForm zero;
    for (std::size_t sweep = 0; sweep < options.sweeps; ++sweep) {
        const Box& current = result.box;
        if (farkas && safe_lower_bound(program, zero, *farkas, current).bound > 0.0) {
            result.box = Box::infeasible_box();
            result.sweeps = sweep + 1;
            result.history.push_back(result.box);
            return result;
        }
        Box next = current;
        bool progress = false;
        for (std::size_t j = 0; j < program.variables.size(); ++j) {
            const std::string& var = program.variables[j];
            const Interval before = current.get(var);
            double lo = -kInf;
            double hi = kInf;
            if (solves[j].lower.status == LpStatus::optimal) {
                lo = safe_bound(program, var, Direction::min, solves[j].lower.duals, current).bound;
            }
            if (solves[j].upper.status == LpStatus::optimal) {
                hi = safe_bound(program, var, Direction::max, solves[j].upper.duals, current).bound;
            }
            if (lo > hi || lo == kInf || hi == -kInf) {
                next = Box::infeasible_box();
                break;
            }
            const Interval after = next.narrow(var, Interval(lo, hi));
            if (after.is_empty()) {
                break;
            }
            progress = progress || width_improved(before, after, options.improvement_threshold);
        }
        result.box = std::move(next);
        result.sweeps = sweep + 1;
        result.history.push_back(result.box);
        if (result.box.infeasible() || !progress) {
            break;
        }
    }
    if (result.box.infeasible()) {
        result.box = Box::infeasible_box();
    }
    return result;
}

std::vector<std::string> enclosure_to_constraints(const Box& box, int digits)
{
    if (box.infeasible()) {
        return {"1 = 0;"};
    }
    std::vector<std::string> out;
    for (const auto& [var, iv] : box.intervals()) {
        const auto [lo, hi] = print_outward(iv, digits);
        if (iv.lo() > -kInf) {
            out.push_back(lo + " <= " + var + ";");
        }
        if (iv.hi() < kInf) {
            out.push_back(var + " <= " + hi + ";");
        }
    }
    return out;
}

} // namespace unilin
