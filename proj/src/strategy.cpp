#include "unilin/strategy.hpp"

#include "unilin/gauss.hpp"
#include "unilin/relax.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace unilin {

std::string to_string(SolverMode mode)
{
    switch (mode) {
    case SolverMode::lin:
        return "lin";
    case SolverMode::gauss:
        return "gauss";
    case SolverMode::combined:
        return "combined";
    }
    return "?";
}

SolverMode solver_mode_from_string(const std::string& text)
{
    if (text == "lin") {
        return SolverMode::lin;
    }
    if (text == "gauss") {
        return SolverMode::gauss;
    }
    if (text == "combined") {
        return SolverMode::combined;
    }
    throw std::invalid_argument("unknown solver '" + text + "' (expected lin, gauss or combined)");
}

ThinSplit split_thin(const IntervalLinearProgram& program, double eps)
{
    ThinSplit split;
    for (std::size_t i = 0; i < program.rows.size(); ++i) {
        const Interval& b = program.rows[i].bound;
        const bool thin = b.is_bounded() && width(b) <= eps * std::max(1.0, std::abs(mid(b)));
        (thin ? split.thin : split.rest).push_back(i);
    }
    return split;
}

namespace {

void record(SolveResult& result, const std::string& stage, const Box& box)
{
    result.report.stages.push_back({stage, box});
    if (box.infeasible() && !result.report.infeasible_stage) {
        result.report.infeasible_stage = stage;
    }
}

// Validated up front: with E empty Gauss never runs and would not notice.
void check_order(const std::vector<std::string>& order, const std::vector<std::string>& variables)
{
    for (const std::string& var : order) {
        if (std::find(variables.begin(), variables.end(), var) == variables.end()) {
            throw std::invalid_argument("elimination order names unknown variable '" + var + "'");
        }
    }
}

} // namespace

SolveResult solve_program(const IntervalLinearProgram& program, const SolveOptions& options)
{
    program.validate();
    SolveResult result;
    result.box = program.box;
    result.report.rows = program.rows.size();
    record(result, "relax", result.box);
    if (result.box.infeasible()) {
        return result;
    }

    const ThinSplit split = split_thin(program, options.thin_eps);
    result.report.thin_rows = split.thin.size();

    if (options.mode != SolverMode::lin) {
        // Both modes eliminate over E only, so LIN started from the Gauss box
        // can only shrink the gauss-only result.
        std::vector<Row> equations;
        for (std::size_t i : split.thin) {
            equations.push_back(program.rows[i]);
        }
        if (options.order) {
            check_order(*options.order, program.variables);
        }
        if (!equations.empty()) {
            const GaussResult gauss = interval_gauss(equations, program.variables, result.box, options.order);
            result.report.gauss_resolved = gauss.resolved;
            result.box = gauss.box;
            record(result, "gauss", result.box);
            if (result.box.infeasible()) {
                return result;
            }
        }
    }

    if (options.mode != SolverMode::gauss) {
        const TightenResult lin = tighten_box(
            program, result.box, TightenOptions{options.sweeps, options.improvement_threshold, options.limits});
        result.report.sweeps = lin.sweeps;
        result.report.simplex_iterations = lin.simplex_iterations;
        result.box = lin.box;
        record(result, "lin", result.box);
    }
    return result;
}

SolveResult solve(const Model& model, const SolveOptions& options)
{
    const Model evaluated = evaluate_ranges(model);
    if (evaluated.infeasible()) {
        SolveResult result;
        result.box = Box::infeasible_box();
        result.report.warnings = model.warnings();
        result.report.warnings.push_back(*evaluated.infeasible_reason());
        record(result, "ranges", result.box);
        return result;
    }
    SolveResult result = solve_program(relax(evaluated), options);
    result.report.warnings.insert(result.report.warnings.begin(), model.warnings().begin(),
                                  model.warnings().end());
    return result;
}

} // namespace unilin
