#ifndef UNILIN_SAFEBOUND_HPP
#define UNILIN_SAFEBOUND_HPP

#include "unilin/program.hpp"
#include "unilin/simplex.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace unilin {

struct SafeBoundReport {
    // <= objective(x) for every x of the program lying in the box; may be -inf.
    double bound = -kInf;
    // objective - sum_i used_duals[i] * row_i, in interval arithmetic.
    LinearForm residual;
    // Multipliers after sign clamping.
    std::vector<double> used_duals;
};

// Rigorous lower bound of `objective` (constant ignored) over the program
// restricted to `box`, from arbitrary approximate row multipliers:
//   bound = inf(residual . box) + sum_i (y_i >= 0 ? y_i L_i : y_i U_i)
// with a multiplier set to zero when its sign needs an infinite bound side.
// `duals` must have one entry per program row.
SafeBoundReport safe_lower_bound(const IntervalLinearProgram& program, const LinearForm& objective,
                                 const std::vector<double>& duals, const Box& box);

// Lower bound of `var` (Direction::min) or upper bound of `var`
// (Direction::max, using multipliers from a max solve, which certify
// min -var). The reported bound is in terms of `var` itself.
SafeBoundReport safe_bound(const IntervalLinearProgram& program, const std::string& var, Direction direction,
                           const std::vector<double>& duals, const Box& box);

struct TightenOptions {
    std::size_t sweeps = 3;
    // A sweep counts as progress when some width shrinks by at least this
    // relative factor.
    double improvement_threshold = 0.01;
    SimplexLimits limits;
};

struct TightenResult {
    Box box;
    std::size_t sweeps = 0;
    std::size_t simplex_iterations = 0;
    // Box after each completed sweep.
    std::vector<Box> history;

    [[nodiscard]] bool infeasible() const { return box.infeasible(); }
};

// Certified enclosure of the program's solutions: per-variable min/max simplex
// solves certified by safe_bound and intersected with the current box,
// repeated in sweeps. A certified-empty program yields an infeasible box.
TightenResult tighten_box(const IntervalLinearProgram& program, const TightenOptions& options = {});

// Same, refining a known enclosure `start` of the program's solutions. The
// simplex still works on the program's own box, so a smaller `start` can
// only tighten the certified result.
TightenResult tighten_box(const IntervalLinearProgram& program, const Box& start,
                          const TightenOptions& options = {});

// "l <= x;" and "x <= u;" statements per finite side, with outward decimal
// rounding to `digits` significant digits. An infeasible box gives "1 = 0;".
std::vector<std::string> enclosure_to_constraints(const Box& box, int digits = 17);

} // namespace unilin

#endif
