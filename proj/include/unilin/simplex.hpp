#ifndef UNILIN_SIMPLEX_HPP
#define UNILIN_SIMPLEX_HPP

#include "unilin/program.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace unilin {

enum class LpStatus { optimal, unbounded, infeasible, iteration_limit };
enum class Direction { min, max };

std::string to_string(LpStatus status);

struct SimplexLimits {
    // 0 selects 50 * (standard-form rows + variables).
    std::size_t max_iterations = 0;
    // Relative to max(1, largest |right-hand side|).
    double feasibility_tol = 1e-9;
    double reduced_cost_tol = 1e-9;
    double pivot_tol = 1e-11;
};

// Non-reliable answer of a dense floating-point simplex.
//
// Dual sign convention: a positive multiplier supports a row's lower bound,
// a negative one its upper bound, so that objective ~= sum_i duals[i] * row_i
// + sum_j box_duals[j] * x_j. For infeasible exits the multipliers are the
// phase-1 (Farkas) multipliers instead.
struct SimplexSolution {
    LpStatus status = LpStatus::iteration_limit;
    double objective = 0.0;
    std::vector<double> primal;    // per program variable
    std::vector<double> duals;     // per program row
    std::vector<double> box_duals; // per program variable (box rows)
    std::vector<double> ray;       // unbounded direction, empty otherwise
    std::size_t iterations = 0;
};

// Minimizes or maximizes one variable over the midpoint realization of the
// program. Box bounds enter as explicit rows. Throws std::invalid_argument if
// `var` is not a program variable.
SimplexSolution solve_lp(const IntervalLinearProgram& program, const std::string& var, Direction direction,
                         const SimplexLimits& limits = {});

} // namespace unilin

#endif
