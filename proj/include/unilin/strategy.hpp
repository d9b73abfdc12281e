#ifndef UNILIN_STRATEGY_HPP
#define UNILIN_STRATEGY_HPP

#include "unilin/model.hpp"
#include "unilin/program.hpp"
#include "unilin/safebound.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace unilin {

enum class SolverMode { lin, gauss, combined };

std::string to_string(SolverMode mode);
// "lin", "gauss" or "combined"; throws std::invalid_argument otherwise.
SolverMode solver_mode_from_string(const std::string& text);

struct ThinSplit {
    std::vector<std::size_t> thin; // equations with a (near) point right-hand side
    std::vector<std::size_t> rest;
};

// Row i is thin iff width(bound_i) <= eps * max(1, |mid(bound_i)|).
ThinSplit split_thin(const IntervalLinearProgram& program, double eps);

struct SolveOptions {
    SolverMode mode = SolverMode::combined;
    double thin_eps = 1e-10;
    std::size_t sweeps = 3;
    double improvement_threshold = 0.01;
    // Explicit elimination order for the Gauss stage (diagnostics).
    std::optional<std::vector<std::string>> order;
    SimplexLimits limits;
};

struct StageBox {
    std::string stage;
    Box box;
};

struct SolveReport {
    std::vector<StageBox> stages;
    std::size_t sweeps = 0;
    std::size_t simplex_iterations = 0;
    std::size_t gauss_resolved = 0;
    std::size_t rows = 0;
    std::size_t thin_rows = 0;
    // Stage that proved infeasibility, if any.
    std::optional<std::string> infeasible_stage;
    std::vector<std::string> warnings;
};

struct SolveResult {
    Box box;
    SolveReport report;

    [[nodiscard]] bool infeasible() const { return box.infeasible(); }
};

// Runs the chosen solver on an already relaxed program:
//   lin      - certified simplex enclosure of all rows;
//   gauss    - interval elimination over all rows read as interval equations;
//   combined - elimination over the thin rows, then the certified simplex
//              enclosure of all rows starting from the narrowed box.
SolveResult solve_program(const IntervalLinearProgram& program, const SolveOptions& options = {});

// evaluate_ranges -> relax -> solve_program.
SolveResult solve(const Model& model, const SolveOptions& options = {});

} // namespace unilin

#endif
