#ifndef UNILIN_ORACLE_HPP
#define UNILIN_ORACLE_HPP

// Exact rational reference solver. Test support only: nothing in the solving
// pipeline links against it.

#include "unilin/program.hpp"
#include "unilin/rational.hpp"
#include "unilin/simplex.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace unilin::oracle {

inline constexpr std::size_t kMaxVariables = 8;
inline constexpr std::size_t kMaxRows = 12;

struct RationalRow {
    std::vector<Rational> coeffs; // one per variable
    std::optional<Rational> lo;
    std::optional<Rational> hi;
};

// Linear program with exact data; absent bounds are infinite.
struct RationalProgram {
    std::vector<std::string> variables;
    std::vector<RationalRow> rows;
    std::vector<std::optional<Rational>> box_lo;
    std::vector<std::optional<Rational>> box_hi;

    explicit RationalProgram(std::vector<std::string> vars = {});

    [[nodiscard]] std::size_t size() const { return variables.size(); }
    [[nodiscard]] bool satisfied_by(const std::vector<Rational>& point) const;
    // Tightest interval program containing this one.
    [[nodiscard]] IntervalLinearProgram to_interval() const;
};

// Exact copy of a program whose coefficients are all thin. Throws
// std::invalid_argument otherwise.
RationalProgram from_thin(const IntervalLinearProgram& program);

enum class ExactStatus { optimal, infeasible, unbounded };

struct ExactOptimum {
    ExactStatus status = ExactStatus::infeasible;
    Rational value;
    std::vector<Rational> point;
    // Sup-norm condition number of n linearly independent constraints tight
    // at `point`; +inf when fewer than n exist.
    double condition = kInf;
};

// Two-phase rational simplex with Bland's rule. Phase 1 runs once; every
// optimize() call starts from the feasible basis it found. Throws
// std::length_error above kMaxVariables variables or kMaxRows rows.
class ExactLp {
public:
    explicit ExactLp(const RationalProgram& program);
    ~ExactLp();
    ExactLp(const ExactLp&) = delete;
    ExactLp& operator=(const ExactLp&) = delete;

    [[nodiscard]] bool feasible() const;
    // Minimizes cost . x.
    [[nodiscard]] ExactOptimum minimize(const std::vector<Rational>& cost) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

ExactOptimum exact_optimum(const RationalProgram& program, std::size_t var, Direction direction);

// Vertices hit by optimizing +-e_j for every variable plus `random_objectives`
// random directions. Empty when infeasible.
std::vector<std::vector<Rational>> vertices(const RationalProgram& program, std::mt19937_64& rng,
                                            std::size_t random_objectives = 4);

// Random convex combinations of the given points.
std::vector<std::vector<Rational>> convex_combinations(const std::vector<std::vector<Rational>>& points,
                                                       std::size_t count, std::mt19937_64& rng);

struct SampledSolution {
    RationalProgram realization;
    std::vector<Rational> point;
};

// Points of random exact realizations of the interval program (coefficients
// and bounds drawn inside their intervals). Each point satisfies its
// realization exactly. May return fewer than `count` points.
std::vector<SampledSolution> sample_solutions(const IntervalLinearProgram& program, std::size_t count,
                                              std::mt19937_64& rng);

} // namespace unilin::oracle

#endif
