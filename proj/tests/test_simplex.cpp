#include "unilin/simplex.hpp"

#include "support/instances.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace unilin;

namespace {

// Midpoint-row feasibility of a point, with absolute tolerance.
bool midpoint_feasible(const IntervalLinearProgram& p, const std::vector<double>& x, double tol)
{
    for (const Row& r : p.rows) {
        double v = 0.0;
        for (const auto& [var, c] : r.form.coeffs) {
            v += mid(c) * x[*p.index_of(var)];
        }
        if (v < r.bound.lo() - tol || v > r.bound.hi() + tol) {
            return false;
        }
    }
    for (std::size_t j = 0; j < p.variables.size(); ++j) {
        const Interval b = p.box.get(p.variables[j]);
        if (x[j] < b.lo() - tol || x[j] > b.hi() + tol) {
            return false;
        }
    }
    return true;
}

// || c - A^T y ||_inf over the midpoint matrix, box rows included.
double dual_residual(const IntervalLinearProgram& p, const std::string& var, Direction dir, const SimplexSolution& s)
{
    std::vector<double> r(p.variables.size(), 0.0);
    r[*p.index_of(var)] = dir == Direction::min ? 1.0 : -1.0;
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        for (const auto& [v, c] : p.rows[i].form.coeffs) {
            r[*p.index_of(v)] -= s.duals[i] * mid(c);
        }
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
        worst = std::max(worst, std::abs(r[j] - s.box_duals[j]));
    }
    return worst;
}

} // namespace

TEST(Simplex, SquareExample)
{
    const IntervalLinearProgram p = fixtures::square_program();
    const SimplexSolution sx = solve_lp(p, "x", Direction::min);
    ASSERT_EQ(sx.status, LpStatus::optimal);
    EXPECT_NEAR(sx.objective, 0.0, 1e-12);
    EXPECT_NEAR(sx.primal[0], 0.0, 1e-12);
    EXPECT_NEAR(sx.primal[1], 0.0, 1e-12);

    const SimplexSolution sy = solve_lp(p, "y", Direction::min);
    ASSERT_EQ(sy.status, LpStatus::optimal);
    EXPECT_NEAR(sy.objective, -0.5, 1e-12);
    EXPECT_NEAR(sy.primal[0], 0.5, 1e-12);
    EXPECT_NEAR(sy.primal[1], -0.5, 1e-12);

    const SimplexSolution mx = solve_lp(p, "x", Direction::max);
    ASSERT_EQ(mx.status, LpStatus::optimal);
    EXPECT_NEAR(mx.objective, 1.0, 1e-12);
}

TEST(Simplex, SingleBindingRow)
{
    IntervalLinearProgram p;
    p.variables = {"x"};
    p.rows.push_back({LinearForm::unit("x"), Interval(3.0)});
    const SimplexSolution s = solve_lp(p, "x", Direction::min);
    ASSERT_EQ(s.status, LpStatus::optimal);
    EXPECT_EQ(s.objective, 3.0);
    EXPECT_NEAR(s.duals[0], 1.0, 1e-12);

    const SimplexSolution m = solve_lp(p, "x", Direction::max);
    ASSERT_EQ(m.status, LpStatus::optimal);
    EXPECT_EQ(m.objective, 3.0);
    // max x is min -x: the multiplier supports the upper side.
    EXPECT_NEAR(m.duals[0], -1.0, 1e-12);
}

TEST(Simplex, InfeasibleAndUnbounded)
{
    IntervalLinearProgram p;
    p.variables = {"x", "y"};
    p.rows.push_back({LinearForm{{{"x", Interval(1.0)}, {"y", Interval(1.0)}}, Interval(0.0)}, Interval(0, 1)});
    p.rows.push_back({LinearForm{{{"x", Interval(1.0)}, {"y", Interval(1.0)}}, Interval(0.0)}, Interval(2, 3)});
    EXPECT_EQ(solve_lp(p, "x", Direction::min).status, LpStatus::infeasible);

    IntervalLinearProgram q;
    q.variables = {"x", "y"};
    q.rows.push_back({LinearForm{{{"x", Interval(1.0)}, {"y", Interval(-1.0)}}, Interval(0.0)}, Interval(0, 1)});
    q.box.set("y", Interval(-kInf, 5));
    const SimplexSolution s = solve_lp(q, "x", Direction::min);
    ASSERT_EQ(s.status, LpStatus::unbounded);
    ASSERT_EQ(s.ray.size(), 2U);
    EXPECT_LT(s.ray[0], 0.0);
    for (double step : {10.0, 100.0}) {
        std::vector<double> x = s.primal;
        for (std::size_t j = 0; j < x.size(); ++j) {
            x[j] += step * s.ray[j];
        }
        EXPECT_TRUE(midpoint_feasible(q, x, 1e-9)) << step;
    }
    EXPECT_THROW(solve_lp(q, "nope", Direction::min), std::invalid_argument);
}

TEST(Simplex, RaysStayFeasibleOnRandomUnboundedPrograms)
{
    std::mt19937_64 rng(41);
    int unbounded = 0;
    for (int k = 0; k < 200; ++k) {
        oracle::RationalProgram rp = fixtures::random_thin_program(rng, 2, 4, 1, 3);
        for (std::size_t j = 0; j < rp.size(); ++j) {
            if (j % 2 == 0) {
                rp.box_lo[j].reset();
            } else {
                rp.box_hi[j].reset();
            }
        }
        const IntervalLinearProgram p = rp.to_interval();
        for (const std::string& v : p.variables) {
            const SimplexSolution s = solve_lp(p, v, Direction::min);
            if (s.status != LpStatus::unbounded) {
                continue;
            }
            ++unbounded;
            for (double step : {10.0, 100.0}) {
                std::vector<double> x = s.primal;
                for (std::size_t j = 0; j < x.size(); ++j) {
                    x[j] += step * s.ray[j];
                }
                ASSERT_TRUE(midpoint_feasible(p, x, 1e-7)) << k << " " << v;
            }
        }
    }
    EXPECT_GT(unbounded, 20);
}

TEST(Simplex, InfiniteRowsHaveZeroDuals)
{
    IntervalLinearProgram p = fixtures::square_program();
    p.rows.push_back({LinearForm{{{"x", Interval(2.0)}, {"y", Interval(1.0)}}, Interval(0.0)}, Interval::entire()});
    const SimplexSolution s = solve_lp(p, "y", Direction::min);
    ASSERT_EQ(s.status, LpStatus::optimal);
    EXPECT_EQ(s.duals[2], 0.0);
}

TEST(Simplex, IterationLimit)
{
    SimplexLimits limits;
    limits.max_iterations = 1;
    const SimplexSolution s = solve_lp(fixtures::square_program(), "y", Direction::min, limits);
    EXPECT_EQ(s.status, LpStatus::iteration_limit);
}

TEST(Simplex, AgreesWithRationalOracle)
{
    std::mt19937_64 rng(2718);
    int compared = 0;
    for (int k = 0; k < 120; ++k) {
        const oracle::RationalProgram rp = fixtures::random_thin_program(rng);
        const IntervalLinearProgram p = rp.to_interval();
        for (std::size_t j = 0; j < rp.size(); ++j) {
            for (Direction dir : {Direction::min, Direction::max}) {
                const oracle::ExactOptimum exact = oracle::exact_optimum(rp, j, dir);
                const SimplexSolution s = solve_lp(p, p.variables[j], dir);
                if (exact.status == oracle::ExactStatus::infeasible) {
                    EXPECT_EQ(s.status, LpStatus::infeasible);
                    continue;
                }
                ASSERT_EQ(exact.status, oracle::ExactStatus::optimal);
                ASSERT_EQ(s.status, LpStatus::optimal) << k;
                EXPECT_TRUE(midpoint_feasible(p, s.primal, 1e-8));
                EXPECT_LE(dual_residual(p, p.variables[j], dir, s), 1e-7);
                if (exact.condition <= 1e6) {
                    const double e = exact.value.get_d();
                    EXPECT_LE(std::abs(s.objective - e), 1e-9 * (1 + std::abs(e))) << k << " var " << j;
                    ++compared;
                }
            }
        }
    }
    EXPECT_GT(compared, 500);
}

TEST(Simplex, IllConditionedSystem)
{
    const IntervalLinearProgram p = fixtures::relaxed(fixtures::kIllConditionedModel);
    const SimplexSolution s = solve_lp(p, "x", Direction::min);
    ASSERT_EQ(s.status, LpStatus::optimal);
    EXPECT_NEAR(s.objective, 2.0, 0.1);
}
