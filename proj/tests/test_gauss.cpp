#include "unilin/gauss.hpp"

#include "support/instances.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace unilin;

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Exact solution of a nonsingular square system, or nullopt.
std::optional<std::vector<Rational>> solve_exact(Matrix a, std::vector<Rational> b)
{
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) {
            ++p;
        }
        if (p == n) {
            return std::nullopt;
        }
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) {
                a[r][j] -= f * a[c][j];
            }
            b[r] -= f * b[c];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            s -= a[i][j] * x[j];
        }
        x[i] = s / a[i][i];
    }
    return x;
}

bool contains_exact(const Interval& iv, const Rational& q)
{
    return (iv.lo() == -kInf || exact_rational(iv.lo()) <= q) && (iv.hi() == kInf || q <= exact_rational(iv.hi()));
}

// Endpoints match the exact ones up to `slack`, never inward.
void expect_outward_near(const Interval& got, double lo, double hi, double slack)
{
    EXPECT_LE(got.lo(), lo);
    EXPECT_GE(got.lo(), lo - slack);
    EXPECT_GE(got.hi(), hi);
    EXPECT_LE(got.hi(), hi + slack);
}

std::vector<std::string> names(std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t j = 0; j < n; ++j) {
        out.push_back("v" + std::to_string(j));
    }
    return out;
}

} // namespace

TEST(Gauss, SquareExampleXFirst)
{
    const IntervalLinearProgram p = fixtures::square_program();
    const GaussResult r = interval_gauss(p.rows, p.variables, p.box, std::vector<std::string>{"x", "y"});
    expect_outward_near(r.box.get("x"), -0.5, 1.5, 1e-12);
    expect_outward_near(r.box.get("y"), -0.5, 0.5, 1e-12);
    EXPECT_EQ(r.resolved, 2U);
    EXPECT_EQ(r.pivots.front(), "x");
}

TEST(Gauss, SquareExampleYFirst)
{
    const IntervalLinearProgram p = fixtures::square_program();
    const GaussResult r = interval_gauss(p.rows, p.variables, p.box, std::vector<std::string>{"y", "x"});
    expect_outward_near(r.box.get("x"), 0.0, 1.0, 1e-12);
    expect_outward_near(r.box.get("y"), -1.0, 1.0, 1e-12);
}

TEST(Gauss, IllConditionedAnyOrder)
{
    const IntervalLinearProgram p = fixtures::relaxed(fixtures::kIllConditionedModel);
    ASSERT_EQ(p.rows.size(), 2U);
    for (const auto& order : {std::optional<std::vector<std::string>>{},
                              std::optional<std::vector<std::string>>{{"x", "y"}},
                              std::optional<std::vector<std::string>>{{"y", "x"}}}) {
        const GaussResult r = interval_gauss(p.rows, p.variables, p.box, order);
        const Interval x = r.box.get("x");
        const Interval y = r.box.get("y");
        EXPECT_TRUE(contains_exact(x, fixtures::ill_conditioned_x()));
        EXPECT_TRUE(contains_exact(y, fixtures::ill_conditioned_y()));
        EXPECT_LE(width(x), 1e-6);
        EXPECT_LE(width(y), 1e-6);
    }
}

TEST(Gauss, NoUsablePivot)
{
    IntervalLinearProgram p;
    p.variables = {"x", "y"};
    p.rows.push_back({LinearForm{{{"x", Interval(-1, 1)}, {"y", Interval(0, 2)}}, Interval(0.0)}, Interval(1.0)});
    p.box.set("x", Interval(-3, 3));
    const GaussResult r = interval_gauss(p.rows, p.variables, p.box);
    EXPECT_FALSE(r.progress());
    EXPECT_EQ(r.box, p.box);
}

TEST(Gauss, Underdetermined)
{
    IntervalLinearProgram p;
    p.variables = {"x", "y"};
    p.rows.push_back({LinearForm{{{"x", Interval(1.0)}, {"y", Interval(1.0)}}, Interval(0.0)}, Interval(1.0)});
    p.box.set("y", Interval(0, 1));
    const GaussResult r = interval_gauss(p.rows, p.variables, p.box);
    EXPECT_EQ(r.resolved, 1U);
    EXPECT_EQ(r.box.get("x"), Interval(0, 1));
    EXPECT_EQ(r.box.get("y"), Interval(0, 1));
}

TEST(Gauss, InconsistentLeftoverRow)
{
    IntervalLinearProgram p;
    p.variables = {"x"};
    p.rows.push_back({LinearForm::unit("x"), Interval(1.0)});
    p.rows.push_back({LinearForm{{{"x", Interval(2.0)}}, Interval(0.0)}, Interval(5.0)});
    EXPECT_TRUE(interval_gauss(p.rows, p.variables, p.box).box.infeasible());
}

TEST(Gauss, UnknownOrderVariable)
{
    const IntervalLinearProgram p = fixtures::square_program();
    EXPECT_THROW(interval_gauss(p.rows, p.variables, p.box, std::vector<std::string>{"z"}), std::invalid_argument);
}

TEST(Gauss, TriangularThinSystemsAreExact)
{
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> coef(-6, 6);
    std::uniform_int_distribution<int> diag(0, 5);
    const int diagonals[] = {1, -1, 2, -2, 4, -4};
    for (int k = 0; k < 200; ++k) {
        const std::size_t n = 2 + k % 4;
        const auto vars = names(n);
        std::vector<Rational> x(n);
        std::vector<Row> rows;
        for (std::size_t j = 0; j < n; ++j) {
            x[j] = ratio(coef(rng), 4);
        }
        for (std::size_t i = 0; i < n; ++i) {
            Row row;
            Rational b;
            for (std::size_t j = i; j < n; ++j) {
                const int c = j == i ? diagonals[diag(rng)] : coef(rng);
                if (c != 0) {
                    row.form.coeffs[vars[j]] = Interval(static_cast<double>(c));
                    b += c * x[j];
                }
            }
            row.bound = Interval(b.get_d());
            ASSERT_EQ(exact_rational(b.get_d()), b);
            rows.push_back(row);
        }
        // Eliminating in row order leaves the triangle untouched.
        const GaussResult r = interval_gauss(rows, vars, Box{}, vars);
        for (std::size_t j = 0; j < n; ++j) {
            EXPECT_EQ(r.box.get(vars[j]), Interval(x[j].get_d())) << k;
        }
    }
}

TEST(Gauss, TriangularRationalSystemsWithinUlps)
{
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    for (int k = 0; k < 200; ++k) {
        const std::size_t n = 2 + k % 3;
        const auto vars = names(n);
        std::vector<Row> rows(n);
        Matrix a(n, std::vector<Rational>(n));
        std::vector<Rational> b(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                int p = num(rng);
                if (j == i && p == 0) {
                    p = 1;
                }
                // Dyadic coefficients are thin; a non-dyadic quotient makes the
                // back substitution inexact, which is the case under test.
                a[i][j] = Rational(p, 1 << (den(rng) % 3));
                if (a[i][j] != 0) {
                    rows[i].form.coeffs[vars[j]] = Interval(a[i][j].get_d());
                }
            }
            b[i] = ratio(num(rng), 3);
            rows[i].bound = enclose(b[i]);
        }
        const auto exact = solve_exact(a, b);
        ASSERT_TRUE(exact);
        const GaussResult r = interval_gauss(rows, vars, Box{}, vars);
        for (std::size_t j = 0; j < n; ++j) {
            const Interval got = r.box.get(vars[j]);
            EXPECT_TRUE(contains_exact(got, (*exact)[j]));
            const double scale = std::max(1.0, std::abs((*exact)[j].get_d()));
            // a handful of operations per unknown, each at most a couple of ulps
            EXPECT_LE(width(got), 64 * n * scale * 2.3e-16) << k;
        }
    }
}

TEST(Gauss, SoundnessOnRandomIntervalRightHandSides)
{
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> rhs(-20, 20);
    std::uniform_int_distribution<int> spread(0, 8);
    std::uniform_int_distribution<int> step(0, 16);
    int systems = 0;
    while (systems < 200) {
        const std::size_t n = 2 + systems % 4;
        const auto vars = names(n);
        Matrix a(n, std::vector<Rational>(n));
        std::vector<Row> rows(n);
        std::vector<std::pair<Rational, Rational>> ranges(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] = coef(rng);
                if (a[i][j] != 0) {
                    rows[i].form.coeffs[vars[j]] = Interval(a[i][j].get_d());
                }
            }
            const int lo = rhs(rng);
            const int hi = lo + (systems % 3 == 0 ? 0 : spread(rng));
            ranges[i] = {ratio(lo, 4), ratio(hi, 4)};
            rows[i].bound = Interval(lo / 4.0, hi / 4.0);
        }
        if (!solve_exact(a, std::vector<Rational>(n, Rational(1)))) {
            continue; // singular
        }
        ++systems;
        const GaussResult r = interval_gauss(rows, vars, Box{});
        ASSERT_FALSE(r.box.infeasible());
        for (int s = 0; s < 100; ++s) {
            std::vector<Rational> b(n);
            for (std::size_t i = 0; i < n; ++i) {
                b[i] = ranges[i].first + ratio(step(rng), 16) * (ranges[i].second - ranges[i].first);
            }
            const auto x = solve_exact(a, b);
            ASSERT_TRUE(x);
            for (std::size_t j = 0; j < n; ++j) {
                ASSERT_TRUE(contains_exact(r.box.get(vars[j]), (*x)[j])) << systems << " " << vars[j];
            }
        }
    }
}
