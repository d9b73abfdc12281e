#include "unilin/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace unilin {

std::string to_string(LpStatus status)
{
    switch (status) {
    case LpStatus::optimal:
        return "optimal";
    case LpStatus::unbounded:
        return "unbounded";
    case LpStatus::infeasible:
        return "infeasible";
    case LpStatus::iteration_limit:
        return "iteration-limit";
    }
    return "?";
}

namespace {

enum class Sense { ge, le, eq };

// sum_j a_j x_j (sense) rhs, coming from a program row or a box side.
struct StdRow {
    std::vector<double> coeffs;
    Sense sense = Sense::eq;
    double rhs = 0.0;
    bool from_box = false;
    std::size_t origin = 0;
};

// Dense tableau of  A z = b, z >= 0  with z = (p, n, slacks, artificials),
// x = p - n. Row m holds reduced costs, its last cell minus the objective.
class Tableau {
public:
    Tableau(std::vector<StdRow> rows, std::size_t num_vars, const SimplexLimits& limits)
        : rows_(std::move(rows)), n_(num_vars), m_(rows_.size()), limits_(limits)
    {
        std::size_t slacks = 0;
        for (const StdRow& r : rows_) {
            if (r.sense != Sense::eq) {
                ++slacks;
            }
        }
        slack0_ = 2 * n_;
        art0_ = slack0_ + slacks;
        cols_ = art0_ + m_;
        width_ = cols_ + 1;
        t_.assign((m_ + 1) * width_, 0.0);
        sign_.assign(m_, 1.0);
        basis_.resize(m_);

        double scale = 1.0;
        std::size_t slack = slack0_;
        for (std::size_t r = 0; r < m_; ++r) {
            const StdRow& row = rows_[r];
            const double sigma = row.rhs < 0.0 ? -1.0 : 1.0;
            sign_[r] = sigma;
            for (std::size_t j = 0; j < n_; ++j) {
                at(r, 2 * j) = sigma * row.coeffs[j];
                at(r, 2 * j + 1) = -sigma * row.coeffs[j];
            }
            if (row.sense == Sense::ge) {
                at(r, slack++) = -sigma;
            } else if (row.sense == Sense::le) {
                at(r, slack++) = sigma;
            }
            at(r, art0_ + r) = 1.0;
            rhs(r) = sigma * row.rhs;
            basis_[r] = art0_ + r;
            scale = std::max(scale, std::abs(row.rhs));
        }
        feas_tol_ = limits_.feasibility_tol * scale;
        max_iterations_ = limits_.max_iterations != 0 ? limits_.max_iterations : 50 * (m_ + n_);
    }

    LpStatus phase1()
    {
        std::vector<double> cost(cols_, 0.0);
        for (std::size_t r = 0; r < m_; ++r) {
            cost[art0_ + r] = 1.0;
        }
        set_costs(cost);
        const LpStatus status = iterate();
        if (status == LpStatus::iteration_limit) {
            return status;
        }
        if (-rhs(m_) > feas_tol_) {
            return LpStatus::infeasible;
        }
        drive_out_artificials();
        return LpStatus::optimal;
    }

    LpStatus phase2(std::size_t var, double sense)
    {
        std::vector<double> cost(cols_, 0.0);
        cost[2 * var] = sense;
        cost[2 * var + 1] = -sense;
        set_costs(cost);
        return iterate();
    }

    [[nodiscard]] std::vector<double> primal() const
    {
        std::vector<double> value(cols_, 0.0);
        for (std::size_t r = 0; r < m_; ++r) {
            value[basis_[r]] = std::max(0.0, rhs(r));
        }
        std::vector<double> x(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            x[j] = value[2 * j] - value[2 * j + 1];
        }
        return x;
    }

    // Multipliers of the standard rows in their original orientation,
    // given the cost of every artificial column in the current phase.
    [[nodiscard]] std::vector<double> row_duals(double artificial_cost) const
    {
        std::vector<double> y(m_);
        for (std::size_t r = 0; r < m_; ++r) {
            y[r] = sign_[r] * (artificial_cost - at(m_, art0_ + r));
        }
        return y;
    }

    [[nodiscard]] std::vector<double> ray() const
    {
        std::vector<double> delta(cols_, 0.0);
        delta[unbounded_column_] = 1.0;
        for (std::size_t r = 0; r < m_; ++r) {
            delta[basis_[r]] -= at(r, unbounded_column_);
        }
        std::vector<double> dx(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            dx[j] = delta[2 * j] - delta[2 * j + 1];
        }
        return dx;
    }

    [[nodiscard]] std::size_t iterations() const { return iterations_; }
    [[nodiscard]] const std::vector<StdRow>& rows() const { return rows_; }

private:
    double& at(std::size_t r, std::size_t c) { return t_[r * width_ + c]; }
    [[nodiscard]] double at(std::size_t r, std::size_t c) const { return t_[r * width_ + c]; }
    double& rhs(std::size_t r) { return at(r, cols_); }
    [[nodiscard]] double rhs(std::size_t r) const { return at(r, cols_); }

    void set_costs(const std::vector<double>& cost)
    {
        for (std::size_t c = 0; c < width_; ++c) {
            at(m_, c) = c < cols_ ? cost[c] : 0.0;
        }
        for (std::size_t r = 0; r < m_; ++r) {
            const double cb = cost[basis_[r]];
            if (cb == 0.0) {
                continue;
            }
            for (std::size_t c = 0; c < width_; ++c) {
                at(m_, c) -= cb * at(r, c);
            }
        }
    }

    void pivot(std::size_t row, std::size_t col)
    {
        const double p = at(row, col);
        for (std::size_t c = 0; c < width_; ++c) {
            at(row, c) /= p;
        }
        at(row, col) = 1.0;
        for (std::size_t r = 0; r <= m_; ++r) {
            if (r == row) {
                continue;
            }
            const double f = at(r, col);
            if (f == 0.0) {
                continue;
            }
            for (std::size_t c = 0; c < width_; ++c) {
                at(r, c) -= f * at(row, c);
            }
            at(r, col) = 0.0;
        }
        basis_[row] = col;
        ++iterations_;
    }

    // Row leaving the basis when `col` enters: minimum ratio, ties broken by
    // the lexicographically smallest row of B^-1 (the artificial block)
    // scaled by the pivot entry. m_ when no entry blocks.
    [[nodiscard]] std::size_t ratio_test(std::size_t col) const
    {
        std::size_t best = m_;
        double best_ratio = 0.0;
        for (std::size_t r = 0; r < m_; ++r) {
            const double a = at(r, col);
            if (a <= limits_.pivot_tol) {
                continue;
            }
            const double ratio = std::max(0.0, rhs(r)) / a;
            if (best == m_) {
                best = r;
                best_ratio = ratio;
                continue;
            }
            const double tie = 1e-12 * (1.0 + std::abs(best_ratio));
            if (ratio < best_ratio - tie) {
                best = r;
                best_ratio = ratio;
            } else if (ratio <= best_ratio + tie && lex_less(r, best, col)) {
                best = r;
                best_ratio = std::min(ratio, best_ratio);
            }
        }
        return best;
    }

    [[nodiscard]] bool lex_less(std::size_t r1, std::size_t r2, std::size_t col) const
    {
        const double p1 = at(r1, col);
        const double p2 = at(r2, col);
        for (std::size_t k = 0; k < m_; ++k) {
            const double v1 = at(r1, art0_ + k) / p1;
            const double v2 = at(r2, art0_ + k) / p2;
            if (v1 < v2) {
                return true;
            }
            if (v1 > v2) {
                return false;
            }
        }
        return r1 < r2;
    }

    LpStatus iterate()
    {
        while (true) {
            // most negative reduced cost, lowest index on ties; artificials never re-enter
            std::size_t entering = cols_;
            double most_negative = -limits_.reduced_cost_tol;
            for (std::size_t c = 0; c < art0_; ++c) {
                if (at(m_, c) < most_negative) {
                    most_negative = at(m_, c);
                    entering = c;
                }
            }
            if (entering == cols_) {
                return LpStatus::optimal;
            }
            const std::size_t leaving = ratio_test(entering);
            if (leaving == m_) {
                unbounded_column_ = entering;
                return LpStatus::unbounded;
            }
            if (iterations_ >= max_iterations_) {
                return LpStatus::iteration_limit;
            }
            pivot(leaving, entering);
        }
    }

    void drive_out_artificials()
    {
        for (std::size_t r = 0; r < m_; ++r) {
            if (basis_[r] < art0_) {
                continue;
            }
            std::size_t best = cols_;
            double best_abs = limits_.pivot_tol;
            for (std::size_t c = 0; c < art0_; ++c) {
                if (std::abs(at(r, c)) > best_abs) {
                    best_abs = std::abs(at(r, c));
                    best = c;
                }
            }
            if (best != cols_) {
                pivot(r, best);
            }
            // otherwise the row is redundant and its artificial stays at zero
        }
    }

    std::vector<StdRow> rows_;
    std::size_t n_;
    std::size_t m_;
    SimplexLimits limits_;
    std::size_t slack0_ = 0;
    std::size_t art0_ = 0;
    std::size_t cols_ = 0;
    std::size_t width_ = 0;
    std::vector<double> t_;
    std::vector<double> sign_;
    std::vector<std::size_t> basis_;
    double feas_tol_ = 0.0;
    std::size_t max_iterations_ = 0;
    std::size_t iterations_ = 0;
    std::size_t unbounded_column_ = 0;
};

void push_bounded(std::vector<StdRow>& out, std::vector<double> coeffs, const Interval& bound, bool from_box,
                  std::size_t origin)
{
    const bool has_lo = bound.lo() > -kInf;
    const bool has_hi = bound.hi() < kInf;
    if (has_lo && has_hi && bound.lo() == bound.hi()) {
        out.push_back({std::move(coeffs), Sense::eq, bound.lo(), from_box, origin});
        return;
    }
    if (has_lo) {
        out.push_back({coeffs, Sense::ge, bound.lo(), from_box, origin});
    }
    if (has_hi) {
        out.push_back({std::move(coeffs), Sense::le, bound.hi(), from_box, origin});
    }
}

} // namespace

SimplexSolution solve_lp(const IntervalLinearProgram& program, const std::string& var, Direction direction,
                         const SimplexLimits& limits)
{
    const auto target = program.index_of(var);
    if (!target) {
        throw std::invalid_argument("solve_lp: unknown variable '" + var + "'");
    }
    const std::size_t n = program.variables.size();

    std::vector<StdRow> rows;
    for (std::size_t i = 0; i < program.rows.size(); ++i) {
        const Row& row = program.rows[i];
        std::vector<double> coeffs(n, 0.0);
        for (const auto& [name, c] : row.form.coeffs) {
            coeffs[*program.index_of(name)] = mid(c);
        }
        push_bounded(rows, std::move(coeffs), row.bound, false, i);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> coeffs(n, 0.0);
        coeffs[j] = 1.0;
        push_bounded(rows, std::move(coeffs), program.box.get(program.variables[j]), true, j);
    }

    Tableau tableau(std::move(rows), n, limits);
    SimplexSolution sol;
    sol.duals.assign(program.rows.size(), 0.0);
    sol.box_duals.assign(n, 0.0);

    auto collect_duals = [&](double artificial_cost) {
        const std::vector<double> y = tableau.row_duals(artificial_cost);
        for (std::size_t k = 0; k < y.size(); ++k) {
            const StdRow& r = tableau.rows()[k];
            (r.from_box ? sol.box_duals : sol.duals)[r.origin] += y[k];
        }
    };

    LpStatus status = tableau.phase1();
    if (status == LpStatus::infeasible) {
        collect_duals(1.0);
    } else if (status == LpStatus::optimal) {
        status = tableau.phase2(*target, direction == Direction::min ? 1.0 : -1.0);
        if (status == LpStatus::optimal) {
            collect_duals(0.0);
        } else if (status == LpStatus::unbounded) {
            sol.ray = tableau.ray();
        }
    }
    sol.status = status;
    sol.iterations = tableau.iterations();
    sol.primal = tableau.primal();
    sol.objective = sol.primal[*target];
    return sol;
}

} // namespace unilin
