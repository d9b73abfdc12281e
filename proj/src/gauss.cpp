#include "unilin/gauss.hpp"

#include <algorithm>
#include <stdexcept>

namespace unilin {

namespace {

struct Pivot {
    std::size_t row = 0;
    std::size_t col = 0;
    bool bounded_rhs = false;
    double mig = 0.0;
};

// Preference: finite right-hand side first, then larger mignitude.
bool better(const Pivot& a, const Pivot& b)
{
    if (a.bounded_rhs != b.bounded_rhs) {
        return a.bounded_rhs;
    }
    return a.mig > b.mig;
}

class Eliminator {
public:
    Eliminator(const std::vector<Row>& equations, std::vector<std::string> columns)
        : columns_(std::move(columns))
    {
        for (const Row& row : equations) {
            for (const auto& [var, c] : row.form.coeffs) {
                if (std::find(columns_.begin(), columns_.end(), var) == columns_.end()) {
                    columns_.push_back(var);
                }
            }
        }
        a_.assign(equations.size(), std::vector<Interval>(columns_.size(), Interval(0.0)));
        for (std::size_t r = 0; r < equations.size(); ++r) {
            for (std::size_t c = 0; c < columns_.size(); ++c) {
                a_[r][c] = equations[r].form.coeff(columns_[c]);
            }
            b_.push_back(equations[r].bound);
        }
        row_used_.assign(a_.size(), false);
        col_used_.assign(columns_.size(), false);
    }

    [[nodiscard]] std::optional<std::size_t> column_of(const std::string& var) const
    {
        const auto it = std::find(columns_.begin(), columns_.end(), var);
        if (it == columns_.end()) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - columns_.begin());
    }

    std::optional<Pivot> best_in_column(std::size_t col) const
    {
        std::optional<Pivot> best;
        if (col_used_[col]) {
            return best;
        }
        for (std::size_t r = 0; r < a_.size(); ++r) {
            if (row_used_[r] || a_[r][col].contains_zero()) {
                continue;
            }
            const Pivot cand{r, col, b_[r].is_bounded(), mignitude(a_[r][col])};
            if (!best || better(cand, *best)) {
                best = cand;
            }
        }
        return best;
    }

    std::optional<Pivot> best_overall() const
    {
        std::optional<Pivot> best;
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            if (col_used_[c]) {
                continue;
            }
            const auto cand = best_in_column(c);
            if (cand && (!best || better(*cand, *best))) {
                best = cand;
            }
        }
        return best;
    }

    void eliminate(const Pivot& p)
    {
        row_used_[p.row] = true;
        col_used_[p.col] = true;
        pivots_.push_back(p);
        const Interval& pivot = a_[p.row][p.col];
        for (std::size_t r = 0; r < a_.size(); ++r) {
            if (row_used_[r]) {
                continue;
            }
            const Interval& target = a_[r][p.col];
            if (target.lo() == 0.0 && target.hi() == 0.0) {
                continue;
            }
            const Interval factor = target / pivot;
            for (std::size_t c = 0; c < columns_.size(); ++c) {
                if (c == p.col) {
                    continue;
                }
                a_[r][c] = a_[r][c] - factor * a_[p.row][c];
            }
            a_[r][p.col] = Interval(0.0);
            b_[r] = b_[r] - factor * b_[p.row];
        }
    }

    // Back substitution in reverse pivot order, narrowing `box` as it goes.
    void substitute(Box& box) const
    {
        for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
            Interval rest = b_[it->row];
            for (std::size_t c = 0; c < columns_.size(); ++c) {
                if (c == it->col) {
                    continue;
                }
                const Interval& coeff = a_[it->row][c];
                if (coeff.lo() == 0.0 && coeff.hi() == 0.0) {
                    continue;
                }
                rest = rest - coeff * box.get(columns_[c]);
            }
            box.narrow(columns_[it->col], rest / a_[it->row][it->col]);
            if (box.infeasible()) {
                return;
            }
        }
        // Rows left over after elimination are consequences too.
        for (std::size_t r = 0; r < a_.size(); ++r) {
            if (row_used_[r]) {
                continue;
            }
            Interval lhs(0.0);
            for (std::size_t c = 0; c < columns_.size(); ++c) {
                const Interval& coeff = a_[r][c];
                if (coeff.lo() == 0.0 && coeff.hi() == 0.0) {
                    continue;
                }
                lhs = lhs + coeff * box.get(columns_[c]);
            }
            if (intersect(lhs, b_[r]).is_empty()) {
                box.mark_infeasible();
                return;
            }
        }
    }

    [[nodiscard]] const std::vector<Pivot>& pivots() const { return pivots_; }
    [[nodiscard]] const std::string& name(std::size_t col) const { return columns_[col]; }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Interval>> a_;
    std::vector<Interval> b_;
    std::vector<bool> row_used_;
    std::vector<bool> col_used_;
    std::vector<Pivot> pivots_;
};

} // namespace

GaussResult interval_gauss(const std::vector<Row>& equations, const std::vector<std::string>& variables,
                           const Box& box, const std::optional<std::vector<std::string>>& order)
{
    GaussResult result;
    result.box = box;
    if (box.infeasible()) {
        return result;
    }
    for (const Row& row : equations) {
        if (row.bound.is_empty()) {
            result.box = Box::infeasible_box();
            return result;
        }
    }
    Eliminator elim(equations, variables);
    if (order) {
        for (const std::string& var : *order) {
            const auto col = elim.column_of(var);
            if (!col) {
                throw std::invalid_argument("elimination order names unknown variable '" + var + "'");
            }
            if (const auto pivot = elim.best_in_column(*col)) {
                elim.eliminate(*pivot);
            }
        }
    }
    while (const auto pivot = elim.best_overall()) {
        elim.eliminate(*pivot);
    }
    elim.substitute(result.box);
    if (result.box.infeasible()) {
        result.box = Box::infeasible_box();
    }
    result.resolved = elim.pivots().size();
    for (const Pivot& p : elim.pivots()) {
        result.pivots.push_back(elim.name(p.col));
    }
    return result;
}

} // namespace unilin
