#include "unilin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace unilin::oracle {

RationalProgram::RationalProgram(std::vector<std::string> vars)
    : variables(std::move(vars)), box_lo(variables.size()), box_hi(variables.size())
{
}

bool RationalProgram::satisfied_by(const std::vector<Rational>& point) const
{
    if (point.size() != size()) {
        return false;
    }
    for (const RationalRow& row : rows) {
        Rational v;
        for (std::size_t j = 0; j < size(); ++j) {
            v += row.coeffs[j] * point[j];
        }
        if ((row.lo && v < *row.lo) || (row.hi && v > *row.hi)) {
            return false;
        }
    }
    for (std::size_t j = 0; j < size(); ++j) {
        if ((box_lo[j] && point[j] < *box_lo[j]) || (box_hi[j] && point[j] > *box_hi[j])) {
            return false;
        }
    }
    return true;
}

namespace {

Interval enclose_bounds(const std::optional<Rational>& lo, const std::optional<Rational>& hi)
{
    const double l = lo ? enclose(*lo).lo() : -kInf;
    const double h = hi ? enclose(*hi).hi() : kInf;
    return {l, h};
}

std::optional<Rational> finite_side(double x)
{
    if (std::isinf(x)) {
        return std::nullopt;
    }
    return exact_rational(x);
}

} // namespace

IntervalLinearProgram RationalProgram::to_interval() const
{
    IntervalLinearProgram out;
    out.variables = variables;
    for (const RationalRow& row : rows) {
        Row r;
        for (std::size_t j = 0; j < size(); ++j) {
            if (row.coeffs[j] != 0) {
                r.form.coeffs.emplace(variables[j], enclose(row.coeffs[j]));
            }
        }
        r.bound = enclose_bounds(row.lo, row.hi);
        out.rows.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < size(); ++j) {
        out.box.set(variables[j], enclose_bounds(box_lo[j], box_hi[j]));
    }
    return out;
}

RationalProgram from_thin(const IntervalLinearProgram& program)
{
    RationalProgram out(program.variables);
    for (const Row& row : program.rows) {
        RationalRow r;
        r.coeffs.assign(out.size(), Rational(0));
        for (const auto& [var, c] : row.form.coeffs) {
            if (!c.is_thin()) {
                throw std::invalid_argument("from_thin: coefficient of '" + var + "' is not thin");
            }
            r.coeffs[*program.index_of(var)] = exact_rational(c.lo());
        }
        r.lo = finite_side(row.bound.lo());
        r.hi = finite_side(row.bound.hi());
        out.rows.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < out.size(); ++j) {
        const Interval b = program.box.get(program.variables[j]);
        out.box_lo[j] = finite_side(b.lo());
        out.box_hi[j] = finite_side(b.hi());
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Sup-norm condition number of a square rational matrix; +inf if singular.
double condition_number(std::vector<std::vector<Rational>> a)
{
    const std::size_t n = a.size();
    auto norm = [n](const std::vector<std::vector<Rational>>& m) {
        Rational best;
        for (std::size_t i = 0; i < n; ++i) {
            Rational s;
            for (std::size_t j = 0; j < n; ++j) {
                s += abs(m[i][j]);
            }
            best = std::max(best, s);
        }
        return best;
    };
    const Rational norm_a = norm(a);
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        inv[i][i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) {
            ++p;
        }
        if (p == n) {
            return kInf;
        }
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        const Rational piv = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) {
                continue;
            }
            const Rational f = a[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return Rational(norm_a * norm(inv)).get_d();
}

// Greedy selection of n independent normals among those tight at `point`.
double tight_condition(const RationalProgram& prog, const std::vector<Rational>& point)
{
    const std::size_t n = prog.size();
    std::vector<std::vector<Rational>> normals;
    for (const RationalRow& row : prog.rows) {
        Rational v;
        for (std::size_t j = 0; j < n; ++j) {
            v += row.coeffs[j] * point[j];
        }
        if ((row.lo && v == *row.lo) || (row.hi && v == *row.hi)) {
            normals.push_back(row.coeffs);
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if ((prog.box_lo[j] && point[j] == *prog.box_lo[j]) || (prog.box_hi[j] && point[j] == *prog.box_hi[j])) {
            std::vector<Rational> e(n);
            e[j] = 1;
            normals.push_back(std::move(e));
        }
    }
    std::vector<std::vector<Rational>> chosen;
    std::vector<std::vector<Rational>> echelon; // reduced copies of chosen rows
    std::vector<std::size_t> lead;
    for (const auto& v : normals) {
        std::vector<Rational> w = v;
        for (std::size_t k = 0; k < echelon.size(); ++k) {
            if (w[lead[k]] != 0) {
                const Rational f = w[lead[k]] / echelon[k][lead[k]];
                for (std::size_t j = 0; j < n; ++j) {
                    w[j] -= f * echelon[k][j];
                }
            }
        }
        const auto it = std::find_if(w.begin(), w.end(), [](const Rational& q) { return q != 0; });
        if (it == w.end()) {
            continue;
        }
        lead.push_back(static_cast<std::size_t>(it - w.begin()));
        echelon.push_back(std::move(w));
        chosen.push_back(v);
        if (chosen.size() == n) {
            return condition_number(chosen);
        }
    }
    return kInf;
}

} // namespace

struct ExactLp::Impl {
    const RationalProgram& prog;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t art0 = 0;
    std::size_t cols = 0;
    std::vector<std::vector<Rational>> t; // m rows + cost row, rhs last
    std::vector<std::size_t> basis;
    bool is_feasible = false;

    explicit Impl(const RationalProgram& p) : prog(p), n(p.size())
    {
        if (n > kMaxVariables || p.rows.size() > kMaxRows) {
            throw std::length_error("exact oracle limited to " + std::to_string(kMaxVariables) + " variables and " +
                                    std::to_string(kMaxRows) + " rows");
        }
        struct Std {
            std::vector<Rational> a;
            int slack; // -1 for >=, +1 for <=, 0 for =
            Rational rhs;
        };
        std::vector<Std> rows;
        auto push = [&rows](const std::vector<Rational>& a, const std::optional<Rational>& lo,
                            const std::optional<Rational>& hi) {
            if (lo && hi && *lo == *hi) {
                rows.push_back({a, 0, *lo});
                return;
            }
            if (lo) {
                rows.push_back({a, -1, *lo});
            }
            if (hi) {
                rows.push_back({a, 1, *hi});
            }
        };
        for (const RationalRow& row : p.rows) {
            push(row.coeffs, row.lo, row.hi);
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Rational> e(n);
            e[j] = 1;
            push(e, p.box_lo[j], p.box_hi[j]);
        }
        m = rows.size();
        std::size_t slacks = 0;
        for (const Std& r : rows) {
            slacks += r.slack != 0 ? 1 : 0;
        }
        art0 = 2 * n + slacks;
        cols = art0 + m;
        t.assign(m + 1, std::vector<Rational>(cols + 1));
        basis.resize(m);
        std::size_t slack = 2 * n;
        for (std::size_t r = 0; r < m; ++r) {
            const int sigma = rows[r].rhs < 0 ? -1 : 1;
            for (std::size_t j = 0; j < n; ++j) {
                t[r][2 * j] = sigma * rows[r].a[j];
                t[r][2 * j + 1] = -sigma * rows[r].a[j];
            }
            if (rows[r].slack != 0) {
                t[r][slack++] = sigma * rows[r].slack;
            }
            t[r][art0 + r] = 1;
            t[r][cols] = sigma * rows[r].rhs;
            basis[r] = art0 + r;
        }
        // phase 1
        std::vector<Rational> cost(cols);
        for (std::size_t r = 0; r < m; ++r) {
            cost[art0 + r] = 1;
        }
        set_costs(t, basis, cost);
        run(t, basis);
        is_feasible = t[m][cols] == 0;
        if (is_feasible) {
            for (std::size_t r = 0; r < m; ++r) {
                if (basis[r] < art0) {
                    continue;
                }
                for (std::size_t c = 0; c < art0; ++c) {
                    if (t[r][c] != 0) {
                        pivot(t, basis, r, c);
                        break;
                    }
                }
            }
        }
    }

    void set_costs(std::vector<std::vector<Rational>>& tab, const std::vector<std::size_t>& bas,
                   const std::vector<Rational>& cost) const
    {
        for (std::size_t c = 0; c <= cols; ++c) {
            tab[m][c] = c < cols ? cost[c] : Rational(0);
        }
        for (std::size_t r = 0; r < m; ++r) {
            const Rational& cb = cost[bas[r]];
            if (cb == 0) {
                continue;
            }
            for (std::size_t c = 0; c <= cols; ++c) {
                if (tab[r][c] != 0) {
                    tab[m][c] -= cb * tab[r][c];
                }
            }
        }
    }

    void pivot(std::vector<std::vector<Rational>>& tab, std::vector<std::size_t>& bas, std::size_t row,
               std::size_t col) const
    {
        const Rational p = tab[row][col];
        for (Rational& v : tab[row]) {
            if (v != 0) {
                v /= p;
            }
        }
        for (std::size_t r = 0; r <= m; ++r) {
            if (r == row || tab[r][col] == 0) {
                continue;
            }
            const Rational f = tab[r][col];
            for (std::size_t c = 0; c <= cols; ++c) {
                if (tab[row][c] != 0) {
                    tab[r][c] -= f * tab[row][c];
                }
            }
        }
        bas[row] = col;
    }

    // Bland's rule. Returns the unbounded entering column, or cols when optimal.
    std::size_t run(std::vector<std::vector<Rational>>& tab, std::vector<std::size_t>& bas) const
    {
        while (true) {
            std::size_t entering = cols;
            for (std::size_t c = 0; c < art0; ++c) {
                if (tab[m][c] < 0) {
                    entering = c;
                    break;
                }
            }
            if (entering == cols) {
                return cols;
            }
            std::size_t leaving = m;
            Rational best;
            for (std::size_t r = 0; r < m; ++r) {
                if (tab[r][entering] <= 0) {
                    continue;
                }
                const Rational ratio = tab[r][cols] / tab[r][entering];
                if (leaving == m || ratio < best || (ratio == best && bas[r] < bas[leaving])) {
                    leaving = r;
                    best = ratio;
                }
            }
            if (leaving == m) {
                return entering;
            }
            pivot(tab, bas, leaving, entering);
        }
    }

    ExactOptimum minimize(const std::vector<Rational>& objective) const
    {
        ExactOptimum out;
        if (!is_feasible) {
            out.status = ExactStatus::infeasible;
            return out;
        }
        auto tab = t;
        auto bas = basis;
        std::vector<Rational> cost(cols);
        for (std::size_t j = 0; j < n; ++j) {
            cost[2 * j] = objective[j];
            cost[2 * j + 1] = -objective[j];
        }
        set_costs(tab, bas, cost);
        if (run(tab, bas) != cols) {
            out.status = ExactStatus::unbounded;
            return out;
        }
        std::vector<Rational> value(cols);
        for (std::size_t r = 0; r < m; ++r) {
            value[bas[r]] = tab[r][cols];
        }
        out.point.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            out.point[j] = value[2 * j] - value[2 * j + 1];
            out.value += objective[j] * out.point[j];
        }
        out.status = ExactStatus::optimal;
        out.condition = tight_condition(prog, out.point);
        return out;
    }
};

ExactLp::ExactLp(const RationalProgram& program) : impl_(std::make_unique<Impl>(program)) {}
ExactLp::~ExactLp() = default;

bool ExactLp::feasible() const { return impl_->is_feasible; }

ExactOptimum ExactLp::minimize(const std::vector<Rational>& cost) const { return impl_->minimize(cost); }

ExactOptimum exact_optimum(const RationalProgram& program, std::size_t var, Direction direction)
{
    if (var >= program.size()) {
        throw std::invalid_argument("exact_optimum: variable index out of range");
    }
    const ExactLp lp(program);
    std::vector<Rational> cost(program.size());
    cost[var] = direction == Direction::min ? 1 : -1;
    ExactOptimum out = lp.minimize(cost);
    if (direction == Direction::max) {
        out.value = -out.value;
    }
    return out;
}

std::vector<std::vector<Rational>> vertices(const RationalProgram& program, std::mt19937_64& rng,
                                            std::size_t random_objectives)
{
    std::vector<std::vector<Rational>> out;
    const ExactLp lp(program);
    if (!lp.feasible()) {
        return out;
    }
    std::set<std::vector<std::string>> seen;
    auto add = [&](const std::vector<Rational>& cost) {
        const ExactOptimum opt = lp.minimize(cost);
        if (opt.status != ExactStatus::optimal) {
            return;
        }
        std::vector<std::string> key;
        for (const Rational& q : opt.point) {
            key.push_back(q.get_str());
        }
        if (seen.insert(key).second) {
            out.push_back(opt.point);
        }
    };
    const std::size_t n = program.size();
    for (std::size_t j = 0; j < n; ++j) {
        for (int s : {1, -1}) {
            std::vector<Rational> cost(n);
            cost[j] = s;
            add(cost);
        }
    }
    std::uniform_int_distribution<int> coef(-5, 5);
    for (std::size_t k = 0; k < random_objectives; ++k) {
        std::vector<Rational> cost(n);
        for (Rational& c : cost) {
            c = coef(rng);
        }
        add(cost);
    }
    return out;
}

std::vector<std::vector<Rational>> convex_combinations(const std::vector<std::vector<Rational>>& points,
                                                       std::size_t count, std::mt19937_64& rng)
{
    std::vector<std::vector<Rational>> out;
    if (points.empty()) {
        return out;
    }
    std::uniform_int_distribution<int> weight(1, 16);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<Rational> w(points.size());
        Rational total;
        for (Rational& x : w) {
            x = weight(rng);
            total += x;
        }
        std::vector<Rational> p(points.front().size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            const Rational lambda = w[i] / total;
            for (std::size_t j = 0; j < p.size(); ++j) {
                p[j] += lambda * points[i][j];
            }
        }
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

// lo + t (hi - lo) for t in {0, 1/4, ..., 1}; a finite endpoint when the other is infinite.
Rational pick_inside(const Interval& iv, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> step(0, 4);
    if (iv.lo() == -kInf && iv.hi() == kInf) {
        return Rational(0);
    }
    if (iv.lo() == -kInf) {
        return exact_rational(iv.hi());
    }
    if (iv.hi() == kInf) {
        return exact_rational(iv.lo());
    }
    const Rational lo = exact_rational(iv.lo());
    const Rational hi = exact_rational(iv.hi());
    return lo + ratio(step(rng), 4) * (hi - lo);
}

} // namespace

std::vector<SampledSolution> sample_solutions(const IntervalLinearProgram& program, std::size_t count,
                                              std::mt19937_64& rng)
{
    std::vector<SampledSolution> out;
    std::bernoulli_distribution pin(0.5);
    constexpr int attempts = 8;
    for (int attempt = 0; attempt < attempts && out.size() < count; ++attempt) {
        RationalProgram real(program.variables);
        for (const Row& row : program.rows) {
            RationalRow r;
            r.coeffs.assign(real.size(), Rational(0));
            for (const auto& [var, c] : row.form.coeffs) {
                r.coeffs[*program.index_of(var)] = pick_inside(c, rng);
            }
            if (row.bound.is_bounded() && pin(rng)) {
                const Rational b = pick_inside(row.bound, rng);
                r.lo = b;
                r.hi = b;
            } else {
                r.lo = finite_side(row.bound.lo());
                r.hi = finite_side(row.bound.hi());
            }
            real.rows.push_back(std::move(r));
        }
        for (std::size_t j = 0; j < real.size(); ++j) {
            const Interval b = program.box.get(program.variables[j]);
            real.box_lo[j] = finite_side(b.lo());
            real.box_hi[j] = finite_side(b.hi());
        }
        const auto corners = vertices(real, rng);
        if (corners.empty()) {
            continue;
        }
        std::vector<std::vector<Rational>> points = corners;
        const auto mixed = convex_combinations(corners, count, rng);
        points.insert(points.end(), mixed.begin(), mixed.end());
        for (auto& p : points) {
            if (out.size() >= count) {
                break;
            }
            if (real.satisfied_by(p)) {
                out.push_back({real, std::move(p)});
            }
        }
    }
    return out;
}

} // namespace unilin::oracle
