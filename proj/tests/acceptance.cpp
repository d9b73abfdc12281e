// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on failure.

#include "unilin/format.hpp"
#include "unilin/gauss.hpp"
#include "unilin/oracle.hpp"
#include "unilin/strategy.hpp"

#include "support/instances.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace unilin;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

bool contains_exact(const Interval& iv, const Rational& q)
{
    if (iv.is_empty()) {
        return false;
    }
    return (iv.lo() == -kInf || exact_rational(iv.lo()) <= q) && (iv.hi() == kInf || q <= exact_rational(iv.hi()));
}

bool within(const Interval& got, double lo, double hi, double slack)
{
    return got.lo() <= lo && got.lo() >= lo - slack && got.hi() >= hi && got.hi() <= hi + slack;
}

SolveOptions with_mode(SolverMode mode)
{
    SolveOptions o;
    o.mode = mode;
    return o;
}

std::string show(const Box& b)
{
    if (b.infeasible()) {
        return "infeasible";
    }
    std::ostringstream os;
    os.precision(17);
    for (const auto& [v, iv] : b.intervals()) {
        os << v << "=" << iv << " ";
    }
    return os.str();
}

// ---------------------------------------------------------------------------

Outcome golden_square_lin()
{
    const SolveResult r = solve(parse(fixtures::kSquareModel), with_mode(SolverMode::lin));
    const Interval x = r.box.get("x");
    const Interval y = r.box.get("y");
    const bool ok = !r.infeasible() && x.subset_of(Interval(0 - 1e-9, 1 + 1e-9)) &&
                    y.subset_of(Interval(-0.5 - 1e-9, 0.5 + 1e-9)) && Interval(0, 1).subset_of(x) &&
                    Interval(-0.5, 0.5).subset_of(y);
    return {ok, show(r.box)};
}

Outcome golden_square_gauss()
{
    const IntervalLinearProgram p = fixtures::relaxed(fixtures::kSquareModel);
    const Box xf = interval_gauss(p.rows, p.variables, p.box, std::vector<std::string>{"x", "y"}).box;
    const Box yf = interval_gauss(p.rows, p.variables, p.box, std::vector<std::string>{"y", "x"}).box;
    const bool ok = within(xf.get("x"), -0.5, 1.5, 1e-12) && within(xf.get("y"), -0.5, 0.5, 1e-12) &&
                    within(yf.get("x"), 0.0, 1.0, 1e-12) && within(yf.get("y"), -1.0, 1.0, 1e-12);
    return {ok, "x-first " + show(xf) + "| y-first " + show(yf)};
}

Outcome golden_ill_conditioned()
{
    // The reconstruction must have the stated exact solution.
    const oracle::RationalProgram exact = fixtures::ill_conditioned_exact();
    bool ok = true;
    for (std::size_t j = 0; j < 2; ++j) {
        const Rational want = j == 0 ? fixtures::ill_conditioned_x() : fixtures::ill_conditioned_y();
        for (Direction d : {Direction::min, Direction::max}) {
            const oracle::ExactOptimum o = oracle::exact_optimum(exact, j, d);
            ok = ok && o.status == oracle::ExactStatus::optimal && o.value == want;
        }
    }
    std::string detail = ok ? "reconstruction verified; " : "reconstruction NOT verified; ";

    const Model m = parse(fixtures::kIllConditionedModel);
    auto check = [&](SolverMode mode, double max_width) {
        const SolveResult r = solve(m, with_mode(mode));
        const Interval x = r.box.get("x");
        const Interval y = r.box.get("y");
        const bool good = !r.infeasible() && contains_exact(x, fixtures::ill_conditioned_x()) &&
                          contains_exact(y, fixtures::ill_conditioned_y()) && width(x) <= max_width &&
                          width(y) <= max_width;
        std::ostringstream os;
        os.precision(3);
        os << to_string(mode) << " widths " << width(x) << "," << width(y) << "; ";
        detail += os.str();
        return good;
    };
    ok = check(SolverMode::lin, 0.2) && ok;
    ok = check(SolverMode::gauss, 1e-6) && ok;
    ok = check(SolverMode::combined, 1e-6) && ok;
    return {ok, detail};
}

// ---------------------------------------------------------------------------

struct SuiteCase {
    oracle::RationalProgram exact;
    IntervalLinearProgram program;
    std::vector<std::vector<Rational>> vertices;
    std::vector<std::vector<Rational>> interior;
    std::vector<oracle::ExactOptimum> minima; // per variable
    std::vector<oracle::ExactOptimum> maxima;
    SolveResult combined;
    SolveResult lin;
    SolveResult gauss;
};

std::vector<SuiteCase> build_suite()
{
    std::mt19937_64 rng(0x5eed);
    std::vector<SuiteCase> suite;
    while (suite.size() < 200) {
        SuiteCase c{fixtures::random_thin_program(rng), {}, {}, {}, {}, {}, {}, {}, {}};
        const oracle::ExactLp lp(c.exact);
        if (!lp.feasible()) {
            continue; // the generator anchors every row, so this does not happen
        }
        c.program = c.exact.to_interval();
        const std::size_t n = c.exact.size();
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Rational> cost(n);
            cost[j] = 1;
            c.minima.push_back(lp.minimize(cost));
            cost[j] = -1;
            oracle::ExactOptimum hi = lp.minimize(cost);
            hi.value = -hi.value;
            c.maxima.push_back(hi);
        }
        c.vertices = oracle::vertices(c.exact, rng);
        c.interior = oracle::convex_combinations(c.vertices, 20, rng);
        c.combined = solve_program(c.program, with_mode(SolverMode::combined));
        c.lin = solve_program(c.program, with_mode(SolverMode::lin));
        c.gauss = solve_program(c.program, with_mode(SolverMode::gauss));
        suite.push_back(std::move(c));
    }
    return suite;
}

Outcome soundness(const std::vector<SuiteCase>& suite)
{
    std::size_t points = 0;
    std::size_t violations = 0;
    for (const SuiteCase& c : suite) {
        for (const auto* set : {&c.vertices, &c.interior}) {
            for (const auto& pt : *set) {
                ++points;
                if (!c.exact.satisfied_by(pt)) {
                    ++violations; // oracle bug
                    continue;
                }
                for (std::size_t j = 0; j < pt.size(); ++j) {
                    if (!contains_exact(c.combined.box.get(c.exact.variables[j]), pt[j])) {
                        ++violations;
                        break;
                    }
                }
            }
        }
    }
    return {violations == 0, std::to_string(points) + " oracle points, " + std::to_string(violations) + " outside"};
}

Outcome safe_bound_validity(const std::vector<SuiteCase>& suite)
{
    std::size_t checked = 0;
    std::size_t invalid = 0;
    std::size_t gap_checked = 0;
    std::size_t gap_failures = 0;
    double worst_gap = 0.0;
    for (const SuiteCase& c : suite) {
        for (std::size_t j = 0; j < c.exact.size(); ++j) {
            for (Direction dir : {Direction::min, Direction::max}) {
                const oracle::ExactOptimum& opt = dir == Direction::min ? c.minima[j] : c.maxima[j];
                if (opt.status != oracle::ExactStatus::optimal) {
                    continue;
                }
                const std::string& var = c.program.variables[j];
                const SimplexSolution s = solve_lp(c.program, var, dir);
                std::vector<double> duals = s.duals;
                if (duals.size() != c.program.rows.size()) {
                    duals.assign(c.program.rows.size(), 0.0);
                }
                const double b = safe_bound(c.program, var, dir, duals, c.program.box).bound;
                ++checked;
                const Rational br = std::isinf(b) ? Rational(0) : exact_rational(b);
                const bool valid = dir == Direction::min ? (b == -kInf || br <= opt.value)
                                                         : (b == kInf || br >= opt.value);
                invalid += valid ? 0 : 1;
                if (opt.condition <= 1e4) {
                    ++gap_checked;
                    const double gap = std::isinf(b) ? kInf : std::abs(Rational(br - opt.value).get_d());
                    worst_gap = std::max(worst_gap, gap / (1 + std::abs(opt.value.get_d())));
                    gap_failures += gap <= 1e-6 * (1 + std::abs(opt.value.get_d())) ? 0 : 1;
                }
            }
        }
    }
    std::ostringstream os;
    os << checked << " bounds, " << invalid << " invalid; " << gap_checked << " well-conditioned, " << gap_failures
       << " gaps above 1e-6 (worst relative " << worst_gap << ")";
    return {invalid == 0 && gap_failures == 0, os.str()};
}

// ---------------------------------------------------------------------------

Interval random_interval(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-30, 30);
    const double a = std::ldexp(mant(rng), expo(rng));
    const double b = std::bernoulli_distribution(0.1)(rng) ? a : std::ldexp(mant(rng), expo(rng));
    return {std::min(a, b), std::max(a, b)};
}

double sample(const Interval& iv, std::mt19937_64& rng)
{
    const double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return std::clamp(iv.lo() + t * (iv.hi() - iv.lo()), iv.lo(), iv.hi());
}

std::optional<Rational> read_back(const std::string& s)
{
    if (s == "inf" || s == "-inf") {
        return std::nullopt;
    }
    if (!s.empty() && s[0] == '-') {
        return Rational(-parse_rational(s.substr(1)));
    }
    return parse_rational(s);
}

Outcome arithmetic_and_printing()
{
    std::mt19937_64 rng(606);
    using Exact = std::function<Rational(const Rational&, const Rational&)>;
    using Op = std::function<Interval(const Interval&, const Interval&)>;
    const std::vector<std::tuple<std::string, Op, Exact>> ops = {
        {"add", [](auto& a, auto& b) { return a + b; }, [](auto& x, auto& y) { return Rational(x + y); }},
        {"sub", [](auto& a, auto& b) { return a - b; }, [](auto& x, auto& y) { return Rational(x - y); }},
        {"mul", [](auto& a, auto& b) { return a * b; }, [](auto& x, auto& y) { return Rational(x * y); }},
        {"div", [](auto& a, auto& b) { return a / b; }, [](auto& x, auto& y) { return Rational(x / y); }},
    };
    std::ostringstream detail;
    bool ok = true;
    for (const auto& [name, op, exact] : ops) {
        int bad = 0;
        for (int k = 0; k < 10000; ++k) {
            const Interval a = random_interval(rng);
            Interval b = random_interval(rng);
            if (name == "div" && b.contains_zero()) {
                b = b.hi() > 0 ? Interval(b.hi(), 2 * b.hi() + 1) : Interval(b.lo(), b.lo() / 2);
            }
            const double x = sample(a, rng);
            const double y = sample(b, rng);
            if (!contains_exact(op(a, b), exact(exact_rational(x), exact_rational(y)))) {
                ++bad;
            }
        }
        detail << name << " " << bad << "/10000, ";
        ok = ok && bad == 0;
    }
    int bad = 0;
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    std::uniform_int_distribution<int> digits(1, 12);
    for (int k = 0; k < 10000; ++k) {
        const double a = mant(rng) * std::pow(10.0, expo(rng) / 10.0);
        const double b = mant(rng) * std::pow(10.0, expo(rng) / 10.0);
        const Interval x(std::min(a, b), std::max(a, b));
        const auto [lo, hi] = print_outward(x, digits(rng));
        const auto l = read_back(lo);
        const auto h = read_back(hi);
        if (!l || !h || *l > exact_rational(x.lo()) || *h < exact_rational(x.hi())) {
            ++bad;
        }
    }
    detail << "print round trip " << bad << "/10000";
    return {ok && bad == 0, detail.str()};
}

// ---------------------------------------------------------------------------

Outcome dominance(const std::vector<SuiteCase>& suite)
{
    std::size_t instances = 0;
    std::size_t failures = 0;
    std::size_t empty_thin = 0;
    std::string first_failure;
    auto check = [&](const std::string& label, const IntervalLinearProgram& p, const SolveResult& combined,
                     const SolveResult& lin, const SolveResult& gauss) {
        ++instances;
        bool good = combined.box.subset_of(lin.box) && combined.box.subset_of(gauss.box);
        if (split_thin(p, SolveOptions{}.thin_eps).thin.empty()) {
            ++empty_thin;
            good = good && combined.box == lin.box;
        }
        if (!good) {
            ++failures;
            if (first_failure.empty()) {
                first_failure = "; first failure " + label + ": combined " + show(combined.box) + "lin " +
                                show(lin.box) + "gauss " + show(gauss.box);
            }
        }
    };
    for (const char* text : {fixtures::kSquareModel, fixtures::kIllConditionedModel}) {
        const IntervalLinearProgram p = fixtures::relaxed(text);
        check(text, p, solve_program(p, with_mode(SolverMode::combined)), solve_program(p, with_mode(SolverMode::lin)),
              solve_program(p, with_mode(SolverMode::gauss)));
    }
    for (std::size_t k = 0; k < suite.size(); ++k) {
        check("random #" + std::to_string(k), suite[k].program, suite[k].combined, suite[k].lin, suite[k].gauss);
    }
    return {failures == 0, std::to_string(instances) + " instances (" + std::to_string(empty_thin) +
                               " with no thin rows), " + std::to_string(failures) + " violations" + first_failure};
}

} // namespace

int main()
{
    const auto start = std::chrono::steady_clock::now();
    int failed = 0;
    auto report = [&failed](int id, const std::string& title, const Outcome& o) {
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " -- " << o.detail
                  << std::endl;
        failed += o.pass ? 0 : 1;
    };
    report(1, "square example, lin", golden_square_lin());
    report(2, "square example, Gauss order sensitivity", golden_square_gauss());
    report(3, "ill-conditioned example", golden_ill_conditioned());
    const std::vector<SuiteCase> suite = build_suite();
    report(4, "soundness suite (combined)", soundness(suite));
    report(5, "safe-bound validity", safe_bound_validity(suite));
    report(6, "arithmetic containment and print round trip", arithmetic_and_printing());
    report(7, "strategy dominance", dominance(suite));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << " in " << seconds << " s"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
