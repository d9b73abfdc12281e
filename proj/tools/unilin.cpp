// unilin: certified enclosures for the variables of a constraint model.
//
//   unilin [--solver lin|gauss|combined] [--order x,y,...] [--digits N]
//          [--output text|json] [--thin-eps R] [--sweeps N] MODEL
//
// Exit status: 0 solved, 1 proven infeasible, 2 usage or input error.

#include "unilin/format.hpp"
#include "unilin/model.hpp"
#include "unilin/strategy.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kSolved = 0;
constexpr int kInfeasible = 1;
constexpr int kUsage = 2;

using Json = nlohmann::ordered_json;

Json endpoint(double x)
{
    if (std::isinf(x)) {
        return x < 0 ? "-inf" : "inf";
    }
    return x;
}

Json report_json(const unilin::SolveReport& report)
{
    return Json{{"sweeps", report.sweeps},
                {"simplex_iterations", report.simplex_iterations},
                {"gauss_resolved", report.gauss_resolved}};
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first != std::string::npos) {
            out.push_back(item.substr(first, last - first + 1));
        }
    }
    return out;
}

// Variables in order of appearance, then any the box adds.
std::vector<std::string> output_order(const unilin::Model& model, const unilin::Box& box)
{
    std::vector<std::string> vars = model.variable_order();
    for (const auto& [name, iv] : box.intervals()) {
        if (std::find(vars.begin(), vars.end(), name) == vars.end()) {
            vars.push_back(name);
        }
    }
    return vars;
}

void print_text(const unilin::Model& model, const unilin::SolveResult& result, int digits)
{
    if (result.infeasible()) {
        std::cout << "1 = 0;\n";
        return;
    }
    for (const std::string& var : output_order(model, result.box)) {
        const unilin::Interval iv = result.box.get(var);
        const auto [lo, hi] = unilin::print_outward(iv, digits);
        std::string line;
        if (iv.lo() > -unilin::kInf) {
            line += lo + " <= " + var + ";";
        }
        if (iv.hi() < unilin::kInf) {
            line += (line.empty() ? "" : " ") + var + " <= " + hi + ";";
        }
        std::cout << (line.empty() ? "# " + var + " unbounded" : line) << '\n';
    }
}

void print_json(const unilin::Model& model, const unilin::SolveResult& result, const std::string& solver)
{
    Json vars = Json::object();
    if (!result.infeasible()) {
        for (const std::string& var : output_order(model, result.box)) {
            const unilin::Interval iv = result.box.get(var);
            vars[var] = Json{{"lo", endpoint(iv.lo())}, {"hi", endpoint(iv.hi())}};
        }
    }
    const Json out{{"status", result.infeasible() ? "infeasible" : "solved"},
                   {"solver", solver},
                   {"variables", vars},
                   {"report", report_json(result.report)}};
    std::cout << out.dump(2) << '\n';
}

void print_json_error(const std::string& solver)
{
    const Json out{{"status", "error"},
                   {"solver", solver},
                   {"variables", Json::object()},
                   {"report", report_json(unilin::SolveReport{})}};
    std::cout << out.dump(2) << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Certified variable enclosures for linear and nonlinear constraint models"};
    std::string solver = "combined";
    std::string order;
    int digits = 17;
    std::string output = "text";
    double thin_eps = 1e-10;
    std::size_t sweeps = 3;
    std::string path;

    app.add_option("--solver", solver, "lin, gauss or combined")
        ->check(CLI::IsMember({"lin", "gauss", "combined"}))
        ->capture_default_str();
    app.add_option("--order", order, "Gauss elimination order, comma separated");
    app.add_option("--digits", digits, "Significant digits in text output")
        ->check(CLI::Range(1, 40))
        ->capture_default_str();
    app.add_option("--output", output, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--thin-eps", thin_eps,
                   "Relative right-hand side width up to which a row is a thin equation (Gauss input)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app.add_option("--sweeps", sweeps, "Maximum tightening sweeps")->capture_default_str();
    app.add_option("model", path, "Model file (.ucl)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSolved : kUsage;
    }
    const bool json = output == "json";

    std::ifstream in(path);
    if (!in) {
        std::cerr << "unilin: cannot read '" << path << "'\n";
        if (json) {
            print_json_error(solver);
        }
        return kUsage;
    }
    std::stringstream text;
    text << in.rdbuf();

    unilin::SolveOptions options;
    options.mode = unilin::solver_mode_from_string(solver);
    options.thin_eps = thin_eps;
    options.sweeps = sweeps;
    if (!order.empty()) {
        options.order = split_list(order);
    }

    try {
        const unilin::Model model = unilin::parse(text.str());
        const unilin::SolveResult result = unilin::solve(model, options);
        for (const std::string& w : result.report.warnings) {
            std::cerr << "unilin: warning: " << w << '\n';
        }
        if (result.report.infeasible_stage) {
            std::cerr << "unilin: infeasible (" << *result.report.infeasible_stage << ")\n";
        }
        if (json) {
            print_json(model, result, solver);
        } else {
            print_text(model, result, digits);
        }
        return result.infeasible() ? kInfeasible : kSolved;
    } catch (const unilin::ParseError& e) {
        std::cerr << path << ":" << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        std::cerr << "unilin: " << e.what() << '\n';
    }
    if (json) {
        print_json_error(solver);
    }
    return kUsage;
}
