#ifndef UNILIN_GAUSS_HPP
#define UNILIN_GAUSS_HPP

#include "unilin/program.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace unilin {

struct GaussResult {
    // Input box narrowed by the resolved variables; infeasible when a derived
    // equation cannot hold anywhere in the box.
    Box box;
    // Number of pivots performed.
    std::size_t resolved = 0;
    // Pivot variables in elimination order.
    std::vector<std::string> pivots;

    [[nodiscard]] bool progress() const { return resolved > 0; }
};

// Interval Gaussian elimination on rows read as equations form(x) = bound
// (interval right-hand side). With `order`, variables are eliminated in that
// sequence (remaining ones automatically afterwards); otherwise each step
// takes the candidate pivot of largest mignitude, ties going to the earlier
// variable of `variables` and then the earlier row. Pivots containing zero
// are never used; columns without a usable pivot keep their box interval.
GaussResult interval_gauss(const std::vector<Row>& equations, const std::vector<std::string>& variables,
                           const Box& box, const std::optional<std::vector<std::string>>& order = std::nullopt);

} // namespace unilin

#endif
