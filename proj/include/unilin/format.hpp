#ifndef UNILIN_FORMAT_HPP
#define UNILIN_FORMAT_HPP

#include "unilin/interval.hpp"

#include <string>
#include <utility>

namespace unilin {

// Decimal text with `digits` significant digits whose value is <= x
// (format_down) or >= x (format_up). Infinities print as "-inf" / "inf".
// Precondition: digits >= 1.
std::string format_down(double x, int digits);
std::string format_up(double x, int digits);

// Outward decimal rendering of both endpoints; reading the strings back gives
// an interval containing x.
std::pair<std::string, std::string> print_outward(const Interval& x, int digits);

} // namespace unilin

#endif
