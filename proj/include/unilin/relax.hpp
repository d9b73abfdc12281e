#ifndef UNILIN_RELAX_HPP
#define UNILIN_RELAX_HPP

#include "unilin/model.hpp"
#include "unilin/program.hpp"

#include <optional>

namespace unilin {

// Linear form of the expression rooted at `id`, or nullopt when the
// expression is not linear (a product of two non-constant factors, a
// function of a variable, a division by a non-constant). Coefficients built
// from rational literals are the tightest intervals around the exact values.
// Variable-free subexpressions become constants equal to their enclosure, so
// `model` should have been through evaluate_ranges.
std::optional<LinearForm> linear_form_of(const Model& model, NodeId id);

// Interval linear program implied by the model:
//  - a linear link `a REL b` of a comparison chain becomes the row a - b in R
//    with the constant folded into the bound; links of one chain over the same
//    form merge into a single two-sided row;
//  - every linear direct operand of a nonlinear node contributes form in enclosure;
//  - nonlinear links contribute nothing;
//  - rows over a single variable tighten the box instead of being kept.
// An empty enclosure or a violated constant row marks the box infeasible.
IntervalLinearProgram relax(const Model& model);

} // namespace unilin

#endif
