#ifndef UNILIN_MODEL_HPP
#define UNILIN_MODEL_HPP

#include "unilin/interval.hpp"
#include "unilin/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace unilin {

using NodeId = std::size_t;

enum class NodeKind : std::uint8_t { variable, constant, negate, binary, function, comparison };
enum class BinaryOp : std::uint8_t { add, sub, mul, div };
// Strict relations are kept for printing but mean their closed counterparts.
enum class Relation : std::uint8_t { eq, le, ge, lt, gt };

std::string to_string(BinaryOp op);
std::string to_string(Relation rel);

// Node of the syntactic DAG. Operands always have smaller ids than the node
// itself, so the node store is in topological order.
struct ExprNode {
    NodeKind kind = NodeKind::constant;
    std::vector<NodeId> operands;

    std::string name;                // variable
    Rational value;                  // constant
    BinaryOp op = BinaryOp::add;     // binary
    StdFunction function = StdFunction::abs;
    std::vector<Relation> relations; // comparison chain, operands.size() - 1 links

    // Range enclosure over the variable box. For comparison chains this is a
    // truth enclosure: [1,1] certainly holds, [0,0] certainly violated, [0,1] unknown.
    Interval enclosure = Interval::entire();
};

struct VariableDecl {
    Interval domain = Interval::entire();
    // Exact bounds as written, when declared with `x in [a, b]`.
    std::optional<std::pair<Rational, Rational>> declared;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line, int column);

    [[nodiscard]] int line() const { return line_; }
    [[nodiscard]] int column() const { return column_; }

private:
    int line_;
    int column_;
};

class Model {
public:
    [[nodiscard]] const ExprNode& node(NodeId id) const { return nodes_.at(id); }
    [[nodiscard]] const std::vector<ExprNode>& nodes() const { return nodes_; }
    [[nodiscard]] const std::vector<NodeId>& roots() const { return roots_; }
    // Variables in order of first appearance.
    [[nodiscard]] const std::vector<std::string>& variable_order() const { return variable_order_; }
    [[nodiscard]] const VariableDecl& variable(const std::string& name) const { return variables_.at(name); }
    [[nodiscard]] const std::map<std::string, VariableDecl>& variables() const { return variables_; }
    [[nodiscard]] const std::vector<std::string>& warnings() const { return warnings_; }

    // Set by evaluate_ranges when some node provably has no value or a
    // constraint is certainly violated.
    [[nodiscard]] bool infeasible() const { return infeasible_reason_.has_value(); }
    [[nodiscard]] const std::optional<std::string>& infeasible_reason() const { return infeasible_reason_; }

    // Builders, used by the parser. Structurally identical nodes are shared.
    NodeId add_variable(const std::string& name);
    NodeId add_constant(const Rational& value);
    NodeId add_negate(NodeId operand);
    NodeId add_binary(BinaryOp op, NodeId lhs, NodeId rhs);
    NodeId add_function(StdFunction fn, NodeId operand);
    NodeId add_comparison(std::vector<NodeId> operands, std::vector<Relation> relations);
    void add_root(NodeId comparison);
    // Throws std::invalid_argument if `name` already has a different declared domain.
    void declare(const std::string& name, const Rational& lo, const Rational& hi);
    void warn(std::string message) { warnings_.push_back(std::move(message)); }

private:
    friend Model evaluate_ranges(const Model& model);

    NodeId intern(ExprNode node);
    void touch_variable(const std::string& name);

    std::vector<ExprNode> nodes_;
    std::map<std::string, NodeId> index_;
    std::vector<NodeId> roots_;
    std::vector<std::string> variable_order_;
    std::map<std::string, VariableDecl> variables_;
    std::vector<std::string> warnings_;
    std::optional<std::string> infeasible_reason_;
};

// Parses the modeling language. Throws ParseError (syntax errors, unsupported
// constructs, conflicting domain declarations).
Model parse(std::string_view text);

// Bottom-up outward-rounded evaluation of every node over the declared
// domains.
Model evaluate_ranges(const Model& model);

// Text that parses back to a structurally equal model.
std::string to_string(const Model& model);
// Fully parenthesized expression text of one node.
std::string expression_text(const Model& model, NodeId id);

} // namespace unilin

#endif
