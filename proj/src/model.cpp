#include "unilin/model.hpp"

#include <cctype>
#include <sstream>

namespace unilin {

std::string to_string(BinaryOp op)
{
    switch (op) {
    case BinaryOp::add:
        return "+";
    case BinaryOp::sub:
        return "-";
    case BinaryOp::mul:
        return "*";
    case BinaryOp::div:
        return "/";
    }
    return "?";
}

std::string to_string(Relation rel)
{
    switch (rel) {
    case Relation::eq:
        return "=";
    case Relation::le:
        return "<=";
    case Relation::ge:
        return ">=";
    case Relation::lt:
        return "<";
    case Relation::gt:
        return ">";
    }
    return "?";
}

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line),
      column_(column)
{
}

// ---------------------------------------------------------------------------
// Node store

NodeId Model::intern(ExprNode node)
{
    std::ostringstream key;
    key << static_cast<int>(node.kind) << '|';
    switch (node.kind) {
    case NodeKind::variable:
        key << node.name;
        break;
    case NodeKind::constant:
        key << node.value.get_str();
        break;
    case NodeKind::binary:
        key << static_cast<int>(node.op);
        break;
    case NodeKind::function:
        key << static_cast<int>(node.function);
        break;
    case NodeKind::comparison:
        for (Relation r : node.relations) {
            key << static_cast<int>(r) << ',';
        }
        break;
    case NodeKind::negate:
        break;
    }
    key << '|';
    for (NodeId id : node.operands) {
        key << id << ',';
    }
    auto [it, inserted] = index_.emplace(key.str(), nodes_.size());
    if (inserted) {
        nodes_.push_back(std::move(node));
    }
    return it->second;
}

void Model::touch_variable(const std::string& name)
{
    if (variables_.emplace(name, VariableDecl{}).second) {
        variable_order_.push_back(name);
    }
}

NodeId Model::add_variable(const std::string& name)
{
    touch_variable(name);
    ExprNode n;
    n.kind = NodeKind::variable;
    n.name = name;
    return intern(std::move(n));
}

NodeId Model::add_constant(const Rational& value)
{
    ExprNode n;
    n.kind = NodeKind::constant;
    n.value = value;
    return intern(std::move(n));
}

NodeId Model::add_negate(NodeId operand)
{
    ExprNode n;
    n.kind = NodeKind::negate;
    n.operands = {operand};
    return intern(std::move(n));
}

NodeId Model::add_binary(BinaryOp op, NodeId lhs, NodeId rhs)
{
    ExprNode n;
    n.kind = NodeKind::binary;
    n.op = op;
    n.operands = {lhs, rhs};
    return intern(std::move(n));
}

NodeId Model::add_function(StdFunction fn, NodeId operand)
{
    ExprNode n;
    n.kind = NodeKind::function;
    n.function = fn;
    n.operands = {operand};
    return intern(std::move(n));
}

NodeId Model::add_comparison(std::vector<NodeId> operands, std::vector<Relation> relations)
{
    if (operands.size() < 2 || relations.size() + 1 != operands.size()) {
        throw std::invalid_argument("comparison chain needs n operands and n-1 relations");
    }
    ExprNode n;
    n.kind = NodeKind::comparison;
    n.operands = std::move(operands);
    n.relations = std::move(relations);
    return intern(std::move(n));
}

void Model::add_root(NodeId comparison)
{
    if (node(comparison).kind != NodeKind::comparison) {
        throw std::invalid_argument("model roots must be comparison chains");
    }
    roots_.push_back(comparison);
}

void Model::declare(const std::string& name, const Rational& lo, const Rational& hi)
{
    if (lo > hi) {
        throw std::invalid_argument("empty domain for '" + name + "'");
    }
    touch_variable(name);
    VariableDecl& decl = variables_.at(name);
    if (decl.declared) {
        if (decl.declared->first != lo || decl.declared->second != hi) {
            throw std::invalid_argument("conflicting domain declarations for '" + name + "'");
        }
        return;
    }
    decl.declared = std::make_pair(lo, hi);
    decl.domain = Interval(enclose(lo).lo(), enclose(hi).hi());
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { ident, number, plus, minus, star, slash, lparen, rparen, lbracket, rbracket, comma, semi, rel, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    Relation rel = Relation::eq;
    int line = 1;
    int column = 1;
};

bool is_boolean_word(const std::string& word)
{
    return word == "and" || word == "or" || word == "not" || word == "xor" || word == "true" ||
           word == "false" || word == "if" || word == "then" || word == "else";
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = column_;
            if (pos_ >= text_.size()) {
                out.push_back(t);
                return out;
            }
            const char c = text_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) != 0) {
                t.kind = Tok::ident;
                while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0) {
                    t.text.push_back(text_[pos_]);
                    advance();
                }
                if (is_boolean_word(t.text)) {
                    throw ParseError("unsupported construct: Boolean statement '" + t.text + "'", t.line,
                                     t.column);
                }
            } else if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.') {
                t.kind = Tok::number;
                t.text = lex_number(t);
            } else {
                advance();
                switch (c) {
                case '+':
                    t.kind = Tok::plus;
                    break;
                case '-':
                    t.kind = Tok::minus;
                    break;
                case '*':
                    t.kind = Tok::star;
                    break;
                case '/':
                    t.kind = Tok::slash;
                    break;
                case '(':
                    t.kind = Tok::lparen;
                    break;
                case ')':
                    t.kind = Tok::rparen;
                    break;
                case '[':
                    t.kind = Tok::lbracket;
                    break;
                case ']':
                    t.kind = Tok::rbracket;
                    break;
                case ',':
                    t.kind = Tok::comma;
                    break;
                case ';':
                    t.kind = Tok::semi;
                    break;
                case '=':
                    t.kind = Tok::rel;
                    t.rel = Relation::eq;
                    if (peek() == '=') {
                        advance();
                    }
                    break;
                case '<':
                case '>': {
                    t.kind = Tok::rel;
                    const bool less = c == '<';
                    if (peek() == '=') {
                        advance();
                        t.rel = less ? Relation::le : Relation::ge;
                    } else {
                        t.rel = less ? Relation::lt : Relation::gt;
                    }
                    break;
                }
                case '!':
                case '&':
                case '|':
                    throw ParseError(std::string("unsupported construct: Boolean operator '") + c + "'", t.line,
                                     t.column);
                default:
                    throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
                }
            }
            out.push_back(t);
        }
    }

private:
    [[nodiscard]] char peek(std::size_t ahead = 0) const
    {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void advance()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space()
    {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    advance();
                }
            } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
                advance();
            } else {
                return;
            }
        }
    }

    std::string lex_digits()
    {
        std::string s;
        while (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
            s.push_back(peek());
            advance();
        }
        return s;
    }

    std::string lex_number(const Token& start)
    {
        std::string s = lex_digits();
        bool integer = true;
        if (peek() == '.') {
            integer = false;
            s.push_back('.');
            advance();
            s += lex_digits();
        }
        if (s == ".") {
            throw ParseError("malformed number", start.line, start.column);
        }
        const char e = peek();
        if ((e == 'e' || e == 'E') &&
            (std::isdigit(static_cast<unsigned char>(peek(1))) != 0 ||
             ((peek(1) == '+' || peek(1) == '-') && std::isdigit(static_cast<unsigned char>(peek(2))) != 0))) {
            integer = false;
            s.push_back(e);
            advance();
            if (peek() == '+' || peek() == '-') {
                s.push_back(peek());
                advance();
            }
            s += lex_digits();
        }
        // INT/INT directly adjacent is a ratio literal.
        if (integer && peek() == '/' && std::isdigit(static_cast<unsigned char>(peek(1))) != 0) {
            s.push_back('/');
            advance();
            s += lex_digits();
        }
        if (std::isalpha(static_cast<unsigned char>(peek())) != 0) {
            throw ParseError("malformed number '" + s + peek() + "'", start.line, start.column);
        }
        return s;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

std::optional<StdFunction> function_named(const std::string& name)
{
    static const std::map<std::string, StdFunction> table = {
        {"sin", StdFunction::sin},   {"cos", StdFunction::cos},   {"exp", StdFunction::exp},
        {"ln", StdFunction::ln},     {"sqrt", StdFunction::sqrt}, {"abs", StdFunction::abs},
    };
    const auto it = table.find(name);
    if (it == table.end()) {
        return std::nullopt;
    }
    return it->second;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Model run()
    {
        while (cur().kind != Tok::end) {
            statement();
        }
        return std::move(model_);
    }

private:
    [[nodiscard]] const Token& cur() const { return tokens_[pos_]; }
    [[nodiscard]] const Token& ahead(std::size_t n) const
    {
        return tokens_[std::min(pos_ + n, tokens_.size() - 1)];
    }
    const Token& take() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& message, const Token& at) const
    {
        throw ParseError(message, at.line, at.column);
    }

    static std::string describe(const Token& t)
    {
        switch (t.kind) {
        case Tok::end:
            return "end of input";
        case Tok::ident:
        case Tok::number:
            return "'" + t.text + "'";
        case Tok::rel:
            return "'" + to_string(t.rel) + "'";
        default:
            return "symbol";
        }
    }

    const Token& expect(Tok kind, const char* what)
    {
        if (cur().kind != kind) {
            fail(std::string("expected ") + what + ", found " + describe(cur()), cur());
        }
        return take();
    }

    void statement()
    {
        if (cur().kind == Tok::ident && ahead(1).kind == Tok::ident && ahead(1).text == "in") {
            domain();
        } else {
            constraint();
        }
        expect(Tok::semi, "';'");
    }

    Rational signed_number()
    {
        bool negative = false;
        if (cur().kind == Tok::minus) {
            negative = true;
            take();
        }
        const Token& t = expect(Tok::number, "number");
        Rational q = number_value(t);
        return negative ? Rational(-q) : q;
    }

    Rational number_value(const Token& t) const
    {
        try {
            return parse_rational(t.text);
        } catch (const std::invalid_argument& e) {
            fail(e.what(), t);
        }
    }

    void domain()
    {
        const Token name = take();
        take(); // in
        expect(Tok::lbracket, "'['");
        const Rational lo = signed_number();
        expect(Tok::comma, "','");
        const Rational hi = signed_number();
        expect(Tok::rbracket, "']'");
        try {
            model_.declare(name.text, lo, hi);
        } catch (const std::invalid_argument& e) {
            fail(e.what(), name);
        }
    }

    void constraint()
    {
        std::vector<NodeId> operands{expr()};
        std::vector<Relation> relations;
        while (cur().kind == Tok::rel) {
            const Token rel = take();
            if (rel.rel == Relation::lt || rel.rel == Relation::gt) {
                model_.warn(std::to_string(rel.line) + ":" + std::to_string(rel.column) + ": strict '" +
                            to_string(rel.rel) + "' treated as '" + (rel.rel == Relation::lt ? "<=" : ">=") +
                            "'");
            }
            relations.push_back(rel.rel);
            operands.push_back(expr());
        }
        if (relations.empty()) {
            fail("expected a relation (=, <=, >=, <, >)", cur());
        }
        model_.add_root(model_.add_comparison(std::move(operands), std::move(relations)));
    }

    NodeId expr()
    {
        NodeId lhs = term();
        while (cur().kind == Tok::plus || cur().kind == Tok::minus) {
            const BinaryOp op = take().kind == Tok::plus ? BinaryOp::add : BinaryOp::sub;
            lhs = model_.add_binary(op, lhs, term());
        }
        return lhs;
    }

    NodeId term()
    {
        NodeId lhs = factor();
        while (cur().kind == Tok::star || cur().kind == Tok::slash) {
            const BinaryOp op = take().kind == Tok::star ? BinaryOp::mul : BinaryOp::div;
            lhs = model_.add_binary(op, lhs, factor());
        }
        return lhs;
    }

    NodeId factor()
    {
        const Token& t = cur();
        switch (t.kind) {
        case Tok::number:
            take();
            return model_.add_constant(number_value(t));
        case Tok::minus:
            take();
            return model_.add_negate(factor());
        case Tok::lparen: {
            take();
            const NodeId inner = expr();
            expect(Tok::rparen, "')'");
            return inner;
        }
        case Tok::ident: {
            const Token name = take();
            if (cur().kind == Tok::lparen) {
                const auto fn = function_named(name.text);
                if (!fn) {
                    fail("unknown function '" + name.text + "'", name);
                }
                take();
                const NodeId arg = expr();
                expect(Tok::rparen, "')'");
                return model_.add_function(*fn, arg);
            }
            if (name.text == "in") {
                fail("unexpected 'in'", name);
            }
            return model_.add_variable(name.text);
        }
        default:
            fail("expected an expression, found " + describe(t), t);
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    Model model_;
};

} // namespace

Model parse(std::string_view text)
{
    Lexer lexer(text);
    Parser parser(lexer.run());
    return parser.run();
}

// ---------------------------------------------------------------------------
// Range evaluation

namespace {

// Truth enclosure of `lhs rel rhs` given the enclosures of both sides.
Interval relation_truth(Relation rel, const Interval& lhs, const Interval& rhs)
{
    const Interval diff = lhs - rhs;
    bool possible = false;
    bool certain = false;
    switch (rel) {
    case Relation::eq:
        possible = diff.contains_zero();
        certain = diff.lo() == 0.0 && diff.hi() == 0.0;
        break;
    case Relation::le:
    case Relation::lt:
        possible = diff.lo() <= 0.0;
        certain = diff.hi() <= 0.0;
        break;
    case Relation::ge:
    case Relation::gt:
        possible = diff.hi() >= 0.0;
        certain = diff.lo() >= 0.0;
        break;
    }
    if (!possible) {
        return Interval(0.0);
    }
    return certain ? Interval(1.0) : Interval(0.0, 1.0);
}

} // namespace

Model evaluate_ranges(const Model& model)
{
    Model out = model;
    out.infeasible_reason_.reset();
    auto mark = [&out](NodeId id, const std::string& why) {
        if (!out.infeasible_reason_) {
            out.infeasible_reason_ = "node '" + expression_text(out, id) + "': " + why;
        }
    };
    for (NodeId id = 0; id < out.nodes_.size(); ++id) {
        ExprNode& n = out.nodes_[id];
        auto enc = [&out](NodeId operand) { return out.nodes_[operand].enclosure; };
        EvalFlag flags = EvalFlag::none;
        switch (n.kind) {
        case NodeKind::variable:
            n.enclosure = out.variables_.at(n.name).domain;
            break;
        case NodeKind::constant:
            n.enclosure = enclose(n.value);
            break;
        case NodeKind::negate:
            n.enclosure = -enc(n.operands[0]);
            break;
        case NodeKind::binary: {
            const Interval a = enc(n.operands[0]);
            const Interval b = enc(n.operands[1]);
            switch (n.op) {
            case BinaryOp::add:
                n.enclosure = a + b;
                break;
            case BinaryOp::sub:
                n.enclosure = a - b;
                break;
            case BinaryOp::mul:
                n.enclosure = a * b;
                break;
            case BinaryOp::div:
                n.enclosure = div(a, b, &flags);
                break;
            }
            break;
        }
        case NodeKind::function:
            n.enclosure = eval_std(n.function, enc(n.operands[0]), &flags);
            break;
        case NodeKind::comparison: {
            bool possible = true;
            bool certain = true;
            for (std::size_t k = 0; k < n.relations.size(); ++k) {
                const Interval a = enc(n.operands[k]);
                const Interval b = enc(n.operands[k + 1]);
                if (a.is_empty() || b.is_empty()) {
                    possible = false;
                    break;
                }
                const Interval truth = relation_truth(n.relations[k], a, b);
                possible = possible && truth.hi() == 1.0;
                certain = certain && truth.lo() == 1.0;
            }
            n.enclosure = !possible ? Interval(0.0) : (certain ? Interval(1.0) : Interval(0.0, 1.0));
            break;
        }
        }
        if (has_flag(flags, EvalFlag::undefined_quotient)) {
            mark(id, "division by zero");
        } else if (has_flag(flags, EvalFlag::domain_violation)) {
            mark(id, "argument outside the function's domain");
        } else if (n.enclosure.is_empty()) {
            mark(id, "empty range");
        }
    }
    for (NodeId root : out.roots_) {
        if (out.nodes_[root].enclosure.hi() == 0.0) {
            mark(root, "constraint cannot hold on the variable domains");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Printing

std::string expression_text(const Model& model, NodeId id)
{
    const ExprNode& n = model.node(id);
    switch (n.kind) {
    case NodeKind::variable:
        return n.name;
    case NodeKind::constant:
        return to_string(n.value);
    case NodeKind::negate:
        return "(-" + expression_text(model, n.operands[0]) + ")";
    case NodeKind::binary:
        return "(" + expression_text(model, n.operands[0]) + " " + to_string(n.op) + " " +
               expression_text(model, n.operands[1]) + ")";
    case NodeKind::function:
        return to_string(n.function) + "(" + expression_text(model, n.operands[0]) + ")";
    case NodeKind::comparison: {
        std::string s = expression_text(model, n.operands[0]);
        for (std::size_t k = 0; k < n.relations.size(); ++k) {
            s += " " + to_string(n.relations[k]) + " " + expression_text(model, n.operands[k + 1]);
        }
        return s;
    }
    }
    return "?";
}

std::string to_string(const Model& model)
{
    std::ostringstream os;
    for (const std::string& name : model.variable_order()) {
        const VariableDecl& decl = model.variable(name);
        if (decl.declared) {
            os << name << " in [" << to_string(decl.declared->first) << ", " << to_string(decl.declared->second)
               << "];\n";
        }
    }
    for (NodeId root : model.roots()) {
        os << expression_text(model, root) << ";\n";
    }
    return os.str();
}

} // namespace unilin
