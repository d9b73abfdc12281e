#include "unilin/relax.hpp"

#include <map>

namespace unilin {

namespace {

// Linear form with exact rational data.
struct ExactForm {
    std::map<std::string, Rational> coeffs;
    Rational constant;

    [[nodiscard]] bool is_constant() const { return coeffs.empty(); }
};

ExactForm exact_add(const ExactForm& a, const ExactForm& b, int sign)
{
    ExactForm out = a;
    for (const auto& [var, c] : b.coeffs) {
        Rational& slot = out.coeffs[var];
        slot += sign * c;
        if (slot == 0) {
            out.coeffs.erase(var);
        }
    }
    out.constant += sign * b.constant;
    return out;
}

ExactForm exact_scale(const Rational& k, const ExactForm& a)
{
    ExactForm out;
    if (k == 0) {
        return out;
    }
    for (const auto& [var, c] : a.coeffs) {
        out.coeffs.emplace(var, k * c);
    }
    out.constant = k * a.constant;
    return out;
}

LinearForm to_interval_form(const ExactForm& f)
{
    LinearForm out;
    for (const auto& [var, c] : f.coeffs) {
        out.coeffs.emplace(var, enclose(c));
    }
    out.constant = enclose(f.constant);
    return out;
}

// Memoized linear-form extraction over the DAG.
class FormBuilder {
public:
    explicit FormBuilder(const Model& model) : model_(model) {}

    const std::optional<ExactForm>& exact(NodeId id)
    {
        if (auto it = exact_.find(id); it != exact_.end()) {
            return it->second;
        }
        return exact_[id] = compute_exact(id);
    }

    const std::optional<LinearForm>& interval(NodeId id)
    {
        if (auto it = interval_.find(id); it != interval_.end()) {
            return it->second;
        }
        return interval_[id] = compute_interval(id);
    }

    // Exact when possible, otherwise interval arithmetic.
    std::optional<LinearForm> form(NodeId id)
    {
        if (const auto& e = exact(id)) {
            return to_interval_form(*e);
        }
        return interval(id);
    }

private:
    std::optional<ExactForm> compute_exact(NodeId id)
    {
        const ExprNode& n = model_.node(id);
        switch (n.kind) {
        case NodeKind::variable: {
            ExactForm f;
            f.coeffs.emplace(n.name, Rational(1));
            return f;
        }
        case NodeKind::constant: {
            ExactForm f;
            f.constant = n.value;
            return f;
        }
        case NodeKind::negate: {
            const auto& a = exact(n.operands[0]);
            if (!a) {
                return std::nullopt;
            }
            return exact_scale(Rational(-1), *a);
        }
        case NodeKind::binary: {
            const auto a = exact(n.operands[0]);
            const auto b = exact(n.operands[1]);
            if (!a || !b) {
                return std::nullopt;
            }
            switch (n.op) {
            case BinaryOp::add:
                return exact_add(*a, *b, 1);
            case BinaryOp::sub:
                return exact_add(*a, *b, -1);
            case BinaryOp::mul:
                if (a->is_constant()) {
                    return exact_scale(a->constant, *b);
                }
                if (b->is_constant()) {
                    return exact_scale(b->constant, *a);
                }
                return std::nullopt;
            case BinaryOp::div:
                if (b->is_constant() && b->constant != 0) {
                    return exact_scale(1 / b->constant, *a);
                }
                return std::nullopt;
            }
            return std::nullopt;
        }
        case NodeKind::function:
        case NodeKind::comparison:
            return std::nullopt;
        }
        return std::nullopt;
    }

    std::optional<LinearForm> compute_interval(NodeId id)
    {
        const ExprNode& n = model_.node(id);
        if (const auto& e = exact(id)) {
            return to_interval_form(*e);
        }
        switch (n.kind) {
        case NodeKind::variable:
        case NodeKind::constant:
            // always exact
            return std::nullopt;
        case NodeKind::negate: {
            const auto& a = interval(n.operands[0]);
            if (!a) {
                return std::nullopt;
            }
            return neg(*a);
        }
        case NodeKind::binary: {
            const auto a = interval(n.operands[0]);
            const auto b = interval(n.operands[1]);
            if (!a || !b) {
                return std::nullopt;
            }
            switch (n.op) {
            case BinaryOp::add:
                return add(*a, *b);
            case BinaryOp::sub:
                return sub(*a, *b);
            case BinaryOp::mul:
                if (a->is_constant()) {
                    return scale(a->constant, *b);
                }
                if (b->is_constant()) {
                    return scale(b->constant, *a);
                }
                return std::nullopt;
            case BinaryOp::div:
                if (b->is_constant() && !b->constant.contains_zero()) {
                    return scale(div(Interval(1.0), b->constant), *a);
                }
                return std::nullopt;
            }
            return std::nullopt;
        }
        case NodeKind::function: {
            const auto& a = interval(n.operands[0]);
            if (a && a->is_constant() && !n.enclosure.is_empty()) {
                LinearForm f;
                f.constant = n.enclosure;
                return f;
            }
            return std::nullopt;
        }
        case NodeKind::comparison:
            return std::nullopt;
        }
        return std::nullopt;
    }

    const Model& model_;
    std::map<NodeId, std::optional<ExactForm>> exact_;
    std::map<NodeId, std::optional<LinearForm>> interval_;
};

// Row before it is classified into box update / kept row.
struct PendingRow {
    LinearForm form;
    Interval bound;
};

// Exact row sum_j coeffs_j x_j in [lo, hi], absent sides being infinite.
struct ExactRow {
    std::map<std::string, Rational> coeffs;
    std::optional<Rational> lo;
    std::optional<Rational> hi;
};

void negate_exact(ExactRow& row)
{
    for (auto& [var, c] : row.coeffs) {
        c = -c;
    }
    std::optional<Rational> lo;
    std::optional<Rational> hi;
    if (row.hi) {
        lo = Rational(-*row.hi);
    }
    if (row.lo) {
        hi = Rational(-*row.lo);
    }
    row.lo = lo;
    row.hi = hi;
}

PendingRow to_pending(const ExactRow& row)
{
    PendingRow out;
    for (const auto& [var, c] : row.coeffs) {
        out.form.coeffs.emplace(var, enclose(c));
    }
    const double lo = row.lo ? enclose(*row.lo).lo() : -kInf;
    const double hi = row.hi ? enclose(*row.hi).hi() : kInf;
    out.bound = lo <= hi ? Interval(lo, hi) : Interval::empty();
    return out;
}

bool first_coefficient_negative(const LinearForm& f)
{
    return !f.coeffs.empty() && f.coeffs.begin()->second.hi() <= 0.0;
}

class Relaxer {
public:
    explicit Relaxer(const Model& model) : model_(model), forms_(model) {}

    IntervalLinearProgram run()
    {
        for (const std::string& var : model_.variable_order()) {
            program_.declare(var);
            program_.box.set(var, model_.variable(var).domain);
        }
        if (model_.infeasible()) {
            program_.box.mark_infeasible();
            return program_;
        }
        for (NodeId root : model_.roots()) {
            relax_chain(model_.node(root));
        }
        harvest_operands();
        if (program_.box.infeasible()) {
            program_.rows.clear();
        }
        return program_;
    }

private:
    static void relation_sides(Relation rel, bool& lower, bool& upper)
    {
        // lhs - rhs in [0,0], (-inf,0] or [0,inf)
        lower = rel == Relation::eq || rel == Relation::ge || rel == Relation::gt;
        upper = rel == Relation::eq || rel == Relation::le || rel == Relation::lt;
    }

    void relax_chain(const ExprNode& chain)
    {
        std::vector<ExactRow> exact_rows;
        std::vector<PendingRow> interval_rows;
        for (std::size_t k = 0; k < chain.relations.size(); ++k) {
            const NodeId lhs = chain.operands[k];
            const NodeId rhs = chain.operands[k + 1];
            bool lower = false;
            bool upper = false;
            relation_sides(chain.relations[k], lower, upper);

            const auto& a = forms_.exact(lhs);
            const auto& b = forms_.exact(rhs);
            if (a && b) {
                const ExactForm d = exact_add(*a, *b, -1);
                ExactRow row{d.coeffs, std::nullopt, std::nullopt};
                if (lower) {
                    row.lo = Rational(-d.constant);
                }
                if (upper) {
                    row.hi = Rational(-d.constant);
                }
                if (!row.coeffs.empty() && row.coeffs.begin()->second < 0) {
                    negate_exact(row);
                }
                merge_exact(exact_rows, std::move(row));
                continue;
            }
            const auto fa = forms_.interval(lhs);
            const auto fb = forms_.interval(rhs);
            if (!fa || !fb) {
                continue; // nonlinear link: no constraint
            }
            LinearForm d = sub(*fa, *fb);
            const Interval relation(lower ? 0.0 : -kInf, upper ? 0.0 : kInf);
            PendingRow row{d, relation - d.constant};
            row.form.constant = Interval(0.0);
            if (first_coefficient_negative(row.form)) {
                row.form = neg(row.form);
                row.bound = neg(row.bound);
            }
            merge_interval(interval_rows, std::move(row));
        }
        for (const ExactRow& row : exact_rows) {
            place_exact(row);
        }
        for (const PendingRow& row : interval_rows) {
            place(row);
        }
    }

    static void merge_exact(std::vector<ExactRow>& rows, ExactRow row)
    {
        for (ExactRow& existing : rows) {
            if (existing.coeffs == row.coeffs) {
                if (row.lo && (!existing.lo || *row.lo > *existing.lo)) {
                    existing.lo = row.lo;
                }
                if (row.hi && (!existing.hi || *row.hi < *existing.hi)) {
                    existing.hi = row.hi;
                }
                return;
            }
        }
        rows.push_back(std::move(row));
    }

    static void merge_interval(std::vector<PendingRow>& rows, PendingRow row)
    {
        for (PendingRow& existing : rows) {
            if (existing.form == row.form) {
                existing.bound = intersect(existing.bound, row.bound);
                return;
            }
        }
        rows.push_back(std::move(row));
    }

    void place_exact(const ExactRow& row)
    {
        if (row.lo && row.hi && *row.lo > *row.hi) {
            program_.box.mark_infeasible();
            return;
        }
        if (row.coeffs.size() == 1) {
            // a x in [lo, hi]  =>  x in [lo/a, hi/a] (sides swap for a < 0)
            const auto& [var, a] = *row.coeffs.begin();
            std::optional<Rational> lo;
            std::optional<Rational> hi;
            if (row.lo) {
                (a > 0 ? lo : hi) = Rational(*row.lo / a);
            }
            if (row.hi) {
                (a > 0 ? hi : lo) = Rational(*row.hi / a);
            }
            const double l = lo ? enclose(*lo).lo() : -kInf;
            const double h = hi ? enclose(*hi).hi() : kInf;
            program_.box.narrow(var, Interval(l, h));
            return;
        }
        place(to_pending(row));
    }

    void place(const PendingRow& row)
    {
        if (row.bound.is_empty()) {
            program_.box.mark_infeasible();
            return;
        }
        if (row.form.coeffs.empty()) {
            if (!row.bound.contains_zero()) {
                program_.box.mark_infeasible();
            }
            return;
        }
        if (row.form.coeffs.size() == 1) {
            const auto& [var, a] = *row.form.coeffs.begin();
            if (!a.contains_zero()) {
                program_.box.narrow(var, row.bound / a);
                return;
            }
        }
        program_.rows.push_back(Row{row.form, row.bound});
    }

    void harvest_operands()
    {
        std::map<NodeId, bool> seen;
        const auto& nodes = model_.nodes();
        for (NodeId id = 0; id < nodes.size(); ++id) {
            const ExprNode& n = nodes[id];
            if (n.kind == NodeKind::comparison || forms_.interval(id)) {
                continue;
            }
            for (NodeId operand : n.operands) {
                if (seen[operand]) {
                    continue;
                }
                seen[operand] = true;
                const Interval& enc = model_.node(operand).enclosure;
                if (enc.is_empty()) {
                    program_.box.mark_infeasible();
                    continue;
                }
                if (enc.lo() == -kInf && enc.hi() == kInf) {
                    continue;
                }
                const auto form = forms_.form(operand);
                if (!form || form->is_constant()) {
                    continue;
                }
                PendingRow row{*form, enc - form->constant};
                row.form.constant = Interval(0.0);
                place(row);
            }
        }
    }

    const Model& model_;
    FormBuilder forms_;
    IntervalLinearProgram program_;
};

} // namespace

std::optional<LinearForm> linear_form_of(const Model& model, NodeId id)
{
    FormBuilder builder(model);
    return builder.form(id);
}

IntervalLinearProgram relax(const Model& model)
{
    Relaxer relaxer(model);
    return relaxer.run();
}

} // namespace unilin
