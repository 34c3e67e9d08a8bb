/**@file   decbranch.cpp
 * @brief  Node processing, branching subproblems and child generation
 */
#include "deltadb/decbranch.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <sstream>

#include "deltadb/bnb.hpp"
#include "deltadb/errors.hpp"

namespace deltadb {

std::string variant_label(const DbConfig& cfg) {
    if (const auto* e = std::get_if<EpsilonDB>(&cfg.variant))
        return "eps(" + e->epsilon.str() + ")";
    const auto& d = std::get<DeltaDB>(cfg.variant);
    return "delta(" + (d.delta ? d.delta->get_str() : std::string("auto")) + ")";
}

std::string_view to_string(DbState s) {
    switch (s) {
    case DbState::TimeLimit: return "timelimit";
    case DbState::NodeLimit: return "nodelimit";
    case DbState::FinishedOpt: return "finished_opt";
    case DbState::FinishedNoSol: return "finished_nosol";
    }
    return "?";
}

std::string_view to_string(NodeAction a) {
    switch (a) {
    case NodeAction::Lp: return "lp";
    case NodeAction::PruneBound: return "prune-bound";
    case NodeAction::PruneInfeas: return "prune-infeas";
    case NodeAction::PruneOpt: return "prune-opt";
    case NodeAction::Branch: return "branch";
    }
    return "?";
}

std::string TraceEvent::line() const {
    std::ostringstream os;
    os << "node " << id << " parent " << (parent ? std::to_string(*parent) : "-") << " action " << to_string(action);
    if (action == NodeAction::Branch && branch_block)
        os << " block=" << *branch_block;
    os << " value " << (lp_value ? lp_value->str() : "-");
    return os.str();
}

std::string SolveReport::trace_text() const {
    std::string out;
    for (const auto& e : trace)
        out += e.line() + "\n";
    return out;
}

std::vector<NormalizedRow> normalized_linking_rows(const DecomposedMip& m) {
    const std::size_t n = m.num_x(), l = m.num_y();
    std::vector<NormalizedRow> out;
    for (auto i : m.linking_rows) {
        RatVector row(n + l);
        for (std::size_t j = 0; j < n; ++j)
            row[j] = m.A(i, j);
        for (std::size_t j = 0; j < l; ++j)
            row[n + j] = m.B(i, j);
        const Rational g(m.g[i]);
        auto negated = [&] {
            RatVector r(row);
            for (auto& v : r)
                v = -v;
            return r;
        };
        switch (m.senses[i]) {
        case Sense::Ge: out.push_back({i, row, g}); break;
        case Sense::Le: out.push_back({i, negated(), -g}); break;
        case Sense::Eq:
            out.push_back({i, row, g});
            out.push_back({i, negated(), -g});
            break;
        }
    }
    return out;
}

DeltaInfo resolve_delta(const DecomposedMip& m, const DbConfig& cfg) {
    if (const auto* d = std::get_if<DeltaDB>(&cfg.variant); d && d->delta) {
        if (*d->delta < 1)
            throw DomainError("delta must be a positive integer");
        return {*d->delta, DeltaProvenance::UserSupplied};
    }
    if (m.delta)
        return {*m.delta, DeltaProvenance::UserSupplied};
    if (m.meta.contains("model") && m.meta["model"].is_string()) {
        const ModelKind kind = parse_model_kind(m.meta["model"].get<std::string>());
        std::vector<Integer> a;
        if (auto it = m.meta.find("a"); it != m.meta.end() && it->is_array())
            for (const auto& v : *it)
                if (v.is_number_integer())
                    a.emplace_back(std::to_string(v.get<std::int64_t>()));
        if (kind == ModelKind::CLS || !a.empty())
            return delta_for_model(kind, a);
    }
    std::vector<std::size_t> rows(m.num_rows()), cont;
    for (std::size_t i = 0; i < rows.size(); ++i)
        rows[i] = i;
    for (std::size_t j = 0; j < m.num_x(); ++j)
        if (std::find(m.integer_x.begin(), m.integer_x.end(), j) == m.integer_x.end())
            cont.push_back(j);
    try {
        return brute_force_minimal_delta(m.A.submatrix(rows, cont));
    } catch (const CapExceededError& e) {
        throw DomainError(std::string("cannot resolve Δ: no delta field, no model metadata, and ") + e.what());
    }
}

namespace {

using Clock = std::chrono::steady_clock;

struct OpenNode {
    std::optional<std::uint64_t> parent;
    std::size_t depth = 0;
    std::vector<LocalConstraint> locals;
    std::optional<LocalConstraint> added;
};

bool same_key(const LocalConstraint& a, const LocalConstraint& b) {
    return a.origin == b.origin && a.row == b.row && a.block == b.block && a.sense == b.sense &&
           a.origin != ConstraintOrigin::UserCut;
}

// Child constraint list: parent's list with a same-key constraint replaced.
// Replacement is only ever by a strictly tighter row.
std::vector<LocalConstraint> with_constraint(const std::vector<LocalConstraint>& parent, const LocalConstraint& c) {
    std::vector<LocalConstraint> out;
    out.reserve(parent.size() + 1);
    for (const auto& e : parent) {
        if (same_key(e, c)) {
            const bool tighter = c.sense == Sense::Ge ? c.rhs > e.rhs : c.rhs < e.rhs;
            if (!tighter)
                throw InvariantViolation("branching rows tighten", "child row " + c.str() + " does not tighten " + e.str());
            continue;
        }
        out.push_back(e);
    }
    out.push_back(c);
    return out;
}

class DbSolver {
public:
    DbSolver(const DecomposedMip& m, const DbConfig& cfg)
        : m_(m), cfg_(cfg), n_(m.num_x()), l_(m.num_y()), root_lp_(m.lp_relaxation()),
          integer_cols_(m.integer_columns()), linking_(normalized_linking_rows(m)), start_(Clock::now()) {
        is_integer_.assign(n_ + l_, false);
        for (auto j : integer_cols_)
            is_integer_[j] = true;
    }

    SolveReport run() {
        m_.validate();
        if (std::holds_alternative<DeltaDB>(cfg_.variant)) {
            report_.delta = resolve_delta(m_, cfg_);
            delta_ = report_.delta->delta;
        } else if (std::get<EpsilonDB>(cfg_.variant).epsilon.sign() <= 0) {
            throw DomainError("epsilon must be positive");
        }

        std::vector<OpenNode> stack;
        stack.push_back({});
        bool interrupted = false;
        while (!stack.empty()) {
            if (report_.nodes >= cfg_.node_limit) {
                report_.state = DbState::NodeLimit;
                interrupted = true;
                break;
            }
            if (elapsed() > cfg_.time_limit) {
                report_.state = DbState::TimeLimit;
                interrupted = true;
                break;
            }
            OpenNode node = std::move(stack.back());
            stack.pop_back();
            if (!process(std::move(node), stack)) {
                report_.state = DbState::TimeLimit;
                interrupted = true;
                break;
            }
        }
        if (!interrupted)
            report_.state = report_.incumbent ? DbState::FinishedOpt : DbState::FinishedNoSol;
        report_.wall_time = elapsed();
        return std::move(report_);
    }

private:
    double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

    bool is_delta() const { return delta_.has_value(); }

    // Returns false if a subproblem hit the time limit; the node is then left undecided.
    bool process(OpenNode node, std::vector<OpenNode>& stack) {
        const std::uint64_t id = ++report_.nodes;
        TraceEvent ev;
        ev.id = id;
        ev.parent = node.parent;
        ev.depth = node.depth;
        ev.added = node.added;

        LpProblem lp = root_lp_;
        for (const auto& c : node.locals)
            lp.add_row(c.stacked(), c.sense, c.rhs);
        LpOutcome out = solve_lp(lp);
        ev.lp_status = out.status;
        if (out.status == LpStatus::Unbounded) {
            if (id == 1)
                throw UnboundedError();
            throw InvariantViolation("bounded relaxation", "node relaxation unbounded");
        }
        if (out.status == LpStatus::Infeasible) {
            finish(ev, NodeAction::PruneInfeas);
            return true;
        }
        ev.lp_value = out.value;
        if (cfg_.trace)
            ev.lp_solution = out.solution;

        if (report_.value && out.value >= *report_.value) {
            finish(ev, NodeAction::PruneBound);
            return true;
        }
        if (integral(out.solution, integer_cols_)) {
            accept(out.solution, out.value);
            finish(ev, NodeAction::PruneOpt);
            return true;
        }

        RatVector assembled(n_ + l_);
        for (std::size_t q = 0; q < m_.num_blocks(); ++q) {
            const Block& b = m_.blocks[q];
            const Rational v_q = block_value(b, out.solution);
            if (block_integral(b, out.solution)) {
                copy_block(b, out.solution, assembled);
                continue;
            }
            const LpProblem sub_lp = subproblem(q, node.locals, out.solution);
            std::vector<std::size_t> sub_int;
            for (std::size_t t = 0; t < b.x_cols.size(); ++t)
                if (is_integer_[b.x_cols[t]])
                    sub_int.push_back(t);
            for (std::size_t t = 0; t < b.y_cols.size(); ++t)
                sub_int.push_back(b.x_cols.size() + t);
            const double remaining = cfg_.time_limit - elapsed();
            if (remaining <= 0) {
                finish(ev, NodeAction::Lp);
                return false;
            }
            ++report_.subproblem_solves;
            MipOutcome mo = solve_mip(sub_lp, sub_int, {std::numeric_limits<std::uint64_t>::max(), remaining});
            if (mo.status == MipStatus::TimeLimit || mo.status == MipStatus::NodeLimit) {
                finish(ev, NodeAction::Lp);
                return false;
            }
            if (mo.status == MipStatus::Optimal && *mo.value == v_q) {
                for (std::size_t t = 0; t < b.x_cols.size(); ++t)
                    assembled[b.x_cols[t]] = (*mo.incumbent)[t];
                for (std::size_t t = 0; t < b.y_cols.size(); ++t)
                    assembled[n_ + b.y_cols[t]] = (*mo.incumbent)[b.x_cols.size() + t];
                continue;
            }
            if (mo.status == MipStatus::Optimal && *mo.value < v_q)
                throw InvariantViolation("subproblem bound", "branching subproblem value below the block LP value");
            branch(q, node, id, out.solution, mo.status == MipStatus::Optimal ? mo.value : std::nullopt, stack);
            ev.branch_block = q;
            finish(ev, NodeAction::Branch);
            return true;
        }
        if (dot(root_lp_.objective, assembled) != out.value)
            throw InvariantViolation("block optima attain the node value", "assembled value differs from the LP value");
        accept(assembled, out.value);
        finish(ev, NodeAction::PruneOpt);
        return true;
    }

    void finish(TraceEvent& ev, NodeAction a) {
        ev.action = a;
        if (cfg_.trace)
            report_.trace.push_back(std::move(ev));
    }

    static bool integral(const RatVector& z, const std::vector<std::size_t>& cols) {
        return std::all_of(cols.begin(), cols.end(), [&](std::size_t j) { return z[j].is_integer(); });
    }

    bool block_integral(const Block& b, const RatVector& z) const {
        for (auto j : b.x_cols)
            if (is_integer_[j] && !z[j].is_integer())
                return false;
        for (auto j : b.y_cols)
            if (!z[n_ + j].is_integer())
                return false;
        return true;
    }

    Rational block_value(const Block& b, const RatVector& z) const {
        Rational v;
        for (auto j : b.x_cols)
            if (m_.c[j] != 0)
                v += Rational(m_.c[j]) * z[j];
        for (auto j : b.y_cols)
            if (m_.d[j] != 0)
                v += Rational(m_.d[j]) * z[n_ + j];
        return v;
    }

    void copy_block(const Block& b, const RatVector& from, RatVector& to) const {
        for (auto j : b.x_cols)
            to[j] = from[j];
        for (auto j : b.y_cols)
            to[n_ + j] = from[n_ + j];
    }

    // Coefficients of a stacked (x, y) row restricted to block b, in subproblem order.
    RatVector restrict(const Block& b, const RatVector& row) const {
        RatVector r;
        r.reserve(b.x_cols.size() + b.y_cols.size());
        for (auto j : b.x_cols)
            r.push_back(row[j]);
        for (auto j : b.y_cols)
            r.push_back(row[n_ + j]);
        return r;
    }

    bool supported_in(const Block& b, const LocalConstraint& c) const {
        std::vector<bool> in_x(n_, false), in_y(l_, false);
        for (auto j : b.x_cols)
            in_x[j] = true;
        for (auto j : b.y_cols)
            in_y[j] = true;
        for (std::size_t j = 0; j < n_; ++j)
            if (c.u[j] != 0 && !in_x[j])
                return false;
        for (std::size_t j = 0; j < l_; ++j)
            if (c.w[j] != 0 && !in_y[j])
                return false;
        return true;
    }

    static bool all_zero(const RatVector& r) {
        return std::all_of(r.begin(), r.end(), [](const Rational& v) { return v.is_zero(); });
    }

    // Block rows, linking rows fixed at the block's activity, and the node constraints of block q.
    LpProblem subproblem(std::size_t q, const std::vector<LocalConstraint>& locals, const RatVector& z) const {
        const Block& b = m_.blocks[q];
        RatVector obj;
        for (auto j : b.x_cols)
            obj.emplace_back(m_.c[j]);
        for (auto j : b.y_cols)
            obj.emplace_back(m_.d[j]);
        LpProblem p(std::move(obj));
        RatVector full(n_ + l_);
        for (auto i : b.rows) {
            for (std::size_t j = 0; j < n_; ++j)
                full[j] = m_.A(i, j);
            for (std::size_t j = 0; j < l_; ++j)
                full[n_ + j] = m_.B(i, j);
            p.add_row(restrict(b, full), m_.senses[i], Rational(m_.g[i]));
        }
        for (const auto& nr : linking_) {
            RatVector part = restrict(b, nr.coeffs);
            if (!all_zero(part))
                p.add_row(part, Sense::Ge, block_activity(b, nr.coeffs, z));
        }
        for (const auto& c : locals)
            if (supported_in(b, c))
                p.add_row(restrict(b, c.stacked()), c.sense, c.rhs);
        return p;
    }

    Rational block_activity(const Block& b, const RatVector& row, const RatVector& z) const {
        Rational act;
        for (auto j : b.x_cols)
            if (!row[j].is_zero())
                act += row[j] * z[j];
        for (auto j : b.y_cols)
            if (!row[n_ + j].is_zero())
                act += row[n_ + j] * z[n_ + j];
        return act;
    }

    void branch(std::size_t q, const OpenNode& node, std::uint64_t id, const RatVector& z,
                const std::optional<Rational>& z_star, std::vector<OpenNode>& stack) {
        const Block& b = m_.blocks[q];
        std::vector<LocalConstraint> children;

        if (z_star) {
            std::vector<Integer> u(n_, 0), w(l_, 0);
            for (auto j : b.x_cols)
                u[j] = m_.c[j];
            for (auto j : b.y_cols)
                w[j] = m_.d[j];
            LocalConstraint c = is_delta() ? strengthen_geq(std::move(u), std::move(w), *z_star, *delta_)
                                           : plain_geq(std::move(u), std::move(w), *z_star);
            c.origin = ConstraintOrigin::ObjectiveChild;
            c.block = q;
            children.push_back(std::move(c));
        }
        for (std::size_t j = 0; j < linking_.size(); ++j) {
            const RatVector& row = linking_[j].coeffs;
            std::vector<Integer> u(n_, 0), w(l_, 0);
            bool any = false;
            for (auto c : b.x_cols)
                if (!row[c].is_zero()) {
                    u[c] = row[c].num();
                    any = true;
                }
            for (auto c : b.y_cols)
                if (!row[n_ + c].is_zero()) {
                    w[c] = row[n_ + c].num();
                    any = true;
                }
            if (!any)
                continue;
            const Rational act = block_activity(b, row, z);
            LocalConstraint c = is_delta() ? round_strict_less(std::move(u), std::move(w), act, *delta_)
                                           : epsilon_strict_less(std::move(u), std::move(w), act,
                                                                 std::get<EpsilonDB>(cfg_.variant).epsilon);
            c.origin = ConstraintOrigin::LinkingRowChild;
            c.row = j;
            c.block = q;
            children.push_back(std::move(c));
        }
        // Pushed in reverse so that pops follow the order above.
        for (auto it = children.rbegin(); it != children.rend(); ++it)
            stack.push_back({id, node.depth + 1, with_constraint(node.locals, *it), *it});
    }

    void accept(const RatVector& z, const Rational& value) {
        if (report_.value && value >= *report_.value)
            return;
        if (!check_feasible(m_, z))
            throw InvariantViolation("incumbent feasible", "assembled solution violates the instance");
        report_.incumbent = z;
        report_.value = value;
    }

    const DecomposedMip& m_;
    const DbConfig& cfg_;
    const std::size_t n_, l_;
    const LpProblem root_lp_;
    const std::vector<std::size_t> integer_cols_;
    const std::vector<NormalizedRow> linking_;
    std::vector<bool> is_integer_;
    std::optional<Integer> delta_;
    Clock::time_point start_;
    SolveReport report_;
};

}  // namespace

SolveReport solve_db(const DecomposedMip& m, const DbConfig& cfg) { return DbSolver(m, cfg).run(); }

}  // namespace deltadb
