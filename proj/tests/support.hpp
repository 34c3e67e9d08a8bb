/**@file   support.hpp
 * @brief  Trace analysis and oracle helpers shared by the unit tests and the acceptance run
 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "deltadb/bnb.hpp"
#include "deltadb/decbranch.hpp"
#include "deltadb/model.hpp"

namespace deltadb::testing {

/// Nodes of a trace indexed by id, with the child lists.
struct TraceTree {
    std::map<std::uint64_t, const TraceEvent*> node;
    std::map<std::uint64_t, std::vector<std::uint64_t>> children;

    explicit TraceTree(const SolveReport& r) {
        for (const auto& e : r.trace) {
            node[e.id] = &e;
            if (e.parent)
                children[*e.parent].push_back(e.id);
        }
    }

    /// Constraints on the edges from the root to id, root side first.
    std::vector<LocalConstraint> path(std::uint64_t id) const {
        std::vector<LocalConstraint> out;
        for (const TraceEvent* e = node.at(id); e->parent; e = node.at(*e->parent))
            out.insert(out.begin(), *e->added);
        return out;
    }
};

inline bool holds(const LocalConstraint& c, const RatVector& z, std::size_t n) {
    const std::span<const Rational> all(z);
    return c.holds_at(all.subspan(0, n), all.subspan(n));
}

/// Along every root-to-node path, per (origin, block, row): linking-row
/// right-hand sides strictly decrease and objective right-hand sides strictly
/// increase. Returns a description of the first violation.
inline std::optional<std::string> monotonicity_violation(const SolveReport& r) {
    const TraceTree t(r);
    for (const auto& e : r.trace) {
        std::map<std::tuple<int, std::size_t, std::size_t>, Rational> last;
        for (const auto& c : t.path(e.id)) {
            const auto key = std::make_tuple(static_cast<int>(c.origin), c.block, c.row);
            if (auto it = last.find(key); it != last.end()) {
                const bool ok = c.sense == Sense::Le ? c.rhs < it->second : c.rhs > it->second;
                if (!ok)
                    return "node " + std::to_string(e.id) + ": " + c.str() + " after rhs " + it->second.str();
            }
            last[key] = c.rhs;
        }
    }
    return std::nullopt;
}

/// Every child constraint is violated by the parent's LP solution.
inline std::optional<std::string> cut_violation(const SolveReport& r, std::size_t n) {
    const TraceTree t(r);
    for (const auto& e : r.trace) {
        if (!e.parent)
            continue;
        const TraceEvent* p = t.node.at(*e.parent);
        if (holds(*e.added, p->lp_solution, n))
            return "node " + std::to_string(e.id) + ": " + e.added->str() + " holds at the parent LP solution";
    }
    return std::nullopt;
}

/// An optimal solution whose continuous part is a vertex for the fixed integer
/// part, hence a point of the (1/Delta) lattice.
inline RatVector lattice_optimum(const DecomposedMip& m, const RatVector& optimum) {
    LpProblem p = m.lp_relaxation();
    for (auto j : m.integer_columns()) {
        RatVector e(p.num_vars());
        e[j] = 1;
        p.add_row(e, Sense::Eq, optimum[j]);
    }
    const LpOutcome out = solve_lp(p);
    if (out.status != LpStatus::Optimal)
        throw std::runtime_error("lattice_optimum: fixed-integer LP not optimal");
    return out.solution;
}

/// The point is never cut off: every branched node containing it passes it to
/// some child, and no node containing it is pruned as infeasible. Requires a
/// trace of a run that was not interrupted.
inline std::optional<std::string> lattice_preservation_violation(const SolveReport& r, const RatVector& point,
                                                                 std::size_t n) {
    const TraceTree t(r);
    for (const auto& e : r.trace) {
        bool inside = true;
        for (const auto& c : t.path(e.id))
            inside = inside && holds(c, point, n);
        if (!inside)
            continue;
        if (e.action == NodeAction::PruneInfeas)
            return "node " + std::to_string(e.id) + " contains the lattice optimum but was pruned as infeasible";
        if (e.action != NodeAction::Branch)
            continue;
        bool kept = false;
        if (auto it = t.children.find(e.id); it != t.children.end())
            for (auto c : it->second)
                kept = kept || holds(*t.node.at(c)->added, point, n);
        if (!kept)
            return "node " + std::to_string(e.id) + " cuts the lattice optimum from all children";
    }
    return std::nullopt;
}

}  // namespace deltadb::testing
