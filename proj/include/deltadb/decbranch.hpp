/**@file   decbranch.hpp
 * @brief  Decomposition Branching with epsilon-reformulated or lattice-rounded branching rows
 *
 * At a node the LP relaxation is solved. If its integer columns are integral the node
 * is solved. Otherwise the blocks are scanned in index order; for each block with a
 * fractional integer column the branching subproblem is solved exactly: the block's own
 * rows, every linking row restricted to the block with right-hand side fixed at the
 * block's LP activity, and the node constraints of that block. If every subproblem
 * attains its block's LP value, the block optima form an optimal solution of the node.
 * Otherwise the first block q whose subproblem is infeasible or worse is branched on:
 *
 *     c_q'x_q + d_q'y_q >= z*_q   or   A_q^{row,j} x_q + B_q^{row,j} y_q < activity_j   (each j)
 *
 * DB closes the strict inequalities with a fixed epsilon, Delta-DB rounds them to the
 * lattice (1/Delta) Z and also rounds the objective row up.
 *
 * Linking rows are normalized to ">=": "<=" rows are negated, "=" rows contribute one
 * row per orientation. Children are explored depth first; the objective child (absent
 * when the subproblem is infeasible) is explored first, then the linking-row children
 * by ascending normalized row. A child whose branching row has no coefficient in
 * block q is infeasible and not generated.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "deltadb/lp.hpp"
#include "deltadb/model.hpp"
#include "deltadb/rational.hpp"
#include "deltadb/regularity.hpp"
#include "deltadb/rounding.hpp"

namespace deltadb {

struct EpsilonDB {
    Rational epsilon;
};

struct DeltaDB {
    std::optional<Integer> delta;  ///< nullopt resolves Delta from the instance
};

struct DbConfig {
    std::variant<EpsilonDB, DeltaDB> variant = DeltaDB{};
    std::uint64_t node_limit = 100'000;
    double time_limit = 60.0;  ///< seconds of wall time
    bool trace = false;
};

/// "delta(3)", "delta(auto)" or "eps(1/10)".
std::string variant_label(const DbConfig& cfg);

enum class DbState { TimeLimit, NodeLimit, FinishedOpt, FinishedNoSol };

/// "timelimit", "nodelimit", "finished_opt", "finished_nosol". finished_opt only claims
/// optimality; whether it holds is decided against an oracle by the harness.
std::string_view to_string(DbState s);

enum class NodeAction { Lp, PruneBound, PruneInfeas, PruneOpt, Branch };

std::string_view to_string(NodeAction a);

struct TraceEvent {
    std::uint64_t id = 0;
    std::optional<std::uint64_t> parent;
    std::size_t depth = 0;
    std::optional<LocalConstraint> added;  ///< constraint on the edge from the parent
    LpStatus lp_status = LpStatus::Infeasible;
    std::optional<Rational> lp_value;
    RatVector lp_solution;
    NodeAction action = NodeAction::Lp;
    std::optional<std::size_t> branch_block;

    /// "node <id> parent <id|-> action <action> value <lp value|->".
    std::string line() const;
};

struct SolveReport {
    DbState state = DbState::FinishedNoSol;
    std::optional<RatVector> incumbent;
    std::optional<Rational> value;
    std::uint64_t nodes = 0;
    std::uint64_t subproblem_solves = 0;
    double wall_time = 0.0;
    std::optional<DeltaInfo> delta;  ///< set for Delta-DB
    std::vector<TraceEvent> trace;   ///< set iff cfg.trace

    std::string trace_text() const;
};

/// Linking rows in ">=" form, as used by branching.
struct NormalizedRow {
    std::size_t source_row;
    RatVector coeffs;  ///< over (x, y)
    Rational rhs;
};

std::vector<NormalizedRow> normalized_linking_rows(const DecomposedMip& m);

/// Delta from cfg, else the instance delta, else the theorem for meta.model with meta.a,
/// else brute force on the continuous columns of A within the default cap.
/// Throws DomainError("cannot resolve Δ ...") if none applies.
DeltaInfo resolve_delta(const DecomposedMip& m, const DbConfig& cfg);

/// Throws UnboundedError if the root relaxation is unbounded.
SolveReport solve_db(const DecomposedMip& m, const DbConfig& cfg);

}  // namespace deltadb
