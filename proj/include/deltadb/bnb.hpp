/**@file   bnb.hpp
 * @brief  Exact depth-first branch-and-bound with single-variable dichotomy branching
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "deltadb/lp.hpp"
#include "deltadb/model.hpp"
#include "deltadb/rational.hpp"

namespace deltadb {

struct MipLimits {
    std::uint64_t node_limit = 1'000'000;
    double time_limit = 3600.0;  ///< seconds of wall time
};

enum class MipStatus { Optimal, Infeasible, NodeLimit, TimeLimit };

std::string_view to_string(MipStatus s);

struct MipOutcome {
    MipStatus status = MipStatus::Infeasible;
    std::optional<RatVector> incumbent;  ///< best solution found (always set if Optimal)
    std::optional<Rational> value;
    std::uint64_t nodes = 0;  ///< LP relaxations solved
};

/// min over p with the listed columns integral. Nodes are explored depth first,
/// branching on the lowest-index fractional column, the floor child first.
/// Throws UnboundedError if the root relaxation is unbounded.
MipOutcome solve_mip(const LpProblem& p, std::span<const std::size_t> integer_cols, const MipLimits& limits = {});

/// Exact check of all rows, nonnegativity and integrality marks of m at point = (x, y).
/// Throws DomainError if point has the wrong length.
bool check_feasible(const DecomposedMip& m, std::span<const Rational> point);

}  // namespace deltadb
