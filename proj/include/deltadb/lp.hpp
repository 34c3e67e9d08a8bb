/**@file   lp.hpp
 * @brief  Exact rational LP: min { c'z | Mz (>=,<=,=) b, z >= 0 }
 */
#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "deltadb/rat_matrix.hpp"
#include "deltadb/rational.hpp"

namespace deltadb {

enum class Sense { Ge, Le, Eq };

std::string_view to_string(Sense s);
/// Accepts ">=", "<=", "=".
Sense parse_sense(std::string_view text);

/// All variables are implicitly nonnegative.
struct LpProblem {
    RatVector objective;
    RatMatrix constraints;
    RatVector rhs;
    std::vector<Sense> senses;

    LpProblem() = default;
    explicit LpProblem(RatVector obj) : objective(std::move(obj)), constraints(0, objective.size()) {}

    std::size_t num_vars() const { return objective.size(); }
    std::size_t num_rows() const { return rhs.size(); }

    void add_row(std::span<const Rational> coeffs, Sense sense, Rational value);

    /// Throws DomainError on a dimension mismatch.
    void validate() const;

    /// Exact check of every row and of nonnegativity.
    bool is_feasible(std::span<const Rational> z) const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string_view to_string(LpStatus s);

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    RatVector solution;  ///< set iff Optimal; a basic feasible solution
    Rational value;      ///< set iff Optimal
};

/// Two-phase primal simplex, Dantzig pricing with a Bland fallback on degenerate runs.
/// Deterministic; never approximates.
LpOutcome solve_lp(const LpProblem& p);

/// All basic feasible solutions, deduplicated, in lexicographic order.
/// Refuses (CapExceededError) when num_vars > var_cap, throws InfeasibleError
/// on an empty region and UnboundedError on an unbounded one.
std::vector<RatVector> enumerate_vertices(const LpProblem& p, std::size_t var_cap = 8);

}  // namespace deltadb
