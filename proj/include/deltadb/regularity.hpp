/**@file   regularity.hpp
 * @brief  Minimal Delta-regularity of integer matrices: brute force, bounds, model theorems
 *
 * A rational matrix A is Delta-regular if Delta * R^{-1} is integral for every
 * nonsingular square submatrix R of A, and minimal Delta-regular if no smaller
 * positive integer has this property. Then every vertex of {x | Ax >= b, x >= 0}
 * with integral b lies in (1/Delta) Z^n.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "deltadb/rat_matrix.hpp"
#include "deltadb/rational.hpp"

namespace deltadb {

enum class DeltaProvenance {
    BruteForceMinimal,
    LowerBound,
    UpperBoundDetSet,
    UpperBoundHadamard,
    UpperBoundNonSquare,
    TheoremCLS,
    TheoremMISL,
    TheoremCFL,
    UserSupplied,
};

std::string_view to_string(DeltaProvenance p);

struct DeltaInfo {
    Integer delta;
    DeltaProvenance provenance;
};

enum class ModelKind { CLS, MISL, CFL };

std::string_view to_string(ModelKind k);
/// Case-insensitive "cls", "misl", "cfl".
ModelKind parse_model_kind(std::string_view text);

inline constexpr std::size_t kDetSetSizeCap = 6;
inline constexpr std::uint64_t kBruteForceWorkCap = 10'000'000;

/// lcm of |nonzero entries|; divides every valid Delta (1x1 submatrices).
/// Throws DomainError for an all-zero or non-integral matrix.
Integer lower_bound_delta(const RatMatrix& a);

/// lcm of |det R| over nonsingular square submatrices R. A is Delta-regular for the result.
/// Throws CapExceededError if min(m, n) > size_cap.
Integer upper_bound_detset(const RatMatrix& a, std::size_t size_cap = kDetSetSizeCap);

/// lcm{1, ..., floor(prod_i max(1, |a_i|_2))} over all rows a_i.
Integer upper_bound_hadamard(const RatMatrix& a);

/// lcm{1, ..., floor(max_i |a_i|_2 ^ n')} with n' = min(m, n), rows taken along the
/// longer dimension. Throws DomainError for square input.
Integer upper_bound_nonsquare(const RatMatrix& a);

/// Number of square submatrices after dropping zero rows and columns.
Integer count_square_submatrices(const RatMatrix& a);

/// lcm over nonsingular square submatrices R of the least D_R with D_R R^{-1} integral.
/// Throws CapExceededError (with the estimate) if count_square_submatrices(a) > work_cap.
DeltaInfo brute_force_minimal_delta(const RatMatrix& a, std::uint64_t work_cap = kBruteForceWorkCap);

/// CLS: 1. MISL, CFL: lcm(a). Throws DomainError if a is empty or has an entry < 1.
DeltaInfo delta_for_model(ModelKind kind, std::span<const Integer> a);

struct ModelDims {
    std::size_t mu = 1;   ///< items (CLS: ignored, MISL) or clients (CFL)
    std::size_t eta = 1;  ///< periods (CLS, MISL) or facilities (CFL)
};

/// Constraint matrix of the continuous variables in ">=" form, for fixed set-up variables.
///   CLS : (H I; -H -I; 0 -I) with H the eta x (eta+1) difference matrix, columns (s, x).
///   MISL: block-diagonal copies of the CLS rows per item plus resource rows (0 | -a^1 I ... -a^mu I).
///   CFL : (D; -D; C) with D the client demand rows and C(j, x^i_j) = -a^i, columns x^i_j at i*eta + j.
/// Throws DomainError for oversized dims or a missing coefficient vector.
RatMatrix build_model_matrix(ModelKind kind, ModelDims dims, std::span<const Integer> a = {});

}  // namespace deltadb
