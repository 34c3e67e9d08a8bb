/**@file   generator.hpp
 * @brief  Seeded lot-sizing (CLS, MISL) and facility-location (CFL) instances
 *
 * MISL, per item i and period t (initial stock zero, so s_0 is not a column):
 *     s_{t-1} - s_t + x_t = d_t,   x_t - c_t y_t <= 0,   y_t <= 1      (block i)
 *     sum_i a^i x^i_t + b^i y^i_t <= r_t                                (linking, per t)
 * Columns of item i: x = (s_1..s_eta, x_1..x_eta), y = (y_1..y_eta).
 * CLS is the single-item case without resource rows.
 *
 * CFL, clients i and facilities j, columns x^i_j at i*eta + j:
 *     sum_j x^i_j = 1                                                   (block i)
 *     sum_j r_j y_j >= sum_i a^i,   y_j <= 1                            (block mu)
 *     sum_i a^i x^i_j - r_j y_j <= 0                                    (linking, per j)
 * floor(mu/2) clients are single sourced: their x columns are integer.
 *
 * Random integers are drawn as lo + (r mod (hi - lo + 1)) from std::mt19937_64.
 */
#pragma once

#include <cstddef>
#include <cstdint>

#include "deltadb/model.hpp"
#include "deltadb/regularity.hpp"

namespace deltadb {

struct IntRange {
    std::int64_t lo;
    std::int64_t hi;
};

struct GenSpec {
    ModelKind model = ModelKind::MISL;
    std::size_t mu = 2;   ///< items (CLS: forced to 1) or clients
    std::size_t eta = 3;  ///< periods or facilities
    std::uint64_t seed = 1;

    IntRange a{2, 5};           ///< resource use per unit (MISL) or client demand (CFL)
    IntRange b{1, 5};           ///< resource use per set-up (MISL)
    IntRange h{1, 10};          ///< holding cost (CLS, MISL)
    IntRange p{1, 10};          ///< unit production cost
    IntRange q{1, 100};         ///< set-up cost
    IntRange d{1, 10};          ///< demand per period
    Rational resource_factor{3, 2};  ///< r_t = ceil(factor * max_t sum_i a^i d^i_t)
    IntRange transport{1, 50};       ///< CFL h^i_j
    IntRange fixed{10, 200};         ///< CFL c_j
    Rational capacity_factor{13, 10};  ///< CFL: sum_j r_j >= ceil(factor * sum_i a^i)

    std::size_t max_retries = 50;
    std::uint64_t probe_node_limit = 20'000;
};

/// A validated, feasible instance with meta {model, seed, mu, eta, a, ranges} and
/// delta = lcm(a) (MISL, CFL) or 1 (CLS). Infeasible draws are resampled from the same
/// stream; throws std::runtime_error once max_retries draws have failed.
DecomposedMip generate(const GenSpec& spec);

}  // namespace deltadb
