/**@file   rounding.hpp
 * @brief  Lattice rounding of branching inequalities u'x + w'y (>, <, >=) gamma
 *
 * If A is Delta-regular, some optimal solution lies in (1/Delta) Z^{n+l}. For
 * integral u, w every such point has u'x + w'y in (1/Delta) Z, so a strict
 * inequality can be closed and a non-strict one tightened to the next multiple
 * of 1/Delta without losing that point.
 */
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "deltadb/lp.hpp"
#include "deltadb/rational.hpp"

namespace deltadb {

enum class ConstraintOrigin { ObjectiveChild, LinkingRowChild, UserCut };

std::string_view to_string(ConstraintOrigin o);

/// u'x + w'y (sense) rhs with sense in {Ge, Le}.
struct LocalConstraint {
    std::vector<Integer> u;  ///< over x columns
    std::vector<Integer> w;  ///< over y columns
    Sense sense = Sense::Ge;
    Rational rhs;
    ConstraintOrigin origin = ConstraintOrigin::UserCut;
    std::size_t row = 0;    ///< normalized linking row, for LinkingRowChild
    std::size_t block = 0;  ///< branching block, for ObjectiveChild and LinkingRowChild

    Rational lhs(std::span<const Rational> x, std::span<const Rational> y) const;
    bool holds_at(std::span<const Rational> x, std::span<const Rational> y) const;

    /// Coefficients over the stacked (x, y) vector.
    RatVector stacked() const;

    /// "u'x + w'y >= rhs" with sparse terms, for traces.
    std::string str() const;

    friend bool operator==(const LocalConstraint&, const LocalConstraint&) = default;
};

/// u'x + w'y > gamma  ->  >= (floor(Delta gamma) + 1) / Delta.
LocalConstraint round_strict_greater(std::vector<Integer> u, std::vector<Integer> w, const Rational& gamma,
                                     const Integer& delta);

/// u'x + w'y < gamma  ->  <= (ceil(Delta gamma) - 1) / Delta.
LocalConstraint round_strict_less(std::vector<Integer> u, std::vector<Integer> w, const Rational& gamma,
                                  const Integer& delta);

/// u'x + w'y >= gamma  ->  >= ceil(Delta gamma) / Delta.
LocalConstraint strengthen_geq(std::vector<Integer> u, std::vector<Integer> w, const Rational& gamma,
                               const Integer& delta);

/// u'x + w'y < gamma  ->  <= gamma - epsilon. Not lattice safe.
LocalConstraint epsilon_strict_less(std::vector<Integer> u, std::vector<Integer> w, const Rational& gamma,
                                    const Rational& epsilon);

/// u'x + w'y >= gamma, unchanged.
LocalConstraint plain_geq(std::vector<Integer> u, std::vector<Integer> w, const Rational& gamma);

/// True iff no point p satisfies gamma_int < v'p < gamma_int + 1, i.e. the split
/// {gamma <= v'x <= gamma + 1} is free of the given points. Points are expected in
/// (1/Delta) Z^n and v = Delta u for integral u; DomainError if delta < 1 or on a
/// dimension mismatch.
bool consistency_check_splitfree(std::span<const Integer> v, const Integer& gamma_int, const Integer& delta,
                                 std::span<const RatVector> points);

}  // namespace deltadb
