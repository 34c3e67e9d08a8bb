/**@file   rounding.cpp
 * @brief  Closed forms of the lattice rounding rules
 */
#include "deltadb/rounding.hpp"

#include "deltadb/errors.hpp"

namespace deltadb {

std::string_view to_string(ConstraintOrigin o) {
    switch (o) {
    case ConstraintOrigin::ObjectiveChild: return "objective";
    case ConstraintOrigin::LinkingRowChild: return "linking";
    case ConstraintOrigin::UserCut: return "user";
    }
    return "?";
}

Rational LocalConstraint::lhs(std::span<const Rational> x, std::span<const Rational> y) const {
    if (x.size() != u.size() || y.size() != w.size())
        throw DomainError("LocalConstraint: point dimension mismatch");
    Rational s;
    for (std::size_t j = 0; j < u.size(); ++j)
        if (u[j] != 0)
            s += Rational(u[j]) * x[j];
    for (std::size_t j = 0; j < w.size(); ++j)
        if (w[j] != 0)
            s += Rational(w[j]) * y[j];
    return s;
}

bool LocalConstraint::holds_at(std::span<const Rational> x, std::span<const Rational> y) const {
    const Rational v = lhs(x, y);
    return sense == Sense::Ge ? v >= rhs : v <= rhs;
}

RatVector LocalConstraint::stacked() const {
    RatVector out;
    out.reserve(u.size() + w.size());
    for (const auto& v : u)
        out.emplace_back(v);
    for (const auto& v : w)
        out.emplace_back(v);
    return out;
}

std::string LocalConstraint::str() const {
    std::string out;
    auto term = [&](const Integer& coef, const char* var, std::size_t idx) {
        if (coef == 0)
            return;
        const bool neg = coef < 0;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        const Integer mag = ::abs(coef);
        if (mag != 1)
            out += mag.get_str() + "*";
        out += var + std::to_string(idx);
    };
    for (std::size_t j = 0; j < u.size(); ++j)
        term(u[j], "x", j);
    for (std::size_t j = 0; j < w.size(); ++j)
        term(w[j], "y", j);
    if (out.empty())
        out = "0";
    return out + (sense == Sense::Ge ? " >= " : " <= ") + rhs.str();
}

namespace {

void require_delta(const Integer& delta) {
    if (delta < 1)
        throw DomainError("delta must be a positive integer");
}

LocalConstraint make(std::vector<Integer> u, std::vector<Integer> w, Sense s, Rational rhs) {
    LocalConstraint c;
    c.u = std::move(u);
    c.w = std::move(w);
    c.sense = s;
    c.rhs = std::move(rhs);
    return c;
}

}  // namespace

LocalConstraint round_strict_greater(std::vector<Integer> u, std::vector<Integer> w, const Rational& gamma,
                                     const Integer& delta) {
    require_delta(delta);
    const Integer fl = (Rational(delta) * gamma).floor();
    return make(std::move(u), std::move(w), Sense::Ge, Rational(fl + 1, delta));
}

LocalConstraint round_strict_less(std::vector<Integer> u, std::vector<Integer> w, const Rational& gamma,
                                  const Integer& delta) {
    require_delta(delta);
    const Integer ce = (Rational(delta) * gamma).ceil();
    return make(std::move(u), std::move(w), Sense::Le, Rational(ce - 1, delta));
}

LocalConstraint strengthen_geq(std::vector<Integer> u, std::vector<Integer> w, const Rational& gamma,
                               const Integer& delta) {
    require_delta(delta);
    const Integer ce = (Rational(delta) * gamma).ceil();
    return make(std::move(u), std::move(w), Sense::Ge, Rational(ce, delta));
}

LocalConstraint epsilon_strict_less(std::vector<Integer> u, std::vector<Integer> w, const Rational& gamma,
                                    const Rational& epsilon) {
    if (epsilon.sign() <= 0)
        throw DomainError("epsilon must be positive");
    return make(std::move(u), std::move(w), Sense::Le, gamma - epsilon);
}

LocalConstraint plain_geq(std::vector<Integer> u, std::vector<Integer> w, const Rational& gamma) {
    return make(std::move(u), std::move(w), Sense::Ge, gamma);
}

bool consistency_check_splitfree(std::span<const Integer> v, const Integer& gamma_int, const Integer& delta,
                                 std::span<const RatVector> points) {
    require_delta(delta);
    const Rational lo(gamma_int), hi(gamma_int + 1);
    for (const auto& p : points) {
        if (p.size() != v.size())
            throw DomainError("consistency_check_splitfree: point dimension mismatch");
        Rational s;
        for (std::size_t j = 0; j < v.size(); ++j)
            s += Rational(v[j]) * p[j];
        if (lo < s && s < hi)
            return false;
    }
    return true;
}

}  // namespace deltadb
