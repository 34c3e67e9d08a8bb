/**@file   bnb.cpp
 * @brief  Baseline exact branch-and-bound and exact feasibility checks
 */
#include "deltadb/bnb.hpp"

#include <algorithm>
#include <chrono>

#include "deltadb/errors.hpp"

namespace deltadb {

std::string_view to_string(MipStatus s) {
    switch (s) {
    case MipStatus::Optimal: return "Optimal";
    case MipStatus::Infeasible: return "Infeasible";
    case MipStatus::NodeLimit: return "NodeLimit";
    case MipStatus::TimeLimit: return "TimeLimit";
    }
    return "?";
}

namespace {

struct Bound {
    std::size_t col;
    bool upper;  ///< z_col <= value, else z_col >= value
    Integer value;
};

// At most one lower and one upper bound per column; a child's bound is always tighter.
std::vector<Bound> with_bound(const std::vector<Bound>& parent, Bound b) {
    std::vector<Bound> out;
    out.reserve(parent.size() + 1);
    for (const auto& e : parent)
        if (e.col != b.col || e.upper != b.upper)
            out.push_back(e);
    out.push_back(std::move(b));
    return out;
}

}  // namespace

MipOutcome solve_mip(const LpProblem& p, std::span<const std::size_t> integer_cols, const MipLimits& limits) {
    p.validate();
    for (auto j : integer_cols)
        if (j >= p.num_vars())
            throw DomainError("solve_mip: integer column out of range");

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

    MipOutcome out;
    std::vector<std::vector<Bound>> stack;
    stack.emplace_back();
    RatVector unit(p.num_vars());
    bool root = true;

    while (!stack.empty()) {
        if (out.nodes >= limits.node_limit) {
            out.status = MipStatus::NodeLimit;
            return out;
        }
        if (elapsed() > limits.time_limit) {
            out.status = MipStatus::TimeLimit;
            return out;
        }
        std::vector<Bound> bounds = std::move(stack.back());
        stack.pop_back();

        LpProblem node = p;
        for (const auto& b : bounds) {
            unit[b.col] = 1;
            node.add_row(unit, b.upper ? Sense::Le : Sense::Ge, Rational(b.value));
            unit[b.col] = 0;
        }
        LpOutcome lp = solve_lp(node);
        ++out.nodes;
        if (lp.status == LpStatus::Unbounded) {
            if (root)
                throw UnboundedError();
            throw InvariantViolation("bounded relaxation", "child relaxation unbounded");
        }
        root = false;
        if (lp.status == LpStatus::Infeasible)
            continue;
        if (out.value && lp.value >= *out.value)
            continue;

        auto frac = std::find_if(integer_cols.begin(), integer_cols.end(),
                                 [&](std::size_t j) { return !lp.solution[j].is_integer(); });
        if (frac == integer_cols.end()) {
            out.value = lp.value;
            out.incumbent = std::move(lp.solution);
            continue;
        }
        const std::size_t j = *frac;
        const Integer fl = lp.solution[j].floor();
        stack.push_back(with_bound(bounds, {j, false, fl + 1}));
        stack.push_back(with_bound(bounds, {j, true, fl}));
    }
    out.status = out.incumbent ? MipStatus::Optimal : MipStatus::Infeasible;
    return out;
}

bool check_feasible(const DecomposedMip& m, std::span<const Rational> point) {
    const std::size_t n = m.num_x(), l = m.num_y();
    if (point.size() != n + l)
        throw DomainError("check_feasible: point has length " + std::to_string(point.size()) + ", expected " +
                          std::to_string(n + l));
    for (const auto& v : point)
        if (v.sign() < 0)
            return false;
    for (auto j : m.integer_columns())
        if (!point[j].is_integer())
            return false;
    for (std::size_t i = 0; i < m.num_rows(); ++i) {
        Rational s;
        for (std::size_t j = 0; j < n; ++j)
            if (!m.A(i, j).is_zero())
                s += m.A(i, j) * point[j];
        for (std::size_t j = 0; j < l; ++j)
            if (!m.B(i, j).is_zero())
                s += m.B(i, j) * point[n + j];
        const Rational g(m.g[i]);
        const bool ok = m.senses[i] == Sense::Ge ? s >= g : (m.senses[i] == Sense::Le ? s <= g : s == g);
        if (!ok)
            return false;
    }
    return true;
}

}  // namespace deltadb
