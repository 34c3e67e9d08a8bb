/**@file   test_decbranch.cpp
 * @brief  Decomposition Branching: worked example, exactness against the baseline and trace invariants
 */
#include <doctest.h>

#include <string>
#include <vector>

#include "deltadb/bnb.hpp"
#include "deltadb/decbranch.hpp"
#include "deltadb/errors.hpp"
#include "deltadb/generator.hpp"
#include "deltadb/model.hpp"
#include "support.hpp"

using namespace deltadb;
using namespace deltadb::testing;

namespace {

const std::string kDir = DELTADB_INSTANCE_DIR;

Rational q(const char* s) { return Rational::parse(s); }

DbConfig delta_cfg(std::optional<Integer> d = std::nullopt, bool trace = true) {
    DbConfig c;
    c.variant = DeltaDB{d};
    c.trace = trace;
    return c;
}

DbConfig eps_cfg(const char* eps, bool trace = true) {
    DbConfig c;
    c.variant = EpsilonDB{q(eps)};
    c.trace = trace;
    return c;
}

DecomposedMip cfl(std::size_t mu, std::size_t eta, std::uint64_t seed) {
    GenSpec g;
    g.model = ModelKind::CFL;
    g.mu = mu;
    g.eta = eta;
    g.seed = seed;
    return generate(g);
}

DecomposedMip cls(std::size_t eta, std::uint64_t seed) {
    GenSpec g;
    g.model = ModelKind::CLS;
    g.eta = eta;
    g.seed = seed;
    return generate(g);
}

// Small instances every variant finishes within the default limits.
std::vector<DecomposedMip> small_instances() {
    std::vector<DecomposedMip> out{load(kDir + "/eq12.dmip")};
    for (std::uint64_t s = 1; s <= 4; ++s)
        out.push_back(cfl(4, 2, s));
    for (std::uint64_t s = 1; s <= 3; ++s)
        out.push_back(cls(3, s));
    return out;
}

}  // namespace

TEST_CASE("worked example: Delta-DB with Delta = 3 branches once and proves the optimum") {
    const DecomposedMip m = load(kDir + "/eq12.dmip");
    const SolveReport r = solve_db(m, delta_cfg(Integer(3)));
    REQUIRE(r.state == DbState::FinishedOpt);
    CHECK(*r.value == 1);
    CHECK(*r.incumbent == RatVector{q("1/3"), q("2/3"), 1, 0});
    CHECK(r.nodes == 2);
    CHECK(r.delta->delta == 3);
    CHECK(r.delta->provenance == DeltaProvenance::UserSupplied);

    REQUIRE(r.trace.size() == 2);
    const TraceEvent& root = r.trace[0];
    CHECK(root.action == NodeAction::Branch);
    CHECK(*root.branch_block == 0);
    CHECK(*root.lp_value == q("1/5"));
    CHECK(root.lp_solution == RatVector{q("3/5"), q("2/5"), q("1/5"), 0});
    // The block-0 subproblem is infeasible: only the linking child x1 <= 1/3.
    const TraceEvent& child = r.trace[1];
    CHECK(*child.parent == root.id);
    CHECK(child.added->sense == Sense::Le);
    CHECK(child.added->rhs == q("1/3"));
    CHECK(child.added->origin == ConstraintOrigin::LinkingRowChild);
    CHECK(*child.lp_value == 1);
    CHECK(child.action == NodeAction::PruneOpt);
}

TEST_CASE("worked example: the stored delta resolves without configuration") {
    const DecomposedMip m = load(kDir + "/eq12.dmip");
    const SolveReport r = solve_db(m, delta_cfg());
    CHECK(r.delta->delta == 3);
    CHECK(r.delta->provenance == DeltaProvenance::UserSupplied);
    CHECK(*r.value == 1);
}

TEST_CASE("worked example: a coarse epsilon skips the optimum") {
    const DecomposedMip m = load(kDir + "/eq12.dmip");
    const SolveReport coarse = solve_db(m, eps_cfg("1/10"));
    CHECK(coarse.state == DbState::FinishedNoSol);
    CHECK_FALSE(coarse.incumbent);
    CHECK_FALSE(coarse.value);

    std::vector<Rational> steps;
    for (const auto& e : coarse.trace)
        if (e.added && e.added->origin == ConstraintOrigin::LinkingRowChild && e.added->block == 0)
            steps.push_back(e.added->rhs);
    CHECK(steps == std::vector<Rational>{q("1/2"), q("2/5"), q("3/10")});

    // 3/5 - 10 * 4/150 = 1/3 reaches the optimal x1 exactly.
    const SolveReport fine = solve_db(m, eps_cfg("4/150"));
    REQUIRE(fine.state == DbState::FinishedOpt);
    CHECK(*fine.value == 1);
    std::size_t children = 0;
    for (const auto& e : fine.trace)
        children += e.added && e.added->origin == ConstraintOrigin::LinkingRowChild;
    CHECK(children == 10);
}

TEST_CASE("resolve_delta: configuration, stored value, closed form, refusal") {
    DecomposedMip m = load(kDir + "/eq12.dmip");
    const DeltaInfo user = resolve_delta(m, delta_cfg(Integer(2)));
    CHECK(user.delta == 2);
    CHECK(user.provenance == DeltaProvenance::UserSupplied);

    GenSpec g;
    g.model = ModelKind::MISL;
    g.mu = 4;
    g.eta = 2;
    DecomposedMip misl = generate(g);
    misl.delta.reset();
    misl.meta["a"] = {2, 3, 4, 5};
    const DeltaInfo theorem = resolve_delta(misl, delta_cfg());
    CHECK(theorem.delta == 60);
    CHECK(theorem.provenance == DeltaProvenance::TheoremMISL);

    // Small enough for brute force on the continuous columns.
    m.delta.reset();
    m.meta = nlohmann::json::object();
    CHECK(resolve_delta(m, delta_cfg()).provenance == DeltaProvenance::BruteForceMinimal);
    CHECK(resolve_delta(m, delta_cfg()).delta == 3);

    DecomposedMip big = cfl(12, 6, 1);
    big.delta.reset();
    big.meta = nlohmann::json::object();
    try {
        resolve_delta(big, delta_cfg());
        FAIL("expected a refusal");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("cannot resolve") != std::string::npos);
    }

    CHECK_THROWS_AS(solve_db(m, delta_cfg(Integer(0))), DomainError);
    CHECK_THROWS_AS(solve_db(m, eps_cfg("0")), DomainError);
}

TEST_CASE("normalized linking rows") {
    GenSpec g;
    g.model = ModelKind::CFL;
    g.mu = 2;
    g.eta = 2;
    const DecomposedMip m = generate(g);
    const auto rows = normalized_linking_rows(m);
    REQUIRE(rows.size() == m.linking_rows.size());
    for (const auto& r : rows) {
        // "<=" rows are negated into ">=".
        CHECK(m.senses[r.source_row] == Sense::Le);
        CHECK(r.rhs == Rational(-m.g[r.source_row]));
    }
}

TEST_CASE("node limit stops the search") {
    const DecomposedMip m = load(kDir + "/eq12.dmip");
    DbConfig c = delta_cfg(Integer(3), false);
    c.node_limit = 1;
    const SolveReport r = solve_db(m, c);
    CHECK(r.state == DbState::NodeLimit);
    CHECK(r.nodes == 1);
    CHECK(r.trace.empty());
}

TEST_CASE("property: Delta-DB with the exact Delta finds the baseline optimum") {
    for (const auto& m : small_instances()) {
        const MipOutcome oracle = solve_mip(m.lp_relaxation(), m.integer_columns());
        REQUIRE(oracle.status == MipStatus::Optimal);
        const SolveReport r = solve_db(m, delta_cfg(std::nullopt, false));
        CAPTURE(m.name);
        REQUIRE(r.state == DbState::FinishedOpt);
        CHECK(*r.value == *oracle.value);
        CHECK(check_feasible(m, *r.incumbent));
        CHECK(dot(m.lp_relaxation().objective, *r.incumbent) == *r.value);
    }
}

TEST_CASE("property: epsilon DB never claims a value below the optimum") {
    for (const auto& m : small_instances()) {
        const MipOutcome oracle = solve_mip(m.lp_relaxation(), m.integer_columns());
        const SolveReport r = solve_db(m, eps_cfg("1/10", false));
        CAPTURE(m.name);
        REQUIRE(r.state != DbState::TimeLimit);
        if (r.state == DbState::FinishedNoSol) {
            CHECK_FALSE(r.incumbent);
            continue;
        }
        CHECK(*r.value >= *oracle.value);
        CHECK(check_feasible(m, *r.incumbent));
    }
}

TEST_CASE("property: branching rows tighten monotonically and cut the parent solution") {
    for (const auto& m : small_instances()) {
        CAPTURE(m.name);
        for (const DbConfig& c : {delta_cfg(), eps_cfg("1/10")}) {
            const SolveReport r = solve_db(m, c);
            CHECK(r.trace.size() == r.nodes);
            const auto mono = monotonicity_violation(r);
            CHECK_MESSAGE(!mono, mono.value_or(""));
            const auto cut = cut_violation(r, m.num_x());
            CHECK_MESSAGE(!cut, cut.value_or(""));
        }
    }
}

TEST_CASE("property: Delta-DB never cuts off a lattice optimum") {
    for (const auto& m : small_instances()) {
        CAPTURE(m.name);
        const MipOutcome oracle = solve_mip(m.lp_relaxation(), m.integer_columns());
        const RatVector point = lattice_optimum(m, *oracle.incumbent);
        const SolveReport r = solve_db(m, delta_cfg());
        REQUIRE(r.state == DbState::FinishedOpt);
        const auto v = lattice_preservation_violation(r, point, m.num_x());
        CHECK_MESSAGE(!v, v.value_or(""));
    }
}

TEST_CASE("property: runs are reproducible") {
    const DecomposedMip m = cfl(4, 2, 2);
    for (const DbConfig& c : {delta_cfg(), eps_cfg("1/10")}) {
        const SolveReport a = solve_db(m, c), b = solve_db(m, c);
        CHECK(a.trace_text() == b.trace_text());
        CHECK(a.nodes == b.nodes);
        CHECK(a.value == b.value);
        CHECK(a.incumbent == b.incumbent);
    }
}
