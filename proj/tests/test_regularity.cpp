/**@file   test_regularity.cpp
 * @brief  Minimal Delta-regularity, its bounds and the closed forms of the model families
 */
#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "deltadb/errors.hpp"
#include "deltadb/lp.hpp"
#include "deltadb/model.hpp"
#include "deltadb/regularity.hpp"

using namespace deltadb;

namespace {

const std::string kDir = DELTADB_INSTANCE_DIR;

RatMatrix mat(const char* name) { return load_matrix(kDir + "/" + name); }

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    subsets(n, k, 0, cur, out);
    return out;
}

// Oracle: the smallest D with D * R^{-1} integral is the denominator lcm of the
// rational inverse; the minimal Delta is the lcm of these over every nonsingular R.
Integer oracle_minimal_delta(const RatMatrix& a) {
    Integer delta = 1;
    for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k)
        for (const auto& rs : subsets(a.rows(), k))
            for (const auto& cs : subsets(a.cols(), k)) {
                const RatMatrix r = a.submatrix(rs, cs);
                if (det(r).is_zero())
                    continue;
                delta = lcm(delta, denominator_lcm(inverse(r)));
            }
    return delta;
}

// D * R^{-1} is integral for every nonsingular square submatrix R.
bool is_delta_regular(const RatMatrix& a, const Integer& d) {
    for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k)
        for (const auto& rs : subsets(a.rows(), k))
            for (const auto& cs : subsets(a.cols(), k)) {
                const RatMatrix r = a.submatrix(rs, cs);
                if (det(r).is_zero())
                    continue;
                const RatMatrix inv = inverse(r);
                for (const auto& e : inv.entries())
                    if (!(e * Rational(d)).is_integer())
                        return false;
            }
    return true;
}

RatMatrix random_matrix(std::mt19937_64& rng, int lo, int hi) {
    std::uniform_int_distribution<int> dim(1, 4), val(lo, hi);
    const std::size_t r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
    RatMatrix m(r, c);
    bool nonzero = false;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            m(i, j) = val(rng);
            nonzero = nonzero || !m(i, j).is_zero();
        }
    if (!nonzero)
        m(0, 0) = 1;
    return m;
}

bool divides(const Integer& a, const Integer& b) { return b % a == 0; }

}  // namespace

TEST_CASE("brute force golden values") {
    CHECK(brute_force_minimal_delta(mat("A1.mat")).delta == 5);
    CHECK(brute_force_minimal_delta(mat("A2.mat")).delta == 6);
    CHECK(brute_force_minimal_delta(mat("rounding_example.mat")).delta == 2);
    CHECK(brute_force_minimal_delta(mat("A5.mat")).delta == 2);
    CHECK(brute_force_minimal_delta(mat("A1.mat")).provenance == DeltaProvenance::BruteForceMinimal);
}

TEST_CASE("lower bound") {
    CHECK(lower_bound_delta(mat("A3.mat")) == 4);
    CHECK(lower_bound_delta(mat("A4.mat")) == 2);
    CHECK(lower_bound_delta(RatMatrix::from_rows({{1, 1}, {1, 1}})) == 1);
    CHECK_THROWS_AS(lower_bound_delta(RatMatrix(2, 2)), DomainError);
}

TEST_CASE("determinant-set bound") {
    CHECK(upper_bound_detset(mat("A3.mat")) == 20);
    CHECK(upper_bound_detset(mat("A4.mat")) == 2);
    CHECK(upper_bound_detset(RatMatrix::identity(3)) == 1);
    try {
        upper_bound_detset(RatMatrix::identity(7));
        FAIL("expected a cap refusal");
    } catch (const CapExceededError& e) {
        CHECK(std::string(e.what()).find("Hadamard") != std::string::npos);
    }
}

TEST_CASE("Hadamard bound") {
    CHECK(upper_bound_hadamard(mat("A3.mat")) == 60);
    CHECK(upper_bound_hadamard(mat("A4.mat")) == 2);
    CHECK(upper_bound_hadamard(mat("A5.mat")) == 27720);
}

TEST_CASE("non-square bound") {
    CHECK(upper_bound_nonsquare(mat("A5.mat")) == 12);
    CHECK(upper_bound_nonsquare(RatMatrix::from_rows({{1, 0}})) == 1);
    CHECK(upper_bound_nonsquare(RatMatrix::from_rows({{2}, {0}})) == 2);
    CHECK_THROWS_AS(upper_bound_nonsquare(mat("A3.mat")), DomainError);
}

TEST_CASE("brute force refuses above the work cap") {
    const RatMatrix a = mat("A5.mat");
    CHECK(count_square_submatrices(a) > 1);
    try {
        brute_force_minimal_delta(a, 1);
        FAIL("expected a cap refusal");
    } catch (const CapExceededError& e) {
        CHECK(std::string(e.what()).find(count_square_submatrices(a).get_str()) != std::string::npos);
    }
}

TEST_CASE("closed forms of the model families") {
    const std::vector<Integer> none, misl{2, 3, 4, 5}, cfl{2, 2, 2};
    CHECK(delta_for_model(ModelKind::CLS, none).delta == 1);
    CHECK(delta_for_model(ModelKind::CLS, none).provenance == DeltaProvenance::TheoremCLS);
    CHECK(delta_for_model(ModelKind::MISL, misl).delta == 60);
    CHECK(delta_for_model(ModelKind::CFL, cfl).delta == 2);
    CHECK(delta_for_model(ModelKind::CFL, cfl).provenance == DeltaProvenance::TheoremCFL);
    const std::vector<Integer> bad{2, 0};
    CHECK_THROWS_AS(delta_for_model(ModelKind::MISL, none), DomainError);
    CHECK_THROWS_AS(delta_for_model(ModelKind::MISL, bad), DomainError);
    CHECK(parse_model_kind("misl") == ModelKind::MISL);
    CHECK(parse_model_kind("CFL") == ModelKind::CFL);
    CHECK_THROWS_AS(parse_model_kind("knapsack"), DomainError);
}

TEST_CASE("model matrices") {
    CHECK(build_model_matrix(ModelKind::CLS, {1, 1}) == RatMatrix::from_rows({{1, -1, 1}, {-1, 1, -1}, {0, 0, -1}}));

    const std::vector<Integer> a1{4};
    const RatMatrix misl = build_model_matrix(ModelKind::MISL, {1, 1}, a1);
    // CLS rows plus one resource row on the production column.
    CHECK(misl.rows() == 4);
    CHECK(misl.cols() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(misl(i, j) == build_model_matrix(ModelKind::CLS, {1, 1})(i, j));
    CHECK(misl(3, 2) == -4);

    const std::vector<Integer> a2{3};
    const RatMatrix cfl = build_model_matrix(ModelKind::CFL, {1, 1}, a2);
    CHECK(cfl == RatMatrix::from_rows({{1}, {-1}, {-3}}));
    CHECK_THROWS_AS(build_model_matrix(ModelKind::MISL, {2, 1}, a1), DomainError);
}

TEST_CASE("MISL closed form matches brute force on the model matrix") {
    const std::vector<Integer> a{2, 3};
    const RatMatrix m = build_model_matrix(ModelKind::MISL, {2, 2}, a);
    CHECK(m.rows() == 3 * 2 * 2 + 2);
    CHECK(m.cols() == 2 * 2 * 2 + 2);
    CHECK(brute_force_minimal_delta(m).delta == 6);
}

TEST_CASE("property: closed forms are minimal on small model matrices") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> coef(1, 5);
    for (int k = 0; k < 12; ++k) {
        const std::size_t mu = 1 + static_cast<std::size_t>(k % 2), eta = 1 + static_cast<std::size_t>((k / 2) % 2);
        std::vector<Integer> a;
        for (std::size_t i = 0; i < mu; ++i)
            a.emplace_back(coef(rng));
        for (auto kind : {ModelKind::MISL, ModelKind::CFL}) {
            const RatMatrix m = build_model_matrix(kind, {mu, eta}, a);
            CHECK(brute_force_minimal_delta(m).delta == delta_for_model(kind, a).delta);
        }
    }
    for (std::size_t eta = 1; eta <= 3; ++eta)
        CHECK(brute_force_minimal_delta(build_model_matrix(ModelKind::CLS, {1, eta})).delta == 1);
}

TEST_CASE("property: brute force matches the rational-inverse oracle and is minimal") {
    std::mt19937_64 rng(404);
    for (int k = 0; k < 150; ++k) {
        const RatMatrix a = random_matrix(rng, -4, 4);
        const Integer d = brute_force_minimal_delta(a).delta;
        CHECK(d == oracle_minimal_delta(a));
        CHECK(is_delta_regular(a, d));
        // No proper divisor d/p works.
        Integer rest = d;
        for (Integer p = 2; p <= rest; ++p) {
            if (rest % p != 0)
                continue;
            CHECK_FALSE(is_delta_regular(a, d / p));
            while (rest % p == 0)
                rest /= p;
        }
    }
}

TEST_CASE("property: lower <= minimal <= detset <= Hadamard, as a divisibility chain") {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 300; ++k) {
        const RatMatrix a = random_matrix(rng, -3, 3);
        const Integer lo = lower_bound_delta(a);
        const Integer d = brute_force_minimal_delta(a).delta;
        const Integer ds = upper_bound_detset(a);
        const Integer h = upper_bound_hadamard(a);
        CHECK(divides(lo, d));
        CHECK(divides(d, ds));
        CHECK(divides(ds, h));
        CHECK(lo <= d);
        CHECK(d <= ds);
        CHECK(ds <= h);
        if (!a.is_square()) {
            CHECK(divides(ds, upper_bound_nonsquare(a)));
        }
    }
}

TEST_CASE("property: vertices of P(A, b) lie on the (1/Delta) lattice for random integral b") {
    std::mt19937_64 rng(57);
    std::uniform_int_distribution<int> rhs(-3, 12);
    int checked = 0;
    for (int k = 0; k < 120; ++k) {
        const RatMatrix a = random_matrix(rng, -3, 3);
        const Integer d = brute_force_minimal_delta(a).delta;
        LpProblem p(RatVector(a.cols()));
        for (std::size_t i = 0; i < a.rows(); ++i)
            p.add_row(a.row(i), Sense::Le, rhs(rng));
        std::vector<RatVector> verts;
        try {
            verts = enumerate_vertices(p);
        } catch (const InfeasibleError&) {
            continue;
        } catch (const UnboundedError&) {
            continue;
        }
        ++checked;
        for (const auto& v : verts)
            for (const auto& e : v)
                CHECK((e * Rational(d)).is_integer());
    }
    CHECK(checked > 20);
}

TEST_CASE("property: a Delta-regular matrix is also s*Delta-regular") {
    std::mt19937_64 rng(61);
    for (int k = 0; k < 60; ++k) {
        const RatMatrix a = random_matrix(rng, -3, 3);
        const Integer d = brute_force_minimal_delta(a).delta;
        CHECK(is_delta_regular(a, 2 * d));
        CHECK(is_delta_regular(a, 3 * d));
    }
}
