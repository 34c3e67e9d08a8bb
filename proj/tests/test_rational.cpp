/**@file   test_rational.cpp
 * @brief  Exact scalars, gcd/lcm and dense rational matrices
 */
#include <doctest.h>

#include <random>
#include <vector>

#include "deltadb/errors.hpp"
#include "deltadb/rat_matrix.hpp"
#include "deltadb/rational.hpp"

using namespace deltadb;

namespace {

// Independent oracle: Laplace expansion along the first row.
Rational cofactor_det(const RatMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    if (n == 1)
        return m(0, 0);
    Rational total;
    for (std::size_t c = 0; c < n; ++c) {
        if (m(0, c).is_zero())
            continue;
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 1; i < n; ++i)
            rows.push_back(i);
        for (std::size_t j = 0; j < n; ++j)
            if (j != c)
                cols.push_back(j);
        const Rational minor = cofactor_det(m.submatrix(rows, cols));
        total += (c % 2 == 0 ? m(0, c) : -m(0, c)) * minor;
    }
    return total;
}

RatMatrix random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    RatMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = dist(rng);
    return m;
}

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 97);
    return Rational(Integer(num(rng)), Integer(den(rng)));
}

}  // namespace

TEST_CASE("rational values are kept in lowest terms with a positive denominator") {
    const Rational r(Integer(6), Integer(-4));
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(r.str() == "-3/2");
    CHECK(Rational(Integer(8), Integer(4)).str() == "2");
    CHECK(Rational(0).str() == "0");
    CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), DomainError);
}

TEST_CASE("rational text round trip") {
    CHECK(Rational::parse("-91/10") == Rational(Integer(-91), Integer(10)));
    CHECK(Rational::parse("12/4").str() == "3");
    CHECK(Rational::parse("7") == Rational(7));
    CHECK_THROWS_AS(Rational::parse("1/0"), DomainError);
    CHECK_THROWS_AS(Rational::parse("abc"), DomainError);
    CHECK_THROWS_AS(Rational::parse(""), DomainError);
}

TEST_CASE("floor and ceil round toward the correct integers") {
    CHECK(Rational::parse("91/10").floor() == 9);
    CHECK(Rational::parse("91/10").ceil() == 10);
    CHECK(Rational::parse("-91/10").floor() == -10);
    CHECK(Rational::parse("-91/10").ceil() == -9);
    CHECK(Rational(4).floor() == 4);
    CHECK(Rational(4).ceil() == 4);
}

TEST_CASE("arithmetic round trips are exact") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 500; ++k) {
        const Rational a = random_rational(rng), b = random_rational(rng);
        CHECK((a + b) - b == a);
        if (!b.is_zero()) {
            CHECK((a * b) / b == a);
        }
        CHECK(gcd(abs(a.num()), a.den()) == 1);
        CHECK(a.den() > 0);
    }
    CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);
}

TEST_CASE("lcm_all") {
    const std::vector<Integer> s1{1, 4, 5}, s2{1}, s3{2, 3, 4, 5}, s4{-4, 6};
    CHECK(lcm_all(s1) == 20);
    CHECK(lcm_all(s2) == 1);
    CHECK(lcm_all(s3) == 60);
    CHECK(lcm_all(s4) == 12);
    const std::vector<Integer> empty, zero{3, 0};
    CHECK_THROWS_AS(lcm_all(empty), DomainError);
    CHECK_THROWS_AS(lcm_all(zero), DomainError);
}

TEST_CASE("lcm_up_to and isqrt") {
    CHECK(lcm_up_to(1) == 1);
    CHECK(lcm_up_to(4) == 12);
    CHECK(lcm_up_to(5) == 60);
    CHECK(lcm_up_to(11) == 27720);
    for (long v = 0; v < 2000; ++v) {
        const Integer r = isqrt(v);
        CHECK(r * r <= v);
        CHECK((r + 1) * (r + 1) > v);
    }
}

TEST_CASE("determinant examples") {
    CHECK(det(RatMatrix::from_rows({{1, 1}, {-1, 4}})) == 5);
    CHECK(det(RatMatrix::identity(3)) == 1);
    CHECK(det(RatMatrix::from_rows({{1, 1}, {0, 2}})) == 2);
    CHECK(det(RatMatrix::from_rows({{Rational::parse("1/2"), 1}, {1, 4}})) == 1);
    CHECK_THROWS_AS(det(RatMatrix(2, 3)), DomainError);
}

TEST_CASE("inverse examples") {
    CHECK(inverse(RatMatrix::identity(3)) == RatMatrix::identity(3));
    CHECK(inverse(RatMatrix::from_rows({{2}})) == RatMatrix::from_rows({{Rational::parse("1/2")}}));
    const RatMatrix a = RatMatrix::from_rows({{1, 1}, {-1, 4}});
    const RatMatrix expected = RatMatrix::from_rows({{Rational::parse("4/5"), Rational::parse("-1/5")},
                                                     {Rational::parse("1/5"), Rational::parse("1/5")}});
    CHECK(inverse(a) == expected);
    CHECK(a * inverse(a) == RatMatrix::identity(2));
    CHECK_THROWS_AS(inverse(RatMatrix::from_rows({{1, 2}, {2, 4}})), SingularMatrixError);
    CHECK_THROWS_AS(inverse(RatMatrix(2, 3)), DomainError);
}

TEST_CASE("denominator_lcm examples") {
    CHECK(denominator_lcm(inverse(RatMatrix::from_rows({{1, 1}, {-1, 4}}))) == 5);
    CHECK(denominator_lcm(RatMatrix::from_rows({{1, 2}, {3, 4}})) == 1);
    CHECK(denominator_lcm(RatMatrix::from_rows({{Rational::parse("1/2"), Rational::parse("1/3")}})) == 6);
}

TEST_CASE("property: elimination determinant equals cofactor expansion") {
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 400; ++k) {
        const std::size_t n = 1 + k % 4;
        const RatMatrix m = random_int_matrix(rng, n, n, -5, 5);
        CHECK(det(m) == cofactor_det(m));
    }
}

TEST_CASE("property: inverse is exact and its denominators divide the determinant") {
    std::mt19937_64 rng(77);
    int checked = 0;
    for (int k = 0; k < 400; ++k) {
        const std::size_t n = 1 + k % 4;
        const RatMatrix m = random_int_matrix(rng, n, n, -5, 5);
        const Rational d = det(m);
        if (d.is_zero()) {
            CHECK_THROWS_AS(inverse(m), SingularMatrixError);
            continue;
        }
        const RatMatrix inv = inverse(m);
        CHECK(m * inv == RatMatrix::identity(n));
        CHECK(d.num() % denominator_lcm(inv) == 0);
        ++checked;
    }
    CHECK(checked > 200);
}

TEST_CASE("solve_linear agrees with the inverse") {
    const RatMatrix a = RatMatrix::from_rows({{1, 1}, {-1, 4}});
    const std::vector<Rational> b{3, 2};
    const auto x = solve_linear(a, b);
    REQUIRE(x);
    CHECK((*x)[0] == Rational::parse("2"));
    CHECK((*x)[1] == Rational::parse("1"));
    CHECK_FALSE(solve_linear(RatMatrix::from_rows({{1, 2}, {2, 4}}), b));
}

TEST_CASE("submatrix and transpose keep entries exactly") {
    const RatMatrix a = RatMatrix::from_rows({{1, 2, 3}, {4, 5, Rational::parse("-7/3")}});
    const std::vector<std::size_t> rows{1}, cols{0, 2};
    const RatMatrix s = a.submatrix(rows, cols);
    CHECK(s == RatMatrix::from_rows({{4, Rational::parse("-7/3")}}));
    CHECK(a.transpose().transpose() == a);
    CHECK(a.transpose()(2, 1) == Rational::parse("-7/3"));
    CHECK_THROWS_AS(RatMatrix(2, 2, std::vector<Rational>(3)), DomainError);
}
