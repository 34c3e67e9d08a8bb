#include "deltadb/rational.hpp"

#include <cctype>
#include <ostream>

#include "deltadb/errors.hpp"

namespace deltadb {

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0)
        throw DomainError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(const mpq_class& q) : v_(q) {
    if (v_.get_den() == 0)
        throw DomainError("rational with zero denominator");
    v_.canonicalize();
}

Integer parse_integer(std::string_view text) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+'))
        ++i;
    if (i == text.size())
        throw DomainError("not an integer: '" + std::string(text) + "'");
    for (std::size_t k = i; k < text.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(text[k])))
            throw DomainError("not an integer: '" + std::string(text) + "'");
    }
    std::string s(text[0] == '+' ? text.substr(1) : text);
    return Integer(s, 10);
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0)
        throw DomainError("rational with zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero())
        throw DomainError("division by zero");
    v_ /= o.v_;
    return *this;
}

Integer Rational::floor() const {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

Integer Rational::ceil() const {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

std::string Rational::str() const {
    if (is_integer())
        return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size())
        throw DomainError("dot: length mismatch");
    mpq_class acc;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_zero() && !b[i].is_zero())
            acc += a[i].mpq() * b[i].mpq();
    }
    return Rational(acc);
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Integer lcm_all(std::span<const Integer> values) {
    if (values.empty())
        throw DomainError("lcm_all: empty list");
    Integer acc = 1;
    for (const auto& v : values) {
        if (v == 0)
            throw DomainError("lcm_all: zero value");
        acc = lcm(acc, v);
    }
    return acc;
}

namespace {
constexpr unsigned long kLcmUpToCap = 1'000'000;
}

Integer lcm_up_to(const Integer& n) {
    if (n < 1)
        throw DomainError("lcm_up_to: n must be positive");
    if (n > kLcmUpToCap)
        throw CapExceededError("lcm{1..n} with n = " + n.get_str() + " is too large to compute");
    unsigned long limit = n.get_ui();
    Integer acc = 1;
    // Product over primes p <= n of the largest power p^k <= n.
    std::vector<bool> composite(limit + 1, false);
    for (unsigned long p = 2; p <= limit; ++p) {
        if (composite[p])
            continue;
        if (p <= limit / p) {
            for (unsigned long q = p * p; q <= limit; q += p)
                composite[q] = true;
        }
        unsigned long pk = p;
        while (pk <= limit / p)
            pk *= p;
        acc *= pk;
    }
    return acc;
}

Integer isqrt(const Integer& v) {
    if (v < 0)
        throw DomainError("isqrt of negative value");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

}  // namespace deltadb
