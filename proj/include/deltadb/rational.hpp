/**@file   rational.hpp
 * @brief  Arbitrary-precision integers and canonical rationals
 */
#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace deltadb {

using Integer = mpz_class;

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(int v) : v_(v) {}
    Rational(long v) : v_(v) {}
    Rational(long long v) : v_(Integer(std::to_string(v))) {}
    Rational(const Integer& v) : v_(v) {}
    /// Integer-valued GMP expression such as `a + 1`.
    template <class U>
    Rational(const __gmp_expr<mpz_t, U>& e) : v_(Integer(e)) {}
    Rational(const Integer& num, const Integer& den);
    explicit Rational(const mpq_class& q);

    /// Parses "num" or "num/den" (optional leading '-'). Throws DomainError.
    static Rational parse(std::string_view text);

    Integer num() const { return v_.get_num(); }
    Integer den() const { return v_.get_den(); }

    bool is_integer() const { return v_.get_den() == 1; }
    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    Integer floor() const;
    Integer ceil() const;
    Rational abs() const { return Rational(::abs(v_)); }

    /// "num/den", or "num" when den = 1.
    std::string str() const;
    double to_double() const { return v_.get_d(); }

    const mpq_class& mpq() const { return v_; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

using RatVector = std::vector<Rational>;

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

/// Positive gcd / lcm of absolute values.
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Positive lcm of |values|. Throws DomainError on an empty list or a zero entry.
Integer lcm_all(std::span<const Integer> values);

/// lcm{1, ..., n} for n >= 1.
Integer lcm_up_to(const Integer& n);

/// Floor of the square root of a nonnegative integer.
Integer isqrt(const Integer& v);

Integer parse_integer(std::string_view text);

}  // namespace deltadb
