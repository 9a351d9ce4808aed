#pragma once

#include "mastercount/kernel/poly.hpp"

#include <string>
#include <string_view>

namespace mastercount::kernel {

/// Rational function num/den in {n, z}.
///
/// Canonical form: gcd(num, den) = 1 and the leading coefficient of den
/// (graded-lex, n before z) is 1. Zero is 0/1. Two RatFuncs are equal as
/// functions iff they are structurally equal.
class RatFunc {
public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(const Poly& p) : num_(p), den_(1) {}  // NOLINT
    RatFunc(const BigRat& c) : num_(c), den_(1) {}  // NOLINT
    RatFunc(long c) : num_(c), den_(1) {}  // NOLINT
    /// Throws "zero divisor" if den is zero.
    RatFunc(const Poly& num, const Poly& den);

    static RatFunc var(Var v) { return RatFunc(Poly::var(v)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_ == Poly(1) && num_ == Poly(1); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool uses(Var v) const { return num_.uses(v) || den_.uses(v); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    /// Integer power; negative exponents invert (zero base throws).
    RatFunc pow(int k) const;
    RatFunc derivative(Var v) const;
    /// z d/dz.
    RatFunc theta() const;
    RatFunc substitute(Var v, const BigRat& value) const;

    /// Throws "pole of rational function" if the denominator vanishes.
    BigRat eval(const BigRat& n, const BigRat& z) const;

    /// Canonical text, e.g. "(3*n-8)/(n-2)".
    std::string to_string() const;

private:
    struct Canonical {};
    RatFunc(Poly num, Poly den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
    void normalize();

    Poly num_;
    Poly den_;
};

/// Parses the canonical text form (symbols n, z; + - * / ^; parentheses).
RatFunc parse_ratfunc(std::string_view text);

}  // namespace mastercount::kernel
