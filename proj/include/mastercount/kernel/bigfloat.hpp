#pragma once

#include "mastercount/kernel/bigrat.hpp"

#include <mpfr.h>

#include <string>

namespace mastercount::kernel {

class Poly;
class RatFunc;

/// Binary precision for a target of `digits` correct decimals plus ten guard digits.
mpfr_prec_t bits_for_digits(int digits);

/// Arbitrary precision real, a value wrapper over an MPFR number.
///
/// Binary operations round to the larger precision of the operands, so a
/// computation started at the working precision stays there.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t bits = 128);
    BigFloat(const BigRat& q, mpfr_prec_t bits);
    BigFloat(long v, mpfr_prec_t bits);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    static BigFloat pi(mpfr_prec_t bits);
    /// Parses a decimal string at the given precision.
    static BigFloat parse(const std::string& text, mpfr_prec_t bits);

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Decimal exponent e with 10^e <= |x| < 10^(e+1); very negative for zero.
    long decimal_exponent() const;

    BigFloat operator-() const;
    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);
    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return !(b < a); }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return !(a < b); }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    /// Scientific notation with `digits` significant digits.
    std::string to_string(int digits) const;

private:
    mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat pow(const BigFloat& x, const BigFloat& y);
BigFloat pow(const BigFloat& x, long k);
/// 10^e at the given precision.
BigFloat pow10(long e, mpfr_prec_t bits);

/// |a - b| / |b|, or |a - b| when b is zero.
BigFloat relative_difference(const BigFloat& a, const BigFloat& b);

BigFloat eval(const Poly& p, const BigFloat& n, const BigFloat& z);
/// Throws "pole of rational function" if the denominator evaluates to zero.
BigFloat eval(const RatFunc& f, const BigFloat& n, const BigFloat& z);

}  // namespace mastercount::kernel
