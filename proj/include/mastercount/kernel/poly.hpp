#pragma once

#include "mastercount/kernel/bigrat.hpp"

#include <array>
#include <string>
#include <vector>

namespace mastercount::kernel {

/// The two symbols of the workbench: dimension n and mass ratio z.
enum class Var { n = 0, z = 1 };

using Exponent = std::array<int, 2>;

/// Multivariate polynomial in {n, z} with rational coefficients.
///
/// Terms are kept sorted in decreasing graded-lexicographic order (total
/// degree first, then the power of n), no zero coefficients are stored, so
/// structural equality is mathematical equality.
class Poly {
public:
    struct Term {
        Exponent exp;
        BigRat coeff;
    };

    Poly() = default;
    Poly(const BigRat& c);  // NOLINT: constants convert implicitly
    Poly(long c) : Poly(BigRat(c)) {}  // NOLINT

    static Poly var(Var v);
    static Poly monomial(Exponent exp, const BigRat& c);
    static Poly from_terms(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == Exponent{0, 0}); }
    BigRat constant_term() const;
    bool uses(Var v) const { return degree(v) > 0; }
    int degree(Var v) const;
    int total_degree() const;
    const Term& leading() const { return terms_.front(); }
    const BigRat& leading_coeff() const { return terms_.front().coeff; }
    const std::vector<Term>& terms() const { return terms_; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly& operator*=(const BigRat& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const BigRat& c) { return a *= c; }
    friend Poly operator*(const BigRat& c, Poly a) { return a *= c; }
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(unsigned k) const;
    Poly derivative(Var v) const;
    /// Replaces v by a rational value.
    Poly substitute(Var v, const BigRat& value) const;

    /// Exact quotient; throws if `d` does not divide *this.
    Poly divexact(const Poly& d) const;
    /// Returns true and sets q if d divides *this exactly.
    bool try_divide(const Poly& d, Poly& q) const;

    /// Coefficients with respect to v: result[k] multiplies v^k.
    std::vector<Poly> coefficients_in(Var v) const;
    static Poly from_coefficients(Var v, const std::vector<Poly>& coeffs);

    BigRat eval(const BigRat& n, const BigRat& z) const;

    std::string to_string() const;

private:
    void normalize();
    std::vector<Term> terms_;
};

/// Graded-lex comparison, n before z. Returns true if a is above b.
inline bool term_order_greater(const Exponent& a, const Exponent& b) {
    int da = a[0] + a[1], db = b[0] + b[1];
    if (da != db) return da > db;
    return a[0] > b[0];
}

/// Pseudo-remainder of a by b with respect to v: lc(b)^(da-db+1) a mod b.
Poly pseudo_remainder(const Poly& a, const Poly& b, Var v);

/// Content with respect to v (gcd of the coefficients in the other symbol).
Poly content(const Poly& p, Var v);

/// Greatest common divisor, scaled to leading coefficient 1.
Poly gcd(const Poly& a, const Poly& b);

/// (x)_k for a polynomial argument, e.g. an affine expression in n.
Poly pochhammer(const Poly& x, unsigned k);

}  // namespace mastercount::kernel
