#pragma once

#include "mastercount/hyper/reduce.hpp"
#include "mastercount/sunset/representation.hpp"

#include <array>
#include <map>

namespace mastercount::sunset {

using kernel::Poly;

/// Laurent polynomial in m2 = m^2 and M2 = M^2 with coefficients rational in n.
class DimCoeff {
public:
    using Monomial = std::pair<int, int>;  // powers of (m2, M2)

    DimCoeff() = default;
    DimCoeff(const RatFunc& c, int m2_power = 0, int M2_power = 0);  // NOLINT
    DimCoeff(const BigRat& c) : DimCoeff(RatFunc(c)) {}                // NOLINT

    const std::map<Monomial, RatFunc>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    DimCoeff operator-() const;
    friend DimCoeff operator+(const DimCoeff& a, const DimCoeff& b);
    friend DimCoeff operator-(const DimCoeff& a, const DimCoeff& b);
    friend DimCoeff operator*(const DimCoeff& a, const DimCoeff& b);
    /// Only division by a single monomial is supported.
    friend DimCoeff operator/(const DimCoeff& a, const DimCoeff& b);
    friend bool operator==(const DimCoeff& a, const DimCoeff& b) { return a.terms_ == b.terms_; }

    /// Sets m2 = M2 (every monomial becomes a pure power of one mass).
    DimCoeff equal_mass() const;
    /// Value at m2 = z0/4, M2 = 1.
    BigRat eval(const BigRat& n0, const BigRat& z0) const;

    /// e.g. "3*n-8", "4*m2", "2*M2", "(n-2)*m2^2/M2".
    std::string to_string() const;

private:
    void add(const Monomial& m, const RatFunc& c);
    std::map<Monomial, RatFunc> terms_;
};

/// Parses the to_string form (symbols n, m2, M2).
DimCoeff parse_dimcoeff(std::string_view text);

/// Canonical basis functions F_x = 2F1(1/2, 3-n; n/2) and F_y = 3F2(1, (n-1)/2, 2-n/2; n/2, n-1).
const PFQ& basis_Fx();
const PFQ& basis_Fy();
/// A = Gamma(n/2-1) Gamma(3-n) Gamma(2-n/2).
GammaProduct prefactor_A();
/// B = (z/4)^(n/2-1) Gamma(1-n/2) Gamma(2-n/2).
GammaProduct prefactor_B();

/// X = (n/2-1) J (M^2 = 1) written as A (x0 + x1 F_x + x2 theta F_x) + B (y0 F_y + y1 theta F_y).
struct XYCoords {
    std::array<RatFunc, 3> x;
    std::array<RatFunc, 2> y;
    friend bool operator==(const XYCoords&, const XYCoords&) = default;
};

/// The three masters J(1,1,1), J(1,2,1), J(1,1,2), in that order.
const std::array<SunsetIndices, 3>& sunset_masters();

/// Throws "not a master" for other indices.
XYCoords decompose_xy(const SunsetIndices& idx);

struct RelationSolution {
    std::array<Poly, 3> lambdas;  // coefficients of X(1,1,1), X(1,2,1), X(1,1,2)
    Poly mu;                      // sum lambda x = mu (1, 0, 0), sum lambda y = 0
    friend bool operator==(const RelationSolution&, const RelationSolution&) = default;
};

/// Solves for the unique (up to scale) linear relation among the masters'
/// coordinates, normalized so that lambda_3 = 2. Throws (contradiction)
/// "relation count mismatch" unless the nullspace is one-dimensional.
RelationSolution find_relation();

/// Nullspace dimension of the 5x4 system; exposed for checking.
int relation_nullity();

/// sum coeff_i J_i = multiplier * prod Gamma * (mass)^mass_exponent.
struct Relation {
    std::vector<std::pair<SunsetIndices, DimCoeff>> lhs;
    RatFunc multiplier;
    GammaProduct gammas;  // only the Gamma factors are used
    ParamExpr mass_exponent;
    bool equal_mass = false;  // mass symbol is m2 instead of M2

    friend bool operator==(const Relation&, const Relation&) = default;
    std::string to_string() const;
};

nlohmann::ordered_json to_json(const Relation& r);
Relation relation_from_json(const nlohmann::ordered_json& j);

/// Restores dimensions: z -> 4 m2/M2, X -> (M2)^(sigma+beta+alpha-n) (n/2-1) J.
Relation assemble_main(const RelationSolution& sol);
/// Inverse of assemble_main.
RelationSolution renormalize(const Relation& rel);
/// m^2 = M^2, merging J(1,2,1) into J(1,1,2) by the line-swap symmetry.
Relation equal_mass_specialize(const Relation& rel);
/// Whether each term has mass dimension n - 3 (in units of mass^2), like the RHS.
bool dimensions_consistent(const Relation& rel);

/// |LHS - RHS| / |RHS| with all J from the series representation.
BigFloat verify_main_numeric(const Relation& rel, const BigRat& eps, const BigRat& z0, int prec);
BigFloat verify_main_numeric(const BigRat& eps, const BigRat& z0, int prec);

/// (3n-8) x1 + z x2 + 2 x3 at n = 4 from terminating series, with x2 taken
/// either as printed, ((a-1)/z)[2F1(1/2, a; b; z) - 1], or with the lower
/// parameter b-1.
RatFunc x_identity_at_n4(bool printed_form);

}  // namespace mastercount::sunset
