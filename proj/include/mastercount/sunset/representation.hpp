#pragma once

#include "mastercount/hyper/pfq.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mastercount::sunset {

using hyper::ParamExpr;
using hyper::PFQ;
using kernel::BigFloat;
using kernel::BigRat;
using kernel::RatFunc;

/// Exponents of J(sigma, beta, alpha): sigma on the massless line (p-k1)^2,
/// beta on the m-line k2^2+m^2, alpha on the M-line (k1-k2)^2+M^2.
struct SunsetIndices {
    long sigma = 1;
    long beta = 1;
    long alpha = 1;

    long total() const { return sigma + beta + alpha; }
    /// "J(1,2,1)" in (sigma, beta, alpha) order.
    std::string to_string() const;
    friend bool operator==(const SunsetIndices&, const SunsetIndices&) = default;
};

/// Parses "J(1,2,1)" or "1,2,1".
SunsetIndices parse_indices(std::string_view text);

/// prod Gamma(arg)^exp * (z/4)^power_z4 * (M^2)^power_M2.
class GammaProduct {
public:
    GammaProduct() = default;

    /// Multiplies by Gamma(arg)^exp, merging equal arguments.
    GammaProduct& mul_gamma(const ParamExpr& arg, int exp);
    GammaProduct& mul(const GammaProduct& o);
    GammaProduct inverse() const;

    const std::vector<std::pair<ParamExpr, int>>& factors() const { return factors_; }
    ParamExpr power_z4;
    ParamExpr power_M2;

    /// this / o as a rational function of (n, z), when the Gamma arguments
    /// pair up modulo integers and the (z/4) powers differ by an integer.
    std::optional<RatFunc> ratio_to(const GammaProduct& o) const;

    /// Value at M^2 = 1. (z/4)^e at z0 = 0 is 0 for e > 0 and throws for e < 0.
    BigFloat eval(const BigRat& n0, const BigRat& z0, int prec) const;

    /// e.g. "Gamma(n/2-1)^2*Gamma(3-n)/Gamma(n/2)*(z/4)^(n/2-1)".
    std::string to_string() const;

    friend bool operator==(const GammaProduct& a, const GammaProduct& b) {
        return a.factors_ == b.factors_ && a.power_z4 == b.power_z4 && a.power_M2 == b.power_M2;
    }

private:
    std::vector<std::pair<ParamExpr, int>> factors_;
};

nlohmann::json to_json(const GammaProduct& g);
GammaProduct gamma_product_from_json(const nlohmann::json& j);

struct HyperTerm {
    GammaProduct gamma;
    RatFunc coeff;
    PFQ f;
    friend bool operator==(const HyperTerm&, const HyperTerm&) = default;
};

/// Sum of coeff * gamma * f over the terms.
struct HyperCombo {
    std::vector<HyperTerm> terms;
    friend bool operator==(const HyperCombo&, const HyperCombo&) = default;
};

nlohmann::json to_json(const HyperCombo& h);
HyperCombo hyper_combo_from_json(const nlohmann::json& j);

/// The two-term 4F3 representation of J(sigma, beta, alpha) at M^2 = 1,
/// m^2 = z/4. Throws "representation undefined; use IBP module" for
/// non-positive indices.
HyperCombo build_representation(const SunsetIndices& idx);

/// Cancels equal upper/lower parameters termwise and folds Gamma factors of
/// positive integers into the rational coefficient.
HyperCombo collapse(const HyperCombo& h);

/// J(sigma, beta, alpha) at n = 4 - 2 eps, M^2 = 1, m^2 = z0/4.
BigFloat eval_J(const SunsetIndices& idx, const BigRat& eps, const BigRat& z0, int prec);

inline BigRat n_from_eps(const BigRat& eps) { return 4 - 2 * eps; }

}  // namespace mastercount::sunset
