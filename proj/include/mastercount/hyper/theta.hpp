#pragma once

#include "mastercount/kernel/bigfloat.hpp"
#include "mastercount/kernel/ratfunc.hpp"

#include <string>
#include <vector>

namespace mastercount::hyper {

using kernel::BigFloat;
using kernel::RatFunc;

/// Differential operator c0 + c1 theta + ... + cd theta^d with theta = z d/dz.
/// Coefficients stand to the left of the powers of theta.
class ThetaPoly {
public:
    ThetaPoly() = default;
    ThetaPoly(const RatFunc& c0);  // NOLINT
    explicit ThetaPoly(std::vector<RatFunc> coeffs);

    static ThetaPoly theta() { return ThetaPoly(std::vector<RatFunc>{RatFunc(0), RatFunc(1)}); }

    /// -1 for the zero operator.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    /// Coefficient of theta^k (zero past the degree).
    RatFunc coeff(int k) const;
    const std::vector<RatFunc>& coeffs() const { return c_; }

    friend ThetaPoly operator+(const ThetaPoly& a, const ThetaPoly& b);
    friend ThetaPoly operator-(const ThetaPoly& a, const ThetaPoly& b);
    /// Composition a o b, commuting theta past b's coefficients.
    friend ThetaPoly operator*(const ThetaPoly& a, const ThetaPoly& b);
    /// Left multiplication by a function.
    friend ThetaPoly operator*(const RatFunc& r, const ThetaPoly& a);
    friend bool operator==(const ThetaPoly& a, const ThetaPoly& b) { return a.c_ == b.c_; }

    /// The operator acting on a rational function.
    RatFunc apply(const RatFunc& f) const;

    /// Combines precomputed values of theta^k F at a point.
    BigFloat eval(const std::vector<BigFloat>& theta_values, const BigFloat& n, const BigFloat& z) const;

    std::string to_string() const;

private:
    void trim();
    std::vector<RatFunc> c_;
};

}  // namespace mastercount::hyper
