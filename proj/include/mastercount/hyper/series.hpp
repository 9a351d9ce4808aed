#pragma once

#include "mastercount/hyper/pfq.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace mastercount::hyper {

/// A numeric argument: exact when possible, so terminating series and
/// parameter poles are detected exactly.
using Number = std::variant<BigRat, BigFloat>;

/// Sum of the defining series at (z0, n0) with a rigorous geometric tail
/// bound below 10^-(prec+5) relative. Throws "divergent series" or
/// "lower-parameter pole".
BigFloat series_sum(const PFQ& f, const Number& z0, const Number& n0, int prec);

/// (theta^k F)(z0) summed termwise with weights j^k.
BigFloat series_theta(const PFQ& f, int k, const Number& z0, const Number& n0, int prec);

/// theta^0 F ... theta^kmax F at one point, from a single pass.
std::vector<BigFloat> series_theta_all(const PFQ& f, int kmax, const Number& z0, const Number& n0, int prec);

/// Index of the last nonzero term if the series at n0 terminates.
std::optional<long> termination_index(const PFQ& f, const BigRat& n0);

/// Exact polynomial in z for a series that terminates at n0.
kernel::Poly terminating_polynomial(const PFQ& f, const BigRat& n0);

BigFloat to_bigfloat(const Number& x, mpfr_prec_t bits);

}  // namespace mastercount::hyper
