#pragma once

#include "mastercount/hyper/pfq.hpp"
#include "mastercount/hyper/series.hpp"
#include "mastercount/hyper/theta.hpp"

#include <utility>

namespace mastercount::hyper {

/// theta prod(theta + b_j - 1) - z prod(theta + a_i), which annihilates F.
ThetaPoly ode_operator(const PFQ& f);

/// Rewrites op into an equivalent operator on F of degree below f.order().
ThetaPoly theta_reduce(const PFQ& f, const ThetaPoly& op);

/// F(a+1, ...) = ((theta + a)/a) F(a, ...). Returns the operator and f itself.
/// Throws "zero parameter, operator singular" when a is identically 0.
std::pair<ThetaPoly, PFQ> raise_upper(const PFQ& f, std::size_t which);

/// F(...; b-1) = ((theta + b - 1)/(b - 1)) F(...; b).
/// Throws "operator singular" when b is identically 1.
std::pair<ThetaPoly, PFQ> lower_lower(const PFQ& f, std::size_t which);

/// f = op(basis) + remainder, with deg(op) < basis order.
struct ReducedForm {
    PFQ basis;
    ThetaPoly op;
    RatFunc remainder;
    /// Number of contiguous operators composed while reducing.
    int steps = 0;
};

/// Expresses f through target using upper raises, lower lowerings and the
/// unit-upper collapse pFq(1, a; m, b) -> z^(1-m) [p-1Fq-1(a-m+1; b-m+1) - poly].
/// Throws "unsupported shift direction" when a parameter would have to move
/// the other way.
ReducedForm reduce_shifts(const PFQ& f, const PFQ& target);

/// Number of basis elements: ODE order after cancellation, minus one per
/// remaining unit upper parameter.
int basis_count(const PFQ& f);

BigFloat eval_reduced(const ReducedForm& r, const Number& z0, const Number& n0, int prec);

}  // namespace mastercount::hyper
