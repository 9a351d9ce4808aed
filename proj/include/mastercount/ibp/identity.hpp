#pragma once

#include "mastercount/kernel/ratfunc.hpp"
#include "mastercount/sunset/representation.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace mastercount::ibp {

using kernel::BigRat;
using kernel::Poly;
using kernel::RatFunc;

/// Powers of D1 = (p-k1)^2, D2 = (k1-k2)^2 + M^2, D3 = k2^2 + m^2,
/// N1 = k1^2, N2 = k2.p (the last two are numerators: a4, a5 <= 0).
using FamilyIndex = std::array<int, 5>;

/// "a1,a2,a3,a4,a5".
std::string key(const FamilyIndex& a);
/// Inverse of key(); throws a domain error on malformed input or positive a4/a5.
FamilyIndex parse_key(std::string_view text);

/// J(sigma, beta, alpha) = I(sigma, alpha, beta, 0, 0).
FamilyIndex from_sunset(const sunset::SunsetIndices& j);
sunset::SunsetIndices to_sunset(const FamilyIndex& a);

/// Scaleless in dimensional regularization: a2 <= 0 or a3 <= 0.
bool is_zero_sector(const FamilyIndex& a);
/// Bit i set when a_{i+1} > 0, for the three propagators.
int sector_mask(const FamilyIndex& a);
/// Sum over propagators of (a_i - 1) for a_i > 1.
int dots(const FamilyIndex& a);
/// Sum of |a_i| over non-positive indices of the sector's missing lines and the numerators.
int numerators(const FamilyIndex& a);
/// Laporta order: sector size, sector mask, numerators, dots, then lexicographic.
bool integral_less(const FamilyIndex& a, const FamilyIndex& b);

enum class Momentum { k1, k2, p };
std::string to_string(Momentum m);

/// sum d_i P_i + m2 * m^2 + M2 * M^2 with P = (D1, D2, D3, N1, N2).
struct LinearForm {
    std::array<BigRat, 5> d{};
    BigRat m2 = 0;
    BigRat M2 = 0;
    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Scalar product a.b in terms of the propagators, with p^2 = -m^2.
LinearForm sp_map(Momentum a, Momentum b);

/// c0 + sum_j a_j c_j with c in Q[n, z]: an identity coefficient as a
/// function of the seed indices. No Gamma function can be represented.
struct IbpCoeff {
    Poly constant;
    std::array<Poly, 5> linear{};
    RatFunc at(const FamilyIndex& seed) const;
    bool is_zero() const;
    friend bool operator==(const IbpCoeff&, const IbpCoeff&) = default;
};

/// 0 = integral of d/dl . (v integrand) at a seed, written as shifts of the seed.
struct IBPIdentity {
    Momentum l = Momentum::k1;
    Momentum v = Momentum::k1;
    FamilyIndex seed{};
    std::vector<std::pair<FamilyIndex, IbpCoeff>> terms;  // shift, coefficient; sorted by shift

    /// Concrete terms (seed + shift, coefficient) with zero sectors and zero
    /// coefficients dropped, sorted by integral_less descending.
    std::vector<std::pair<FamilyIndex, RatFunc>> instantiate() const;
};

IBPIdentity gen_ibp(Momentum l, Momentum v, const FamilyIndex& seed);

/// The six (l, v) pairs in generation order.
const std::array<std::pair<Momentum, Momentum>, 6>& ibp_directions();

}  // namespace mastercount::ibp
