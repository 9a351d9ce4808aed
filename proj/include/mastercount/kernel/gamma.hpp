#pragma once

#include "mastercount/kernel/bigfloat.hpp"

namespace mastercount::kernel {

/// Euler Gamma function to `digits` significant decimals.
///
/// Spouge's approximation for x >= 1/2, with the number of terms chosen from
/// the explicit error bound; the reflection formula covers x < 1/2. Throws
/// "gamma pole" for x in {0, -1, -2, ...}.
BigFloat gamma(const BigRat& x, int digits);
BigFloat gamma(const BigFloat& x, int digits);

/// Number of Spouge terms a such that the relative truncation error is below 10^-digits.
int spouge_terms(int digits);

}  // namespace mastercount::kernel
