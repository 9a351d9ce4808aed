#pragma once

#include "mastercount/kernel/ratfunc.hpp"

#include <vector>

namespace mastercount::kernel {

using RatMatrix = std::vector<std::vector<RatFunc>>;

/// Basis of the right nullspace of m over the field of rational functions,
/// computed from the reduced row echelon form. Each basis vector has a 1 in
/// its free column.
std::vector<std::vector<RatFunc>> nullspace(RatMatrix m);

/// Rank over the rational-function field.
int rank(RatMatrix m);

}  // namespace mastercount::kernel
