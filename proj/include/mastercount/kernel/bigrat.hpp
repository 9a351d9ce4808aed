#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mastercount::kernel {

/// Exact rational; GMP keeps it canonical (reduced, positive denominator).
using BigRat = mpq_class;
using BigInt = mpz_class;

/// Parses "p", "-p" or "p/q". Decimal points are rejected.
BigRat parse_rat(std::string_view text);

/// Renders as "p" or "p/q".
std::string to_string(const BigRat& q);

/// p/q in canonical form (mpq_class(p, q) alone does not reduce).
inline BigRat make_rat(long p, long q) {
    BigRat r(p, q);
    r.canonicalize();
    return r;
}

inline bool is_integer(const BigRat& q) { return q.get_den() == 1; }

/// Pochhammer symbol (x)_k = x (x+1) ... (x+k-1), (x)_0 = 1.
BigRat pochhammer(const BigRat& x, unsigned k);

}  // namespace mastercount::kernel
