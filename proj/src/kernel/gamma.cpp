#include "mastercount/kernel/gamma.hpp"

#include "mastercount/kernel/error.hpp"

#include <cmath>

namespace mastercount::kernel {

int spouge_terms(int digits) {
    // Relative error of Spouge's sum is at most a^(-1/2) (2 pi)^-(a+1/2) for Re z >= 0.
    const double target = digits * std::log(10.0);
    int a = 3;
    while (0.5 * std::log(a) + (a + 0.5) * std::log(2 * M_PI) < target) ++a;
    return a;
}

namespace {

// Gamma(z + 1) for z >= 1/2 by Spouge's formula.
BigFloat spouge(const BigFloat& z, int digits) {
    const int a = spouge_terms(digits + 5);
    const mpfr_prec_t out_bits = bits_for_digits(digits);
    // The alternating coefficients reach roughly e^(1.3 a); carry that much extra.
    const mpfr_prec_t bits = out_bits + 2 * a + 32;

    BigFloat zw(bits);
    mpfr_set(zw.get(), z.get(), MPFR_RNDN);
    BigFloat two_pi = BigFloat::pi(bits) * BigFloat(2L, bits);
    BigFloat sum = sqrt(two_pi);
    BigFloat fact(1L, bits);  // (k-1)!
    for (int k = 1; k < a; ++k) {
        if (k > 1) fact *= BigFloat(static_cast<long>(k - 1), bits);
        BigFloat base(static_cast<long>(a - k), bits);
        BigFloat ck = pow(base, BigFloat(BigRat(2 * k - 1, 2), bits)) * exp(base) / fact;
        if (k % 2 == 0) ck = -ck;
        sum += ck / (zw + BigFloat(static_cast<long>(k), bits));
    }
    BigFloat za = zw + BigFloat(static_cast<long>(a), bits);
    BigFloat half(BigRat(1, 2), bits);
    BigFloat r = pow(za, zw + half) * exp(-za) * sum;
    BigFloat out(out_bits);
    mpfr_set(out.get(), r.get(), MPFR_RNDN);
    return out;
}

}  // namespace

BigFloat gamma(const BigFloat& x, int digits) {
    if (x.is_integer() && x.sign() <= 0) throw domain_error("gamma pole");
    const mpfr_prec_t bits = bits_for_digits(digits) + 32;
    BigFloat xw(bits);
    mpfr_set(xw.get(), x.get(), MPFR_RNDN);
    BigFloat one(1L, bits);
    BigFloat half(BigRat(1, 2), bits);
    if (xw < half) {
        // Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        BigFloat pi = BigFloat::pi(bits);
        return pi / (sin(pi * xw) * gamma(one - xw, digits + 5));
    }
    BigFloat three_halves(BigRat(3, 2), bits);
    if (xw < three_halves) return spouge(xw, digits + 5) / xw;
    return spouge(xw - one, digits + 5);
}

BigFloat gamma(const BigRat& x, int digits) {
    if (is_integer(x) && x <= 0) throw domain_error("gamma pole");
    const mpfr_prec_t bits = bits_for_digits(digits);
    if (is_integer(x) && x <= 200) {
        BigInt f = 1;
        for (long k = 2; k < x.get_num().get_si(); ++k) f *= k;
        return BigFloat(BigRat(f), bits);
    }
    return gamma(BigFloat(x, bits + 32), digits);
}

}  // namespace mastercount::kernel
