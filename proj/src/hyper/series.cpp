#include "mastercount/hyper/series.hpp"

#include "mastercount/kernel/error.hpp"

#include <algorithm>
#include <cmath>

namespace mastercount::hyper {

using kernel::BigInt;
using kernel::bits_for_digits;
using kernel::pow10;

BigFloat to_bigfloat(const Number& x, mpfr_prec_t bits) {
    if (const auto* q = std::get_if<BigRat>(&x)) return BigFloat(*q, bits);
    BigFloat r(bits);
    mpfr_set(r.get(), std::get<BigFloat>(x).get(), MPFR_RNDN);
    return r;
}

namespace {

// Non-positive integer value -m of a parameter, if it is one.
std::optional<long> nonpositive_integer(const ParamExpr& e, const Number& n0, mpfr_prec_t bits) {
    if (const auto* q = std::get_if<BigRat>(&n0)) {
        BigRat v = e.eval(*q);
        if (kernel::is_integer(v) && v <= 0 && v.get_num().fits_slong_p()) return -v.get_num().get_si();
        return std::nullopt;
    }
    BigFloat v = e.eval(to_bigfloat(n0, bits));
    if (v.is_integer() && v.sign() <= 0) return -static_cast<long>(mpfr_get_si(v.get(), MPFR_RNDN));
    return std::nullopt;
}

std::optional<long> terminating_at(const PFQ& f, const Number& n0, mpfr_prec_t bits) {
    std::optional<long> term;
    for (const auto& a : f.upper())
        if (auto m = nonpositive_integer(a, n0, bits)) term = term ? std::min(*term, *m) : *m;
    for (const auto& b : f.lower())
        if (auto m = nonpositive_integer(b, n0, bits))
            if (!term || *m < *term) throw domain_error("lower-parameter pole");
    return term;
}

// Upper bound on |w_(k+1) t_(k+1)| / |w_k t_k| valid for all k' >= k once
// k exceeds every |b_j|; non-increasing in k.
double ratio_bound(double k, const std::vector<double>& up, const std::vector<double>& lo, double absz, int weight) {
    std::vector<double> den;
    for (double b : lo) den.push_back(-b);
    den.push_back(1.0);
    std::sort(den.begin(), den.end());
    double u = absz;
    for (std::size_t i = 0; i < den.size(); ++i) {
        double d = k + den[i];
        if (i < up.size())
            u *= std::max(1.0, (k + up[i]) / d);
        else
            u /= d;
    }
    if (weight > 0) u *= std::pow((k + 1.0) / k, weight);
    return u;
}

std::vector<BigFloat> sum_series(const PFQ& f, int kmax, const Number& z0, const Number& n0, int prec) {
    const mpfr_prec_t bits = bits_for_digits(prec);
    const BigFloat z = to_bigfloat(z0, bits);
    const BigFloat n = to_bigfloat(n0, bits);
    std::vector<BigFloat> sums(kmax + 1, BigFloat(bits));
    sums[0] = BigFloat(1L, bits);
    const auto term = terminating_at(f, n0, bits);
    if (z.is_zero()) return sums;

    std::vector<BigFloat> up, lo;
    for (const auto& a : f.upper()) up.push_back(a.eval(n));
    for (const auto& b : f.lower()) lo.push_back(b.eval(n));

    const BigFloat absz = abs(z);
    long k0 = 0;
    double r = 0.9;
    if (!term) {
        if (f.p() > f.q() + 1 || (f.p() == f.q() + 1 && absz >= BigFloat(1L, bits)))
            throw domain_error("divergent series");
        const double az = absz.to_double();
        r = std::max(0.9, 0.5 * (1.0 + az));
        std::vector<double> ua, la;
        for (const auto& a : up) ua.push_back(std::abs(a.to_double()));
        for (const auto& b : lo) la.push_back(std::abs(b.to_double()));
        std::sort(ua.begin(), ua.end());
        double kstart = 1.0;
        for (double b : la) kstart = std::max(kstart, std::floor(b) + 1.0);
        k0 = static_cast<long>(kstart);
        while (ratio_bound(static_cast<double>(k0), ua, la, az, kmax) * (1.0 + 1e-12) > r) {
            if (++k0 > 100000000L) throw domain_error("divergent series");
        }
    }

    const BigFloat eps = pow10(-(prec + 5), bits);
    const BigFloat tail_factor = BigFloat(1L, bits) / BigFloat(kernel::make_rat(1, 1) - BigRat(r), bits);
    const BigFloat small = pow10(-prec, bits);
    std::vector<BigFloat> largest(kmax + 1, BigFloat(bits));
    largest[0] = BigFloat(1L, bits);
    BigFloat t(1L, bits);
    for (long j = 1;; ++j) {
        if (term && j > *term) break;
        BigFloat jm1(j - 1, bits);
        for (const auto& a : up) t *= a + jm1;
        for (const auto& b : lo) {
            BigFloat d = b + jm1;
            if (d.is_zero()) throw domain_error("lower-parameter pole");
            t /= d;
        }
        t *= z;
        t /= BigFloat(j, bits);
        if (t.is_zero() && term) break;

        BigFloat w(1L, bits), jf(j, bits);
        std::vector<BigFloat> contrib;
        contrib.reserve(kmax + 1);
        for (int s = 0; s <= kmax; ++s) {
            if (s > 0) w *= jf;
            contrib.push_back(w * t);
        }
        if (!term && j >= k0) {
            bool done = true;
            for (int s = 0; s <= kmax && done; ++s) {
                BigFloat scale = abs(sums[s]);
                BigFloat floor_scale = largest[s] * small;
                if (scale < floor_scale) scale = floor_scale;
                if (abs(contrib[s]) * tail_factor > eps * scale) done = false;
            }
            if (done) break;
        }
        for (int s = 0; s <= kmax; ++s) {
            BigFloat a = abs(contrib[s]);
            if (a > largest[s]) largest[s] = a;
            sums[s] += contrib[s];
        }
        if (j > 50000000L) throw domain_error("divergent series");
    }
    return sums;
}

}  // namespace

BigFloat series_sum(const PFQ& f, const Number& z0, const Number& n0, int prec) {
    return sum_series(f, 0, z0, n0, prec)[0];
}

BigFloat series_theta(const PFQ& f, int k, const Number& z0, const Number& n0, int prec) {
    return sum_series(f, k, z0, n0, prec)[k];
}

std::vector<BigFloat> series_theta_all(const PFQ& f, int kmax, const Number& z0, const Number& n0, int prec) {
    return sum_series(f, std::max(0, kmax), z0, n0, prec);
}

std::optional<long> termination_index(const PFQ& f, const BigRat& n0) {
    return terminating_at(f, Number(n0), 64);
}

kernel::Poly terminating_polynomial(const PFQ& f, const BigRat& n0) {
    auto term = termination_index(f, n0);
    if (!term) throw domain_error("series does not terminate at n = " + kernel::to_string(n0));
    std::vector<Poly::Term> terms;
    BigRat t = 1;
    terms.push_back({{0, 0}, t});
    for (long j = 1; j <= *term; ++j) {
        for (const auto& a : f.upper()) t *= a.eval(n0) + (j - 1);
        for (const auto& b : f.lower()) t /= b.eval(n0) + (j - 1);
        t /= j;
        terms.push_back({{0, static_cast<int>(j)}, t});
    }
    return Poly::from_terms(std::move(terms));
}

}  // namespace mastercount::hyper
