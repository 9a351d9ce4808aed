#include "mastercount/kernel/bigfloat.hpp"

#include "mastercount/kernel/error.hpp"
#include "mastercount/kernel/ratfunc.hpp"

#include <algorithm>
#include <cmath>

namespace mastercount::kernel {

mpfr_prec_t bits_for_digits(int digits) {
    return static_cast<mpfr_prec_t>(std::ceil((digits + 10) * 3.321928094887362)) + 16;
}

BigFloat::BigFloat(mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const BigRat& q, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(long v, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, o.precision());
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.precision());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::pi(mpfr_prec_t bits) {
    BigFloat r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::parse(const std::string& text, mpfr_prec_t bits) {
    BigFloat r(bits);
    if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) throw domain_error("malformed decimal '" + text + "'");
    return r;
}

long BigFloat::decimal_exponent() const {
    if (is_zero()) return -1000000000L;
    BigFloat t(64);
    mpfr_abs(t.v_, v_, MPFR_RNDN);
    mpfr_log10(t.v_, t.v_, MPFR_RNDD);
    return static_cast<long>(std::floor(mpfr_get_d(t.v_, MPFR_RNDD)));
}

namespace {

// Rounds the receiver up to the other operand's precision before combining.
void widen(mpfr_ptr v, mpfr_srcptr o) {
    if (mpfr_get_prec(o) > mpfr_get_prec(v)) mpfr_prec_round(v, mpfr_get_prec(o), MPFR_RNDN);
}

}  // namespace

BigFloat BigFloat::operator-() const {
    BigFloat r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
    widen(v_, o.v_);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
    widen(v_, o.v_);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
    widen(v_, o.v_);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& o) {
    widen(v_, o.v_);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

std::string BigFloat::to_string(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", std::max(1, digits), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

BigFloat abs(const BigFloat& x) {
    BigFloat r(x);
    mpfr_abs(r.get(), r.get(), MPFR_RNDN);
    return r;
}

BigFloat sqrt(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat exp(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat log(const BigFloat& x) {
    if (x.sign() <= 0) throw domain_error("logarithm of a non-positive number");
    BigFloat r(x.precision());
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat sin(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_sin(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat pow(const BigFloat& x, const BigFloat& y) {
    BigFloat r(std::max(x.precision(), y.precision()));
    mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

BigFloat pow(const BigFloat& x, long k) {
    BigFloat r(x.precision());
    mpfr_pow_si(r.get(), x.get(), k, MPFR_RNDN);
    return r;
}

BigFloat pow10(long e, mpfr_prec_t bits) {
    BigFloat r(10L, bits);
    mpfr_pow_si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

BigFloat relative_difference(const BigFloat& a, const BigFloat& b) {
    BigFloat d = abs(a - b);
    if (b.is_zero()) return d;
    return d / abs(b);
}

BigFloat eval(const Poly& p, const BigFloat& n, const BigFloat& z) {
    mpfr_prec_t bits = std::max(n.precision(), z.precision());
    BigFloat acc(bits);
    std::vector<BigFloat> np{BigFloat(1L, bits)}, zp{BigFloat(1L, bits)};
    for (const auto& t : p.terms()) {
        while (static_cast<int>(np.size()) <= t.exp[0]) np.push_back(np.back() * n);
        while (static_cast<int>(zp.size()) <= t.exp[1]) zp.push_back(zp.back() * z);
        acc += BigFloat(t.coeff, bits) * np[t.exp[0]] * zp[t.exp[1]];
    }
    return acc;
}

BigFloat eval(const RatFunc& f, const BigFloat& n, const BigFloat& z) {
    BigFloat d = eval(f.den(), n, z);
    if (d.is_zero()) throw domain_error("pole of rational function");
    return eval(f.num(), n, z) / d;
}

}  // namespace mastercount::kernel
