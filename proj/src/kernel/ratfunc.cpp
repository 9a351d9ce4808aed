#include "mastercount/kernel/ratfunc.hpp"

#include "mastercount/kernel/error.hpp"
#include "mastercount/kernel/expr_parser.hpp"

#include <utility>

namespace mastercount::kernel {

RatFunc::RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) {
    normalize();
}

void RatFunc::normalize() {
    if (den_.is_zero()) throw domain_error("zero divisor");
    if (num_.is_zero()) {
        den_ = Poly(1);
        return;
    }
    if (!den_.is_constant()) {
        Poly g = gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = num_.divexact(g);
            den_ = den_.divexact(g);
        }
    }
    BigRat lc = den_.leading_coeff();
    if (lc != 1) {
        BigRat inv = BigRat(1) / lc;
        num_ *= inv;
        den_ *= inv;
    }
}

RatFunc RatFunc::operator-() const {
    return RatFunc(-num_, den_, Canonical{});
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        if (a.den_.is_constant()) return RatFunc(a.num_ + b.num_, a.den_, RatFunc::Canonical{});
        return RatFunc(a.num_ + b.num_, a.den_);
    }
    Poly g = gcd(a.den_, b.den_);
    if (g.is_constant()) {
        // Reduced operands with coprime monic denominators give a reduced, monic result.
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, RatFunc::Canonical{});
    }
    Poly ar = a.den_.divexact(g), br = b.den_.divexact(g);
    Poly num = a.num_ * br + b.num_ * ar;
    if (num.is_zero()) return {};
    Poly h = gcd(num, g);
    Poly gh = g;
    if (!h.is_constant()) {
        num = num.divexact(h);
        gh = g.divexact(h);
    }
    Poly den = gh * ar * br;
    BigRat lc = den.leading_coeff();
    if (lc != 1) {
        BigRat inv = BigRat(1) / lc;
        num *= inv;
        den *= inv;
    }
    return RatFunc(std::move(num), std::move(den), RatFunc::Canonical{});
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_constant() && b.den_.is_constant())
        return RatFunc(a.num_ * b.num_, Poly(1), RatFunc::Canonical{});
    Poly g1 = gcd(a.num_, b.den_);
    Poly g2 = gcd(b.num_, a.den_);
    Poly an = g1.is_constant() ? a.num_ : a.num_.divexact(g1);
    Poly bd = g1.is_constant() ? b.den_ : b.den_.divexact(g1);
    Poly bn = g2.is_constant() ? b.num_ : b.num_.divexact(g2);
    Poly ad = g2.is_constant() ? a.den_ : a.den_.divexact(g2);
    Poly num = an * bn;
    Poly den = ad * bd;
    BigRat lc = den.leading_coeff();
    if (lc != 1) {
        BigRat inv = BigRat(1) / lc;
        num *= inv;
        den *= inv;
    }
    return RatFunc(std::move(num), std::move(den), RatFunc::Canonical{});
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw domain_error("zero divisor");
    BigRat lc = b.num_.leading_coeff();
    RatFunc inv(b.den_ * (BigRat(1) / lc), b.num_ * (BigRat(1) / lc), RatFunc::Canonical{});
    return a * inv;
}

RatFunc RatFunc::pow(int k) const {
    if (k < 0) return RatFunc(1) / pow(-k);
    return RatFunc(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)), Canonical{});
}

RatFunc RatFunc::derivative(Var v) const {
    if (den_.is_constant()) return RatFunc(num_.derivative(v), den_, Canonical{});
    return RatFunc(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

RatFunc RatFunc::theta() const {
    return RatFunc::var(Var::z) * derivative(Var::z);
}

RatFunc RatFunc::substitute(Var v, const BigRat& value) const {
    Poly d = den_.substitute(v, value);
    if (d.is_zero()) throw domain_error("pole of rational function");
    return RatFunc(num_.substitute(v, value), d);
}

BigRat RatFunc::eval(const BigRat& n, const BigRat& z) const {
    BigRat d = den_.eval(n, z);
    if (d == 0) throw domain_error("pole of rational function");
    return num_.eval(n, z) / d;
}

std::string RatFunc::to_string() const {
    if (den_ == Poly(1)) return num_.to_string();
    std::string num = num_.to_string();
    if (num_.terms().size() > 1) num = "(" + num + ")";
    std::string den = den_.to_string();
    const auto& t = den_.terms();
    bool bare = t.size() == 1 && ((t[0].exp[0] == 0) != (t[0].exp[1] == 0));
    if (!bare) den = "(" + den + ")";
    return num + "/" + den;
}

RatFunc parse_ratfunc(std::string_view text) {
    return parse_expression<RatFunc>(text, [](std::string_view name, std::size_t pos) {
        if (name == "n") return RatFunc::var(Var::n);
        if (name == "z") return RatFunc::var(Var::z);
        throw ParseError("unknown symbol '" + std::string(name) + "'", pos);
    });
}

}  // namespace mastercount::kernel
