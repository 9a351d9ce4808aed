#include "mastercount/kernel/poly.hpp"

#include "mastercount/kernel/error.hpp"

#include <algorithm>
#include <utility>

namespace mastercount::kernel {

namespace {

int index(Var v) { return static_cast<int>(v); }

bool term_less(const Poly::Term& a, const Poly::Term& b) { return term_order_greater(a.exp, b.exp); }

// Degree-indexed coefficient vectors; each entry is free of the main variable.
using Dense = std::vector<Poly>;

void trim(Dense& d) {
    while (!d.empty() && d.back().is_zero()) d.pop_back();
}

int dense_degree(const Dense& d) { return static_cast<int>(d.size()) - 1; }

}  // namespace

Poly::Poly(const BigRat& c) {
    if (c != 0) terms_.push_back({{0, 0}, c});
}

Poly Poly::var(Var v) {
    Exponent e{0, 0};
    e[index(v)] = 1;
    return monomial(e, 1);
}

Poly Poly::monomial(Exponent exp, const BigRat& c) {
    Poly p;
    if (c != 0) p.terms_.push_back({exp, c});
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
    Poly p;
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
}

void Poly::normalize() {
    std::sort(terms_.begin(), terms_.end(), term_less);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().exp == t.exp)
            out.back().coeff += t.coeff;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.coeff == 0; }), out.end());
    terms_ = std::move(out);
}

BigRat Poly::constant_term() const {
    if (!terms_.empty() && terms_.back().exp == Exponent{0, 0}) return terms_.back().coeff;
    return 0;
}

int Poly::degree(Var v) const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exp[index(v)]);
    return terms_.empty() ? -1 : d;
}

int Poly::total_degree() const {
    return terms_.empty() ? -1 : terms_.front().exp[0] + terms_.front().exp[1];
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.is_zero()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() || j != o.terms_.end()) {
        if (j == o.terms_.end() || (i != terms_.end() && term_order_greater(i->exp, j->exp))) {
            out.push_back(std::move(*i++));
        } else if (i == terms_.end() || term_order_greater(j->exp, i->exp)) {
            out.push_back(*j++);
        } else {
            BigRat c = i->coeff + j->coeff;
            if (c != 0) out.push_back({i->exp, std::move(c)});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly& Poly::operator*=(const BigRat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.is_constant()) return a * b.terms_[0].coeff;
    if (a.is_constant()) return b * a.terms_[0].coeff;
    std::vector<Poly::Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) prod.push_back({{s.exp[0] + t.exp[0], s.exp[1] + t.exp[1]}, s.coeff * t.coeff});
    return Poly::from_terms(std::move(prod));
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

Poly Poly::pow(unsigned k) const {
    Poly r(1), base = *this;
    while (k) {
        if (k & 1u) r *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return r;
}

Poly Poly::derivative(Var v) const {
    std::vector<Term> out;
    int iv = index(v);
    for (const auto& t : terms_) {
        if (t.exp[iv] == 0) continue;
        Term d = t;
        d.coeff *= t.exp[iv];
        d.exp[iv] -= 1;
        out.push_back(std::move(d));
    }
    return from_terms(std::move(out));
}

Poly Poly::substitute(Var v, const BigRat& value) const {
    std::vector<Term> out;
    int iv = index(v);
    for (const auto& t : terms_) {
        Term s = t;
        BigRat f = 1;
        for (int k = 0; k < t.exp[iv]; ++k) f *= value;
        s.coeff *= f;
        s.exp[iv] = 0;
        out.push_back(std::move(s));
    }
    return from_terms(std::move(out));
}

bool Poly::try_divide(const Poly& d, Poly& q) const {
    if (d.is_zero()) throw domain_error("zero divisor");
    q = Poly();
    if (d.is_constant()) {
        q = *this * (BigRat(1) / d.terms_[0].coeff);
        return true;
    }
    Poly r = *this;
    const Term& ld = d.leading();
    std::vector<Term> qterms;
    while (!r.is_zero()) {
        const Term& lr = r.leading();
        if (lr.exp[0] < ld.exp[0] || lr.exp[1] < ld.exp[1]) return false;
        Term t{{lr.exp[0] - ld.exp[0], lr.exp[1] - ld.exp[1]}, lr.coeff / ld.coeff};
        Poly tp = Poly::monomial(t.exp, t.coeff);
        r -= tp * d;
        qterms.push_back(std::move(t));
    }
    q = from_terms(std::move(qterms));
    return true;
}

Poly Poly::divexact(const Poly& d) const {
    Poly q;
    if (!try_divide(d, q)) throw Error(ErrorKind::contradiction, "inexact polynomial division");
    return q;
}

std::vector<Poly> Poly::coefficients_in(Var v) const {
    int iv = index(v);
    std::vector<std::vector<Term>> buckets(std::max(0, degree(v) + 1));
    for (const auto& t : terms_) {
        Term s = t;
        s.exp[iv] = 0;
        buckets[t.exp[iv]].push_back(std::move(s));
    }
    std::vector<Poly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
    return out;
}

Poly Poly::from_coefficients(Var v, const std::vector<Poly>& coeffs) {
    std::vector<Term> out;
    int iv = index(v);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        for (const auto& t : coeffs[k].terms_) {
            Term s = t;
            s.exp[iv] += static_cast<int>(k);
            out.push_back(std::move(s));
        }
    return from_terms(std::move(out));
}

BigRat Poly::eval(const BigRat& n, const BigRat& z) const {
    BigRat acc = 0;
    std::vector<BigRat> np{1}, zp{1};
    for (const auto& t : terms_) {
        while (static_cast<int>(np.size()) <= t.exp[0]) np.push_back(np.back() * n);
        while (static_cast<int>(zp.size()) <= t.exp[1]) zp.push_back(zp.back() * z);
        acc += t.coeff * np[t.exp[0]] * zp[t.exp[1]];
    }
    return acc;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        BigRat c = t.coeff;
        bool neg = c < 0;
        if (neg) c = -c;
        std::string mono;
        auto add_var = [&](const char* name, int e) {
            if (e == 0) return;
            if (!mono.empty()) mono += "*";
            mono += name;
            if (e > 1) mono += "^" + std::to_string(e);
        };
        add_var("n", t.exp[0]);
        add_var("z", t.exp[1]);
        std::string body;
        if (mono.empty())
            body = kernel::to_string(c);
        else if (c == 1)
            body = mono;
        else
            body = kernel::to_string(c) + "*" + mono;
        if (first)
            out += neg ? "-" + body : body;
        else
            out += (neg ? "-" : "+") + body;
        first = false;
    }
    return out;
}

Poly pseudo_remainder(const Poly& a, const Poly& b, Var v) {
    Dense r = a.coefficients_in(v);
    Dense d = b.coefficients_in(v);
    trim(r);
    trim(d);
    int db = dense_degree(d);
    if (db < 0) throw domain_error("zero divisor");
    if (dense_degree(r) < db) return a;
    const Poly lcb = d.back();
    int e = dense_degree(r) - db + 1;
    while (!r.empty() && dense_degree(r) >= db) {
        Poly lcr = r.back();
        int shift = dense_degree(r) - db;
        for (auto& c : r) c *= lcb;
        for (int k = 0; k <= db; ++k) r[k + shift] -= lcr * d[k];
        trim(r);
        --e;
    }
    Poly out = Poly::from_coefficients(v, r);
    if (e > 0) out *= lcb.pow(static_cast<unsigned>(e));
    return out;
}

Poly content(const Poly& p, Var v) {
    if (p.is_zero()) return {};
    Dense c = p.coefficients_in(v);
    Poly g;
    for (const auto& ci : c) {
        if (ci.is_zero()) continue;
        g = g.is_zero() ? ci : gcd(g, ci);
        if (g.is_constant()) return Poly(1);
    }
    return g * (BigRat(1) / g.leading_coeff());
}

namespace {

Poly leading_in(const Poly& p, Var v) {
    Dense c = p.coefficients_in(v);
    trim(c);
    return c.back();
}

Poly primitive_in(const Poly& p, Var v) {
    Poly c = content(p, v);
    return c.is_constant() ? p : p.divexact(c);
}

// Collins subresultant sequence on primitive operands with deg_v(a) >= deg_v(b) > 0.
Poly subresultant_gcd(Poly a, Poly b, Var v) {
    Poly g(1), h(1);
    for (;;) {
        int delta = a.degree(v) - b.degree(v);
        Poly r = pseudo_remainder(a, b, v);
        if (r.is_zero()) return primitive_in(b, v);
        if (r.degree(v) == 0) return Poly(1);
        a = b;
        Poly div = g * h.pow(static_cast<unsigned>(delta));
        b = r.divexact(div);
        g = leading_in(a, v);
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = g.pow(static_cast<unsigned>(delta)).divexact(h.pow(static_cast<unsigned>(delta - 1)));
        }
    }
}

Poly monic(const Poly& p) { return p * (BigRat(1) / p.leading_coeff()); }

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.is_zero() ? Poly() : monic(b);
    if (b.is_zero()) return monic(a);
    if (a.is_constant() || b.is_constant()) return Poly(1);
    if (a == b) return monic(a);
    Var v = (a.uses(Var::z) || b.uses(Var::z)) ? Var::z : Var::n;
    Poly ca = content(a, v), cb = content(b, v);
    Poly c = gcd(ca, cb);
    Poly pa = ca.is_constant() ? a : a.divexact(ca);
    Poly pb = cb.is_constant() ? b : b.divexact(cb);
    if (pa.degree(v) <= 0 || pb.degree(v) <= 0) return monic(c);
    if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
    return monic(c * subresultant_gcd(pa, pb, v));
}

Poly pochhammer(const Poly& x, unsigned k) {
    Poly r(1);
    for (unsigned j = 0; j < k; ++j) r *= x + Poly(static_cast<long>(j));
    return r;
}

}  // namespace mastercount::kernel
