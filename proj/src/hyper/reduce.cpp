#include "mastercount/hyper/reduce.hpp"

#include "mastercount/kernel/error.hpp"

#include <algorithm>
#include <numeric>

namespace mastercount::hyper {

using kernel::Var;

namespace {

const RatFunc& z_symbol() {
    static const RatFunc z = RatFunc::var(Var::z);
    return z;
}

// theta + c
ThetaPoly theta_plus(const RatFunc& c) { return ThetaPoly(std::vector<RatFunc>{c, RatFunc(1)}); }

}  // namespace

ThetaPoly ode_operator(const PFQ& f) {
    ThetaPoly lhs = ThetaPoly::theta();
    for (const auto& b : f.lower()) lhs = lhs * theta_plus((b - BigRat(1)).to_ratfunc());
    ThetaPoly rhs(RatFunc(1));
    for (const auto& a : f.upper()) rhs = rhs * theta_plus(a.to_ratfunc());
    return lhs - z_symbol() * rhs;
}

ThetaPoly theta_reduce(const PFQ& f, const ThetaPoly& op) {
    const int r = f.order();
    if (op.degree() < r) return op;
    const ThetaPoly ode = ode_operator(f);
    const RatFunc lead = ode.coeff(r);
    // theta^r F = sum_k red[k] theta^k F
    std::vector<RatFunc> red(r);
    for (int k = 0; k < r; ++k) red[k] = -ode.coeff(k) / lead;

    std::vector<RatFunc> out(r);
    for (int i = 0; i < r; ++i) out[i] = op.coeff(i);
    std::vector<RatFunc> e = red;
    for (int m = r; m <= op.degree(); ++m) {
        if (m > r) {
            // theta applied to sum_k e_k theta^k, folding theta^r back in.
            std::vector<RatFunc> next(r);
            for (int k = 0; k < r; ++k) next[k] = e[k].theta();
            for (int k = 1; k < r; ++k) next[k] += e[k - 1];
            if (!e[r - 1].is_zero())
                for (int k = 0; k < r; ++k) next[k] += e[r - 1] * red[k];
            e = std::move(next);
        }
        const RatFunc c = op.coeff(m);
        if (c.is_zero()) continue;
        for (int k = 0; k < r; ++k) out[k] += c * e[k];
    }
    return ThetaPoly(std::move(out));
}

std::pair<ThetaPoly, PFQ> raise_upper(const PFQ& f, std::size_t which) {
    const ParamExpr& a = f.upper().at(which);
    if (a.is_zero()) throw domain_error("zero parameter, operator singular");
    RatFunc inv = RatFunc(1) / a.to_ratfunc();
    return {ThetaPoly(std::vector<RatFunc>{RatFunc(1), inv}), f};
}

std::pair<ThetaPoly, PFQ> lower_lower(const PFQ& f, std::size_t which) {
    const ParamExpr bm1 = f.lower().at(which) - BigRat(1);
    if (bm1.is_zero()) throw domain_error("operator singular");
    RatFunc inv = RatFunc(1) / bm1.to_ratfunc();
    return {ThetaPoly(std::vector<RatFunc>{RatFunc(1), inv}), f};
}

namespace {

struct Assignment {
    bool any_integer = false;
    bool found = false;
    std::vector<long> shift;       // per target parameter, in target order
};

// Pairs every parameter of `from` with one of `to` differing by an integer.
// `raising` selects the admissible sign (from - to >= 0 for uppers, <= 0 for lowers).
Assignment assign(const std::vector<ParamExpr>& from, const std::vector<ParamExpr>& to, bool raising) {
    Assignment best;
    std::vector<std::size_t> perm(to.size());
    std::iota(perm.begin(), perm.end(), 0);
    long best_total = -1;
    do {
        std::vector<long> shift(to.size());
        bool integer = true, admissible = true;
        long total = 0;
        for (std::size_t i = 0; i < from.size() && integer; ++i) {
            auto d = from[i].integer_offset_from(to[perm[i]]);
            if (!d) {
                integer = false;
                break;
            }
            if (raising ? *d < 0 : *d > 0) admissible = false;
            shift[perm[i]] = *d;
            total += std::abs(*d);
        }
        if (!integer) continue;
        best.any_integer = true;
        if (admissible && (best_total < 0 || total < best_total)) {
            best_total = total;
            best.found = true;
            best.shift = shift;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::size_t index_of(const std::vector<ParamExpr>& v, const ParamExpr& e) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), e) - v.begin());
}

ReducedForm reduce_same_shape(const PFQ& g, const PFQ& t) {
    Assignment up = assign(g.upper(), t.upper(), true);
    Assignment lo = assign(g.lower(), t.lower(), false);
    if (!up.any_integer || !lo.any_integer) throw domain_error("target is not reachable by integer shifts");
    if (!up.found || !lo.found) throw domain_error("unsupported shift direction");

    PFQ cur = t;
    ThetaPoly op(RatFunc(1));
    int steps = 0;
    for (std::size_t i = 0; i < t.upper().size(); ++i) {
        ParamExpr v = t.upper()[i];
        for (long s = 0; s < up.shift[i]; ++s) {
            std::size_t idx = index_of(cur.upper(), v);
            op = raise_upper(cur, idx).first * op;
            cur = cur.with_upper_shifted(idx, 1);
            v = v + BigRat(1);
            ++steps;
        }
    }
    for (std::size_t j = 0; j < t.lower().size(); ++j) {
        ParamExpr v = t.lower()[j];
        for (long s = 0; s < -lo.shift[j]; ++s) {
            std::size_t idx = index_of(cur.lower(), v);
            op = lower_lower(cur, idx).first * op;
            cur = cur.with_lower_shifted(idx, -1);
            v = v - BigRat(1);
            ++steps;
        }
    }
    if (cur != g) throw Error(ErrorKind::contradiction, "shift bookkeeping failed for " + g.to_string());
    return {t, theta_reduce(t, op), RatFunc(0), steps};
}

ReducedForm reduce_impl(const PFQ& f, const PFQ& t);

// pFq(1, a; m, b; z) = C z^(1-m) [F(a-m+1; b-m+1; z) - sum_{j<m-1} (...) z^j]
ReducedForm collapse_unit(const PFQ& g, const PFQ& t) {
    std::optional<Error> last;
    for (std::size_t iu = 0; iu < g.upper().size(); ++iu) {
        if (!g.upper()[iu].is_one()) continue;
        for (std::size_t il = 0; il < g.lower().size(); ++il) {
            const ParamExpr& lm = g.lower()[il];
            if (!lm.is_constant() || !kernel::is_integer(lm.c0) || lm.c0 < 2) continue;
            const long m = lm.c0.get_num().get_si();
            std::vector<ParamExpr> up, lo;
            for (std::size_t i = 0; i < g.upper().size(); ++i)
                if (i != iu) up.push_back(g.upper()[i] - BigRat(m - 1));
            for (std::size_t j = 0; j < g.lower().size(); ++j)
                if (j != il) lo.push_back(g.lower()[j] - BigRat(m - 1));

            RatFunc c = 1;
            for (long k = 2; k < m; ++k) c *= RatFunc(k);
            bool singular = false;
            for (const auto& b : lo) c *= RatFunc(kernel::pochhammer(b.to_poly(), static_cast<unsigned>(m - 1)));
            for (const auto& a : up) {
                Poly pa = kernel::pochhammer(a.to_poly(), static_cast<unsigned>(m - 1));
                if (pa.is_zero()) singular = true;
                else c /= RatFunc(pa);
            }
            RatFunc head;
            RatFunc coeff = 1;
            for (long j = 0; j <= m - 2 && !singular; ++j) {
                head += coeff * z_symbol().pow(static_cast<int>(j));
                for (const auto& a : up) coeff *= a.to_ratfunc() + RatFunc(j);
                for (const auto& b : lo) {
                    RatFunc d = b.to_ratfunc() + RatFunc(j);
                    if (d.is_zero()) singular = true;
                    else coeff /= d;
                }
                coeff /= RatFunc(j + 1);
            }
            if (singular) continue;
            try {
                ReducedForm inner = reduce_impl(PFQ(up, lo), t);
                RatFunc factor = c * z_symbol().pow(static_cast<int>(1 - m));
                return {t, factor * inner.op, factor * (inner.remainder - head), inner.steps};
            } catch (const Error& e) {
                last = e;
            }
        }
    }
    if (last) throw *last;
    throw domain_error("unsupported shift direction");
}

ReducedForm reduce_impl(const PFQ& f, const PFQ& t) {
    PFQ g = cancel_params(f);
    if (g == t) return {t, ThetaPoly(RatFunc(1)), RatFunc(0), 0};
    if (g.p() == t.p() && g.q() == t.q()) return reduce_same_shape(g, t);
    if (g.p() == t.p() + 1 && g.q() == t.q() + 1) return collapse_unit(g, t);
    throw domain_error("target " + t.to_string() + " is not reachable from " + g.to_string());
}

}  // namespace

ReducedForm reduce_shifts(const PFQ& f, const PFQ& target) {
    return reduce_impl(f, cancel_params(target));
}

int basis_count(const PFQ& f) {
    PFQ g = cancel_params(f);
    int units = static_cast<int>(std::count_if(g.upper().begin(), g.upper().end(), [](const ParamExpr& e) { return e.is_one(); }));
    return std::max(0, g.order() - units);
}

BigFloat eval_reduced(const ReducedForm& r, const Number& z0, const Number& n0, int prec) {
    const mpfr_prec_t bits = kernel::bits_for_digits(prec);
    auto values = series_theta_all(r.basis, std::max(0, r.op.degree()), z0, n0, prec);
    BigFloat n = to_bigfloat(n0, bits), z = to_bigfloat(z0, bits);
    return r.op.eval(values, n, z) + kernel::eval(r.remainder, n, z);
}

}  // namespace mastercount::hyper
