#include "mastercount/hyper/param.hpp"

#include "mastercount/kernel/error.hpp"

namespace mastercount::hyper {

using kernel::Var;

ParamExpr ParamExpr::parse(std::string_view text) {
    RatFunc f = kernel::parse_ratfunc(text);
    if (!f.is_polynomial() || f.uses(Var::z) || f.num().degree(Var::n) > 1)
        throw domain_error("parameter '" + std::string(text) + "' is not affine in n");
    BigRat inv = BigRat(1) / f.den().leading_coeff();
    Poly p = f.num() * inv;
    ParamExpr e;
    for (const auto& t : p.terms()) (t.exp[0] == 1 ? e.c1 : e.c0) = t.coeff;
    return e;
}

std::optional<long> ParamExpr::integer_offset_from(const ParamExpr& other) const {
    if (c1 != other.c1) return std::nullopt;
    BigRat d = c0 - other.c0;
    if (!kernel::is_integer(d) || !d.get_num().fits_slong_p()) return std::nullopt;
    return d.get_num().get_si();
}

Poly ParamExpr::to_poly() const {
    return Poly(c0) + Poly::var(Var::n) * c1;
}

BigFloat ParamExpr::eval(const BigFloat& n) const {
    mpfr_prec_t bits = n.precision();
    return BigFloat(c0, bits) + BigFloat(c1, bits) * n;
}

namespace {

// "n", "-n", "n/2", "3*n/2"; sign handled by the caller when `unsigned_form`.
std::string n_term(const BigRat& c) {
    BigRat a = abs(c);
    std::string s;
    if (a.get_num() != 1) s = a.get_num().get_str() + "*";
    s += "n";
    if (a.get_den() != 1) s += "/" + a.get_den().get_str();
    return s;
}

}  // namespace

std::string ParamExpr::to_string() const {
    if (c1 == 0) return kernel::to_string(c0);
    if (c0 == 0) return (c1 < 0 ? "-" : "") + n_term(c1);
    // Common denominator form for things like (n-1)/2.
    if (c0.get_den() == c1.get_den() && c0.get_den() != 1) {
        BigRat a = c1 * c0.get_den(), b = c0 * c0.get_den();
        ParamExpr inner(b, a);
        return "(" + inner.to_string() + ")/" + c0.get_den().get_str();
    }
    if (c1 > 0) {
        std::string cs = kernel::to_string(abs(c0));
        return n_term(c1) + (c0 < 0 ? "-" : "+") + cs;
    }
    return kernel::to_string(c0) + "-" + n_term(c1);
}

}  // namespace mastercount::hyper
