#include "mastercount/sunset/relation.hpp"

#include "mastercount/kernel/expr_parser.hpp"
#include "mastercount/kernel/linsolve.hpp"

namespace mastercount::sunset {

using hyper::ThetaPoly;
using kernel::make_rat;
using kernel::Var;

namespace {

const RatFunc nvar = RatFunc::var(Var::n);
const RatFunc zvar = RatFunc::var(Var::z);

bool needs_parens(const std::string& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == '+' || s[i] == '-') return true;
    return false;
}

}  // namespace

DimCoeff::DimCoeff(const RatFunc& c, int m2_power, int M2_power) {
    add({m2_power, M2_power}, c);
}

void DimCoeff::add(const Monomial& m, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DimCoeff DimCoeff::operator-() const {
    DimCoeff r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

DimCoeff operator+(const DimCoeff& a, const DimCoeff& b) {
    DimCoeff r = a;
    for (const auto& [m, c] : b.terms_) r.add(m, c);
    return r;
}

DimCoeff operator-(const DimCoeff& a, const DimCoeff& b) { return a + (-b); }

DimCoeff operator*(const DimCoeff& a, const DimCoeff& b) {
    DimCoeff r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add({ma.first + mb.first, ma.second + mb.second}, ca * cb);
    return r;
}

DimCoeff operator/(const DimCoeff& a, const DimCoeff& b) {
    if (b.terms_.size() != 1) throw domain_error("division by a sum of mass monomials");
    const auto& [mb, cb] = *b.terms_.begin();
    DimCoeff r;
    for (const auto& [ma, ca] : a.terms_) r.add({ma.first - mb.first, ma.second - mb.second}, ca / cb);
    return r;
}

DimCoeff DimCoeff::equal_mass() const {
    DimCoeff r;
    for (const auto& [m, c] : terms_) r.add({m.first + m.second, 0}, c);
    return r;
}

BigRat DimCoeff::eval(const BigRat& n0, const BigRat& z0) const {
    BigRat v = 0;
    const BigRat m2 = z0 / 4;
    for (const auto& [m, c] : terms_) {
        BigRat t = c.eval(n0, z0);
        if (m.first != 0) {
            if (m2 == 0) {
                if (m.first < 0) throw domain_error("pole of rational function");
                continue;
            }
            BigRat p = 1;
            for (int i = 0; i < std::abs(m.first); ++i) p *= m2;
            if (m.first > 0) t *= p; else t /= p;
        }
        v += t;
    }
    return v;
}

std::string DimCoeff::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        std::string pos, neg;
        auto factor = [](const char* sym, int k) { return std::string(sym) + (k == 1 ? "" : "^" + std::to_string(k)); };
        if (m.first > 0) pos += (pos.empty() ? "" : "*") + factor("m2", m.first);
        if (m.second > 0) pos += (pos.empty() ? "" : "*") + factor("M2", m.second);
        if (m.first < 0) neg += "/" + factor("m2", -m.first);
        if (m.second < 0) neg += "/" + factor("M2", -m.second);
        std::string cs = c.to_string();
        std::string t;
        if (pos.empty() && neg.empty())
            t = cs;
        else if (pos.empty())
            t = (needs_parens(cs) ? "(" + cs + ")" : cs) + neg;
        else if (cs == "1")
            t = pos + neg;
        else if (cs == "-1")
            t = "-" + pos + neg;
        else
            t = (needs_parens(cs) ? "(" + cs + ")" : cs) + "*" + pos + neg;
        if (!out.empty() && t[0] != '-') out += "+";
        out += t;
    }
    return out;
}

DimCoeff parse_dimcoeff(std::string_view text) {
    auto resolve = [](std::string_view name, std::size_t pos) -> DimCoeff {
        if (name == "n") return DimCoeff(nvar);
        if (name == "m2") return DimCoeff(RatFunc(1), 1, 0);
        if (name == "M2") return DimCoeff(RatFunc(1), 0, 1);
        throw kernel::ParseError("unknown symbol '" + std::string(name) + "'", pos);
    };
    return kernel::parse_expression<DimCoeff>(text, resolve);
}

const PFQ& basis_Fx() {
    static const PFQ f({ParamExpr::parse("1/2"), ParamExpr::parse("3-n")}, {ParamExpr::parse("n/2")});
    return f;
}

const PFQ& basis_Fy() {
    static const PFQ f({ParamExpr::parse("1"), ParamExpr::parse("(n-1)/2"), ParamExpr::parse("2-n/2")},
                       {ParamExpr::parse("n/2"), ParamExpr::parse("n-1")});
    return f;
}

GammaProduct prefactor_A() {
    GammaProduct g;
    g.mul_gamma(ParamExpr::parse("n/2-1"), 1).mul_gamma(ParamExpr::parse("3-n"), 1).mul_gamma(ParamExpr::parse("2-n/2"), 1);
    return g;
}

GammaProduct prefactor_B() {
    GammaProduct g;
    g.mul_gamma(ParamExpr::parse("1-n/2"), 1).mul_gamma(ParamExpr::parse("2-n/2"), 1);
    g.power_z4 = ParamExpr::parse("n/2-1");
    return g;
}

const std::array<SunsetIndices, 3>& sunset_masters() {
    static const std::array<SunsetIndices, 3> m{{{1, 1, 1}, {1, 2, 1}, {1, 1, 2}}};
    return m;
}

XYCoords decompose_xy(const SunsetIndices& idx) {
    const auto& ms = sunset_masters();
    if (std::find(ms.begin(), ms.end(), idx) == ms.end()) throw domain_error("not a master");
    HyperCombo h = collapse(build_representation(idx));
    const GammaProduct A = prefactor_A(), B = prefactor_B();
    const RatFunc half = nvar / 2 - 1;

    XYCoords out{{RatFunc(0), RatFunc(0), RatFunc(0)}, {RatFunc(0), RatFunc(0)}};
    bool have_x = false, have_y = false;
    for (const auto& t : h.terms) {
        GammaProduct g = t.gamma;
        g.power_M2 = g.power_M2 + ParamExpr(BigRat(idx.total()), -1);  // X normalization
        if (auto r = g.ratio_to(A); r && !have_x) {
            hyper::ReducedForm red = hyper::reduce_shifts(t.f, basis_Fx());
            RatFunc c = half * t.coeff * *r;
            out.x = {c * red.remainder, c * red.op.coeff(0), c * red.op.coeff(1)};
            have_x = true;
        } else if (auto r2 = g.ratio_to(B); r2 && !have_y) {
            hyper::ReducedForm red = hyper::reduce_shifts(t.f, basis_Fy());
            if (!red.remainder.is_zero()) throw contradiction_error("rational remainder on the y-line");
            RatFunc c = half * t.coeff * *r2;
            out.y = {c * red.op.coeff(0), c * red.op.coeff(1)};
            have_y = true;
        } else {
            throw contradiction_error("representation term does not match the prefactors A, B");
        }
    }
    if (!have_x || !have_y) throw contradiction_error("representation term does not match the prefactors A, B");
    return out;
}

namespace {

kernel::RatMatrix relation_system() {
    kernel::RatMatrix m(5, std::vector<RatFunc>(4, RatFunc(0)));
    const auto& ms = sunset_masters();
    for (int i = 0; i < 3; ++i) {
        XYCoords c = decompose_xy(ms[i]);
        for (int s = 0; s < 3; ++s) m[s][i] = c.x[s];
        for (int s = 0; s < 2; ++s) m[3 + s][i] = c.y[s];
    }
    m[0][3] = RatFunc(-1);  // mu on the constant slot
    return m;
}

}  // namespace

int relation_nullity() { return static_cast<int>(kernel::nullspace(relation_system()).size()); }

RelationSolution find_relation() {
    auto ns = kernel::nullspace(relation_system());
    if (ns.size() != 1) throw contradiction_error("relation count mismatch");
    auto v = ns[0];
    if (v[2].is_zero()) throw contradiction_error("relation does not involve J(1,1,2)");
    RatFunc scale = RatFunc(2) / v[2];
    RelationSolution sol;
    for (int i = 0; i < 4; ++i) {
        RatFunc e = v[i] * scale;
        if (!e.is_polynomial()) throw contradiction_error("relation is not polynomial after normalization");
        Poly p = e.num() * (BigRat(1) / e.den().constant_term());
        if (i < 3)
            sol.lambdas[i] = p;
        else
            sol.mu = p;
    }
    return sol;
}

Relation assemble_main(const RelationSolution& sol) {
    Relation rel;
    const auto& ms = sunset_masters();
    for (int i = 0; i < 3; ++i) {
        DimCoeff c;
        int base = static_cast<int>(ms[i].total()) - 3;
        for (const auto& t : sol.lambdas[i].terms()) {
            int zp = t.exp[1];
            BigRat four_k = 1;
            for (int k = 0; k < zp; ++k) four_k *= 4;
            RatFunc cn(Poly::monomial({t.exp[0], 0}, t.coeff * four_k));
            c = c + DimCoeff(cn, zp, base - zp);
        }
        rel.lhs.push_back({ms[i], c});
    }
    rel.multiplier = RatFunc(sol.mu) / (nvar / 2 - 1);
    rel.gammas = prefactor_A();
    rel.mass_exponent = ParamExpr(-3, 1);
    return rel;
}

RelationSolution renormalize(const Relation& rel) {
    if (rel.equal_mass) throw domain_error("equal-mass relation cannot be renormalized");
    RelationSolution sol;
    const auto& ms = sunset_masters();
    for (const auto& [idx, c] : rel.lhs) {
        auto it = std::find(ms.begin(), ms.end(), idx);
        if (it == ms.end()) throw domain_error("not a master");
        int base = static_cast<int>(idx.total()) - 3;
        RatFunc lam(0);
        for (const auto& [m, cn] : c.terms()) {
            if (m.first < 0 || m.first + m.second != base) throw domain_error("inconsistent mass dimensions");
            lam += cn * (zvar / 4).pow(m.first);
        }
        if (!lam.is_polynomial()) throw domain_error("coefficient is not polynomial");
        sol.lambdas[it - ms.begin()] = lam.num() * (BigRat(1) / lam.den().constant_term());
    }
    RatFunc mu = rel.multiplier * (nvar / 2 - 1);
    if (!mu.is_polynomial()) throw domain_error("coefficient is not polynomial");
    sol.mu = mu.num() * (BigRat(1) / mu.den().constant_term());
    return sol;
}

Relation equal_mass_specialize(const Relation& rel) {
    Relation out;
    out.multiplier = rel.multiplier;
    out.gammas = rel.gammas;
    out.mass_exponent = rel.mass_exponent;
    out.equal_mass = true;
    const SunsetIndices swapped{1, 2, 1}, kept{1, 1, 2};
    DimCoeff merged;
    bool have_merged = false;
    for (const auto& [idx, c] : rel.lhs) {
        DimCoeff e = c.equal_mass();
        if (idx == swapped || idx == kept) {
            merged = merged + e;
            have_merged = true;
        } else {
            out.lhs.push_back({idx, e});
        }
    }
    if (have_merged && !merged.is_zero()) out.lhs.push_back({kept, merged});
    return out;
}

bool dimensions_consistent(const Relation& rel) {
    for (const auto& [idx, c] : rel.lhs)
        for (const auto& [m, cn] : c.terms())
            if (m.first + m.second != idx.total() - 3) return false;
    return rel.mass_exponent == ParamExpr(-3, 1);
}

std::string Relation::to_string() const {
    std::string s;
    for (const auto& [idx, c] : lhs) {
        std::string cs = c.to_string();
        std::string t = (needs_parens(cs) ? "(" + cs + ")" : cs) + "*" + idx.to_string();
        if (!s.empty()) s += t[0] == '-' ? " - " + t.substr(1) : " + " + t;
        else s = t;
    }
    std::string mult = multiplier.to_string();
    s += " = " + (needs_parens(mult) ? "(" + mult + ")" : mult);
    s += std::string("*(") + (equal_mass ? "m2" : "M2") + ")^(" + mass_exponent.to_string() + ")";
    for (const auto& [a, e] : gammas.factors()) {
        s += "*Gamma(" + a.to_string() + ")";
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

nlohmann::ordered_json to_json(const Relation& r) {
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::object();
    for (const auto& [idx, c] : r.lhs) coeffs[idx.to_string()] = c.to_string();
    nlohmann::ordered_json gs = nlohmann::ordered_json::array();
    for (const auto& [a, e] : r.gammas.factors()) gs.push_back({{"arg", a.to_string()}, {"exp", e}});
    nlohmann::ordered_json rhs = {{"multiplier", r.multiplier.to_string()}, {"gammas", gs},
                                  {"M2_exponent", r.mass_exponent.to_string()}};
    return {{"coeffs", coeffs}, {"rhs", rhs}, {"equal_mass", r.equal_mass}};
}

Relation relation_from_json(const nlohmann::ordered_json& j) {
    Relation r;
    for (const auto& [key, val] : j.at("coeffs").items())
        r.lhs.push_back({parse_indices(key), parse_dimcoeff(val.get<std::string>())});
    const auto& rhs = j.at("rhs");
    r.multiplier = kernel::parse_ratfunc(rhs.at("multiplier").get<std::string>());
    for (const auto& g : rhs.at("gammas"))
        r.gammas.mul_gamma(ParamExpr::parse(g.at("arg").get<std::string>()), g.at("exp").get<int>());
    r.mass_exponent = ParamExpr::parse(rhs.at("M2_exponent").get<std::string>());
    r.equal_mass = j.value("equal_mass", false);
    return r;
}

BigFloat verify_main_numeric(const Relation& rel, const BigRat& eps, const BigRat& z0, int prec) {
    if (rel.equal_mass) throw domain_error("equal-mass relation lies at z = 4, outside convergence domain");
    if (z0 < 0 || z0 >= 1) throw domain_error("outside convergence domain");
    const BigRat n0 = n_from_eps(eps);
    mpfr_prec_t bits = kernel::bits_for_digits(prec);
    BigFloat lhs(0L, bits);
    for (const auto& [idx, c] : rel.lhs) {
        BigRat cv = c.eval(n0, z0);
        if (cv == 0) continue;  // e.g. 4 m2 J(1,2,1) at z = 0, where J(1,2,1) itself diverges
        lhs = lhs + BigFloat(cv, bits) * eval_J(idx, eps, z0, prec);
    }
    BigFloat rhs(0L, bits);
    try {
        rhs = BigFloat(rel.multiplier.eval(n0, z0), bits) * rel.gammas.eval(n0, z0, prec);
    } catch (const Error& e) {
        if (std::string(e.what()) == "gamma pole") throw domain_error("gamma pole at this eps");
        throw;
    }
    return kernel::abs(lhs - rhs) / kernel::abs(rhs);
}

BigFloat verify_main_numeric(const BigRat& eps, const BigRat& z0, int prec) {
    return verify_main_numeric(assemble_main(find_relation()), eps, z0, prec);
}

RatFunc x_identity_at_n4(bool printed_form) {
    const BigRat n0 = 4;
    auto P = [](const char* s) { return ParamExpr::parse(s); };
    auto poly_at = [&](const PFQ& f) { return RatFunc(hyper::terminating_polynomial(f, n0)); };
    const BigRat a = 3 - n0;
    RatFunc x1 = poly_at(basis_Fx());
    RatFunc x3 = RatFunc(a) * poly_at(PFQ({P("1/2"), P("4-n")}, {P("n/2")}));
    PFQ inner = printed_form ? PFQ({P("1/2"), P("3-n")}, {P("n/2")}) : PFQ({P("1/2"), P("3-n")}, {P("n/2-1")});
    RatFunc x2 = RatFunc(a - 1) / zvar * (poly_at(inner) - 1);
    return RatFunc(3 * n0 - 8) * x1 + zvar * x2 + 2 * x3;
}

}  // namespace mastercount::sunset
