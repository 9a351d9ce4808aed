#include "mastercount/sunset/representation.hpp"

#include "mastercount/hyper/series.hpp"
#include "mastercount/kernel/error.hpp"
#include "mastercount/kernel/gamma.hpp"

#include <algorithm>
#include <map>

namespace mastercount::sunset {

using kernel::make_rat;
using kernel::Poly;

std::string SunsetIndices::to_string() const {
    return "J(" + std::to_string(sigma) + "," + std::to_string(beta) + "," + std::to_string(alpha) + ")";
}

SunsetIndices parse_indices(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.size() > 3 && s.front() == 'J' && s[1] == '(' && s.back() == ')') s = s.substr(2, s.size() - 3);
    long v[3];
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        std::size_t used = 0;
        try {
            v[i] = std::stol(s.substr(pos), &used);
        } catch (const std::exception&) {
            throw domain_error("malformed sunset indices: " + std::string(text));
        }
        pos += used;
        if (i < 2) {
            if (pos >= s.size() || s[pos] != ',') throw domain_error("malformed sunset indices: " + std::string(text));
            ++pos;
        }
    }
    if (pos != s.size()) throw domain_error("malformed sunset indices: " + std::string(text));
    return {v[0], v[1], v[2]};
}

GammaProduct& GammaProduct::mul_gamma(const ParamExpr& arg, int exp) {
    if (exp == 0) return *this;
    auto it = std::lower_bound(factors_.begin(), factors_.end(), arg,
                               [](const auto& f, const ParamExpr& a) { return f.first < a; });
    if (it != factors_.end() && it->first == arg) {
        it->second += exp;
        if (it->second == 0) factors_.erase(it);
    } else {
        factors_.insert(it, {arg, exp});
    }
    return *this;
}

GammaProduct& GammaProduct::mul(const GammaProduct& o) {
    for (const auto& [a, e] : o.factors_) mul_gamma(a, e);
    power_z4 = power_z4 + o.power_z4;
    power_M2 = power_M2 + o.power_M2;
    return *this;
}

GammaProduct GammaProduct::inverse() const {
    GammaProduct g;
    for (const auto& [a, e] : factors_) g.mul_gamma(a, -e);
    g.power_z4 = -power_z4;
    g.power_M2 = -power_M2;
    return g;
}

std::optional<RatFunc> GammaProduct::ratio_to(const GammaProduct& o) const {
    GammaProduct q = *this;
    q.mul(o.inverse());
    if (!q.power_M2.is_zero()) return std::nullopt;
    if (!q.power_z4.is_constant() || !kernel::is_integer(q.power_z4.c0)) return std::nullopt;

    // Arguments in one class differ by integers: Gamma(x+k) = (x)_k Gamma(x).
    std::map<std::pair<BigRat, BigRat>, std::vector<std::pair<ParamExpr, int>>> classes;
    for (const auto& [a, e] : q.factors()) {
        BigRat frac = a.c0 - BigRat(mpz_class(a.c0.get_num() / a.c0.get_den()));
        if (frac < 0) frac += 1;
        classes[{a.c1, frac}].push_back({a, e});
    }
    RatFunc r(1);
    for (const auto& [key, members] : classes) {
        const ParamExpr& base = members.front().first;  // factors are sorted, so this has the smallest c0
        int total = 0;
        for (const auto& [a, e] : members) {
            total += e;
            long k = *a.integer_offset_from(base);
            RatFunc p(kernel::pochhammer(base.to_poly(), static_cast<unsigned>(k)));
            r *= p.pow(e);
        }
        if (total != 0) return std::nullopt;
    }
    long k = q.power_z4.c0.get_num().get_si();
    r *= (RatFunc::var(kernel::Var::z) / 4).pow(static_cast<int>(k));
    return r;
}

BigFloat GammaProduct::eval(const BigRat& n0, const BigRat& z0, int prec) const {
    mpfr_prec_t bits = kernel::bits_for_digits(prec);
    BigFloat v(1L, bits);
    for (const auto& [a, e] : factors_) {
        BigFloat g = kernel::gamma(a.eval(n0), prec);
        v = v * kernel::pow(g, static_cast<long>(e));
    }
    BigRat pz = power_z4.eval(n0);
    if (pz != 0) {
        if (z0 == 0) {
            if (pz < 0) throw domain_error("singular at z = 0");
            return BigFloat(0L, bits);
        }
        v = v * kernel::pow(BigFloat(BigRat(z0 / 4), bits), BigFloat(pz, bits));
    }
    return v;
}

std::string GammaProduct::to_string() const {
    std::string num, den;
    auto append = [](std::string& s, const std::string& item) { s += (s.empty() ? "" : "*") + item; };
    for (const auto& [a, e] : factors_) {
        std::string g = "Gamma(" + a.to_string() + ")";
        int k = std::abs(e);
        if (k != 1) g += "^" + std::to_string(k);
        append(e > 0 ? num : den, g);
    }
    if (!power_z4.is_zero()) append(num, "(z/4)^(" + power_z4.to_string() + ")");
    if (!power_M2.is_zero()) append(num, "(M2)^(" + power_M2.to_string() + ")");
    if (num.empty()) num = "1";
    if (den.empty()) return num;
    return num + "/" + (den.find('*') == std::string::npos ? den : "(" + den + ")");
}

nlohmann::json to_json(const GammaProduct& g) {
    nlohmann::json fs = nlohmann::json::array();
    for (const auto& [a, e] : g.factors()) fs.push_back({{"arg", a.to_string()}, {"exp", e}});
    return {{"gammas", fs}, {"z4_exponent", g.power_z4.to_string()}, {"M2_exponent", g.power_M2.to_string()}};
}

GammaProduct gamma_product_from_json(const nlohmann::json& j) {
    GammaProduct g;
    for (const auto& f : j.at("gammas")) g.mul_gamma(ParamExpr::parse(f.at("arg").get<std::string>()), f.at("exp").get<int>());
    g.power_z4 = ParamExpr::parse(j.at("z4_exponent").get<std::string>());
    g.power_M2 = ParamExpr::parse(j.at("M2_exponent").get<std::string>());
    return g;
}

nlohmann::json to_json(const HyperCombo& h) {
    nlohmann::json ts = nlohmann::json::array();
    for (const auto& t : h.terms)
        ts.push_back({{"prefactor", to_json(t.gamma)}, {"coeff", t.coeff.to_string()}, {"pfq", hyper::to_json(t.f)},
                      {"text", t.f.to_string()}});
    return {{"terms", ts}};
}

HyperCombo hyper_combo_from_json(const nlohmann::json& j) {
    HyperCombo h;
    for (const auto& t : j.at("terms"))
        h.terms.push_back({gamma_product_from_json(t.at("prefactor")), kernel::parse_ratfunc(t.at("coeff").get<std::string>()),
                           hyper::pfq_from_json(t.at("pfq"))});
    return h;
}

HyperCombo build_representation(const SunsetIndices& idx) {
    if (idx.sigma < 1 || idx.beta < 1 || idx.alpha < 1)
        throw domain_error("representation undefined; use IBP module");
    const BigRat s(idx.sigma), b(idx.beta), a(idx.alpha);
    const ParamExpr n(0, 1), half_n(0, make_rat(1, 2));

    GammaProduct common;
    common.mul_gamma(half_n - s, 1)
        .mul_gamma(ParamExpr(s), -1)
        .mul_gamma(ParamExpr(a), -1)
        .mul_gamma(ParamExpr(b), -1)
        .mul_gamma(half_n, -1);
    common.power_M2 = n - (s + a + b);

    GammaProduct g1 = common;
    g1.mul_gamma(half_n - b, 1).mul_gamma(ParamExpr(a + b + s) - n, 1).mul_gamma(ParamExpr(b + s) - half_n, 1);
    PFQ f1({ParamExpr(a + b + s) - n, ParamExpr(b + s) - half_n, ParamExpr(b / 2), ParamExpr((1 + b) / 2)},
           {ParamExpr(1 + b) - half_n, ParamExpr(b), half_n});

    GammaProduct g2 = common;
    g2.mul_gamma(ParamExpr(b) - half_n, 1).mul_gamma(ParamExpr(s), 1).mul_gamma(ParamExpr(a + s) - half_n, 1);
    g2.power_z4 = half_n - b;
    PFQ f2({ParamExpr(s), ParamExpr(a + s) - half_n, ParamExpr(-b / 2, make_rat(1, 2)), ParamExpr((1 - b) / 2, make_rat(1, 2))},
           {half_n + (1 - b), n - b, half_n});

    return {{{g1, RatFunc(1), f1}, {g2, RatFunc(1), f2}}};
}

HyperCombo collapse(const HyperCombo& h) {
    HyperCombo out;
    for (const auto& t : h.terms) {
        HyperTerm c{GammaProduct(), t.coeff, hyper::cancel_params(t.f)};
        c.gamma.power_z4 = t.gamma.power_z4;
        c.gamma.power_M2 = t.gamma.power_M2;
        for (const auto& [a, e] : t.gamma.factors()) {
            if (a.is_constant() && kernel::is_integer(a.c0) && a.c0 > 0) {
                BigRat g = kernel::pochhammer(BigRat(1), static_cast<unsigned>(a.c0.get_num().get_ui() - 1));
                c.coeff *= RatFunc(g).pow(e);
            } else {
                c.gamma.mul_gamma(a, e);
            }
        }
        out.terms.push_back(std::move(c));
    }
    return out;
}

BigFloat eval_J(const SunsetIndices& idx, const BigRat& eps, const BigRat& z0, int prec) {
    if (z0 < 0 || z0 >= 1) throw domain_error("outside convergence domain");
    const BigRat n0 = n_from_eps(eps);
    HyperCombo h = collapse(build_representation(idx));
    mpfr_prec_t bits = kernel::bits_for_digits(prec);
    BigFloat total(0L, bits);
    for (const auto& t : h.terms) {
        BigFloat g(0L, bits);
        try {
            g = t.gamma.eval(n0, z0, prec);
        } catch (const Error& e) {
            if (std::string(e.what()) == "gamma pole") throw domain_error("gamma pole at this eps");
            throw;
        }
        if (g.is_zero()) continue;
        BigFloat c(t.coeff.eval(n0, z0), bits);
        total = total + g * c * hyper::series_sum(t.f, z0, n0, prec);
    }
    return total;
}

}  // namespace mastercount::sunset
