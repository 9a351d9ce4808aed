#include "doctest.h"

#include "mastercount/ibp/laporta.hpp"
#include "mastercount/kernel/linsolve.hpp"

#include <random>

using namespace mastercount;
using namespace mastercount::ibp;
using kernel::make_rat;
using kernel::pow10;
using kernel::Var;

namespace {

const RatFunc n = RatFunc::var(Var::n);
const RatFunc z = RatFunc::var(Var::z);

const ReductionTable& default_table() {
    static const ReductionTable t = laporta({2, 1});
    return t;
}

// Forward-mode dual numbers over exact rationals.
struct Dual {
    BigRat v, d;
};
Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
Dual powi(const Dual& a, int k) {
    // a^k for any integer k
    auto ipow = [&](int e) {
        BigRat r = 1;
        for (int i = 0; i < std::abs(e); ++i) r *= a.v;
        return e < 0 ? BigRat(1 / r) : r;
    };
    return {ipow(k), k == 0 ? BigRat(0) : BigRat(k * ipow(k - 1) * a.d)};
}

using DVec = std::vector<Dual>;
Dual dotv(const DVec& a, const DVec& b) {
    Dual s{0, 0};
    for (std::size_t i = 0; i < a.size(); ++i) s = s + a[i] * b[i];
    return s;
}
DVec sub(const DVec& a, const DVec& b) {
    DVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

// The five invariants for explicit Euclidean vectors, M^2 = 1, m^2 = -p^2.
std::array<Dual, 5> invariants(const DVec& k1, const DVec& k2, const DVec& p, const BigRat& m2) {
    return {dotv(sub(p, k1), sub(p, k1)), dotv(sub(k1, k2), sub(k1, k2)) + Dual{1, 0}, dotv(k2, k2) + Dual{m2, 0},
            dotv(k1, k1), dotv(k2, p)};
}

Dual integrand(const std::array<Dual, 5>& P, const FamilyIndex& a) {
    Dual f{1, 0};
    for (int j = 0; j < 5; ++j) f = f * powi(P[j], -a[j]);
    return f;
}

// sum_mu d/dl_mu (v_mu f) at a point, against the identity's right-hand side.
void check_pointwise(Momentum l, Momentum v, const FamilyIndex& seed, std::mt19937& rng, int dim) {
    std::uniform_int_distribution<int> pick(-9, 9);
    auto rvec = [&] {
        DVec x(dim);
        for (auto& c : x) c = {make_rat(pick(rng), 4), 0};
        return x;
    };
    DVec k1, k2, p;
    BigRat m2;
    for (;;) {
        k1 = rvec(), k2 = rvec(), p = rvec();
        m2 = -dotv(p, p).v;
        auto P = invariants(k1, k2, p, m2);
        if (std::all_of(P.begin(), P.end(), [](const Dual& x) { return x.v != 0; })) break;
    }
    BigRat lhs = 0;
    for (int mu = 0; mu < dim; ++mu) {
        DVec q1 = k1, q2 = k2;
        (l == Momentum::k1 ? q1 : q2)[mu].d = 1;
        const DVec& vv = v == Momentum::k1 ? q1 : v == Momentum::k2 ? q2 : p;
        lhs += (vv[mu] * integrand(invariants(q1, q2, p, m2), seed)).d;
    }
    auto P = invariants(k1, k2, p, m2);
    IBPIdentity id = gen_ibp(l, v, seed);
    BigRat rhs = 0;
    for (const auto& [s, c] : id.terms) {
        FamilyIndex a;
        for (int i = 0; i < 5; ++i) a[i] = seed[i] + s[i];
        rhs += c.at(seed).eval(BigRat(dim), 4 * m2) * integrand(P, a).v;
    }
    CHECK(lhs == rhs);
}

bool evaluable(const FamilyIndex& a) {
    if (a[3] != 0 || a[4] != 0) return false;
    return (a[0] >= 1 && a[1] >= 1 && a[2] >= 1) || (a[0] == 0 && a[1] >= 1 && a[2] >= 1);
}

}  // namespace

TEST_CASE("sp_map") {
    LinearForm k2sq = sp_map(Momentum::k2, Momentum::k2);
    CHECK(k2sq.d == std::array<BigRat, 5>{0, 0, 1, 0, 0});
    CHECK(k2sq.m2 == -1);
    LinearForm k1p = sp_map(Momentum::p, Momentum::k1);
    CHECK(k1p.d == std::array<BigRat, 5>{make_rat(-1, 2), 0, 0, make_rat(1, 2), 0});
    CHECK(k1p.m2 == make_rat(-1, 2));
    LinearForm k1k2 = sp_map(Momentum::k1, Momentum::k2);
    CHECK(k1k2.d == std::array<BigRat, 5>{0, make_rat(-1, 2), make_rat(1, 2), make_rat(1, 2), 0});
    CHECK(k1k2.m2 == make_rat(-1, 2));
    CHECK(k1k2.M2 == make_rat(1, 2));
    CHECK(sp_map(Momentum::p, Momentum::p).m2 == -1);
    CHECK(sp_map(Momentum::k2, Momentum::p).d[4] == 1);
}

TEST_CASE("index helpers") {
    CHECK(key({1, 1, 3, 0, 0}) == "1,1,3,0,0");
    CHECK(parse_key("1, 2,1,0,-1") == FamilyIndex{1, 2, 1, 0, -1});
    CHECK_THROWS(parse_key("1,1,1,1,0"));
    CHECK_THROWS(parse_key("1,1,1"));
    CHECK(from_sunset({1, 3, 1}) == FamilyIndex{1, 1, 3, 0, 0});
    CHECK(to_sunset({1, 2, 1, 0, 0}) == sunset::SunsetIndices{1, 1, 2});
    CHECK(is_zero_sector({1, 0, 2, 0, 0}));
    CHECK(is_zero_sector({3, 1, -1, 0, 0}));
    CHECK_FALSE(is_zero_sector({0, 1, 1, 0, 0}));
    CHECK(integral_less({0, 2, 2, 0, 0}, {1, 1, 1, 0, 0}));
    CHECK(integral_less({1, 1, 2, 0, 0}, {1, 2, 1, 0, 0}));
    CHECK(integral_less({1, 2, 1, 0, 0}, {2, 1, 1, 0, 0}));
    CHECK(integral_less({1, 1, 3, 0, 0}, {1, 1, 1, -1, 0}));
}

TEST_CASE("gen_ibp") {
    IBPIdentity id = gen_ibp(Momentum::k1, Momentum::k1, {1, 1, 1, 0, 0});
    // d/dk1 . k1 contributes n to the unshifted term
    CHECK(id.terms.front().first == FamilyIndex{});
    CHECK(id.terms.front().second.constant == Poly::var(Var::n));
    for (const auto& [l, v] : ibp_directions()) {
        IBPIdentity g = gen_ibp(l, v, {1, 1, 1, 0, 0});
        bool has_n = !g.terms.empty() && g.terms.front().first == FamilyIndex{} && g.terms.front().second.constant.uses(Var::n);
        CHECK(has_n == (l == v));
        // Gamma-free: every coefficient is a polynomial
        for (const auto& [a, c] : g.instantiate()) CHECK(c.is_polynomial());
    }

    // (l, v) = (k2, k2) at (1,1,1,0,0), all terms including the scaleless I(1,2,0,0,0)
    IBPIdentity f = gen_ibp(Momentum::k2, Momentum::k2, {1, 1, 1, 0, 0});
    std::map<FamilyIndex, RatFunc> full;
    for (const auto& [s, c] : f.terms) {
        FamilyIndex a;
        for (int i = 0; i < 5; ++i) a[i] = f.seed[i] + s[i];
        full[a] += c.at(f.seed);
    }
    std::map<FamilyIndex, RatFunc> fixture{{{1, 1, 1, 0, 0}, n - 3},
                                           {{1, 2, 1, -1, 0}, RatFunc(1)},
                                           {{1, 2, 1, 0, 0}, 1 + z / 4},
                                           {{1, 1, 2, 0, 0}, z / 2},
                                           {{1, 2, 0, 0, 0}, RatFunc(-1)}};
    CHECK(full == fixture);
    auto inst = f.instantiate();
    CHECK(inst.size() == 4);
    CHECK(inst.front().first == FamilyIndex{1, 2, 1, -1, 0});
}

TEST_CASE("identities agree with pointwise differentiation") {
    std::mt19937 rng(7);
    const FamilyIndex seeds_[] = {{1, 1, 1, 0, 0}, {2, 1, 3, 0, 0}, {1, 2, 1, -1, 0}, {0, 1, 2, 0, -1}, {-1, 2, 1, -1, -2}, {2, 2, 2, 0, 0}};
    for (const auto& seed : seeds_)
        for (const auto& [l, v] : ibp_directions())
            for (int dim : {4, 5}) check_pointwise(l, v, seed, rng, dim);
}

TEST_CASE("numerator-free identity combinations hold numerically") {
    // Combine the identities of a few seeds so that every integral without a
    // direct evaluation cancels, then evaluate the rest with the series.
    std::vector<std::vector<std::pair<FamilyIndex, RatFunc>>> rows;
    for (const FamilyIndex& seed : {FamilyIndex{1, 1, 1, 0, 0}, FamilyIndex{2, 1, 1, 0, 0}, FamilyIndex{1, 2, 1, 0, 0},
                                    FamilyIndex{1, 1, 2, 0, 0}})
        for (const auto& [l, v] : ibp_directions()) rows.push_back(gen_ibp(l, v, seed).instantiate());
    std::vector<FamilyIndex> hidden;
    for (const auto& r : rows)
        for (const auto& [a, c] : r)
            if (!evaluable(a) && std::find(hidden.begin(), hidden.end(), a) == hidden.end()) hidden.push_back(a);
    kernel::RatMatrix m(hidden.size(), std::vector<RatFunc>(rows.size(), RatFunc(0)));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [a, c] : rows[r]) {
            auto it = std::find(hidden.begin(), hidden.end(), a);
            if (it != hidden.end()) m[it - hidden.begin()][r] = c;
        }
    auto combos = kernel::nullspace(m);
    REQUIRE(combos.size() >= 1);

    const BigRat eps = make_rat(1, 4), z0 = make_rat(3, 10), n0 = sunset::n_from_eps(eps);
    const int prec = 35;
    mpfr_prec_t bits = kernel::bits_for_digits(prec);
    const ReductionTable& t = default_table();
    std::map<FamilyIndex, BigFloat> cache;
    auto value = [&](const FamilyIndex& a) {
        auto it = cache.find(a);
        if (it == cache.end()) it = cache.emplace(a, eval_master(t, a, eps, z0, prec)).first;
        return it->second;
    };
    int nontrivial = 0;
    for (const auto& w : combos) {
        std::map<FamilyIndex, RatFunc> sum;
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (!w[r].is_zero())
                for (const auto& [a, c] : rows[r]) sum[a] += w[r] * c;
        BigFloat total(0L, bits), scale(0L, bits);
        for (const auto& [a, c] : sum) {
            if (c.is_zero()) continue;
            REQUIRE(evaluable(a));
            BigFloat term = BigFloat(c.eval(n0, z0), bits) * value(a);
            total = total + term;
            if (kernel::abs(term) > scale) scale = kernel::abs(term);
        }
        if (scale.is_zero()) continue;
        ++nontrivial;
        CHECK(kernel::abs(total) < scale * pow10(-25, bits));
    }
    CHECK(nontrivial >= 1);
}

TEST_CASE("laporta masters and reductions") {
    const ReductionTable& t = default_table();
    std::vector<FamilyIndex> expected{{0, 1, 1, 0, 0}, {1, 1, 1, 0, 0}, {1, 1, 2, 0, 0}, {1, 2, 1, 0, 0}};
    CHECK(t.masters == expected);
    CHECK(t.nontrivial_masters().size() == 3);
    CHECK(reduce(t, {0, 2, 1, 0, 0}) == Reduction{{{0, 1, 1, 0, 0}, 1 - n / 2}});
    CHECK(reduce(t, {1, 0, 2, 0, 0}).empty());
    CHECK(reduce(t, {1, 1, 1, 0, 0}) == Reduction{{{1, 1, 1, 0, 0}, RatFunc(1)}});
    CHECK_THROWS(reduce(t, {1, 1, 9, 0, 0}));
    // entries reference masters only, and no master has an entry
    for (const auto& [a, red] : t.entries) {
        CHECK_FALSE(t.is_master(a));
        for (const auto& [m, c] : red) CHECK(t.is_master(m));
    }
}

TEST_CASE("laporta determinism") {
    const ReductionTable& t = default_table();
    ReductionTable one = laporta({2, 1}, 1);
    ReductionTable four = laporta({2, 1}, 4);
    CHECK(to_json(one).dump() == to_json(t).dump());
    CHECK(to_json(four).dump() == to_json(t).dump());

    for (const SeedBounds& wider : {SeedBounds{3, 1}, SeedBounds{2, 2}}) {
        ReductionTable w = laporta(wider, 2);
        CHECK(w.masters == t.masters);
        int common = 0;
        for (const auto& [a, red] : t.entries) {
            auto it = w.entries.find(a);
            if (it == w.entries.end()) continue;
            ++common;
            CHECK(it->second == red);
        }
        CHECK(common == static_cast<int>(t.entries.size()));
    }
}

TEST_CASE("cross_check against the series") {
    const ReductionTable& t = default_table();
    const BigRat eps = make_rat(1, 4), z0 = make_rat(3, 10);
    const int prec = 40;
    mpfr_prec_t bits = kernel::bits_for_digits(prec);
    for (const auto& j : {sunset::SunsetIndices{1, 3, 1}, sunset::SunsetIndices{2, 1, 1}, sunset::SunsetIndices{1, 2, 2}})
        CHECK(cross_check(t, from_sunset(j), eps, z0, prec) < pow10(-30, bits));
    CHECK(cross_check(t, {1, 1, 1, 0, 0}, eps, z0, prec).is_zero());
    CHECK(cross_check(t, {0, 2, 3, 0, 0}, eps, z0, prec) < pow10(-30, bits));

    // further reducible targets with positive indices
    int checked = 0;
    const int p2 = 30;
    mpfr_prec_t b2 = kernel::bits_for_digits(p2);
    for (const auto& [a, red] : t.entries) {
        if (checked == 10) break;
        if (a[0] < 1 || a[1] < 1 || a[2] < 1 || a[3] != 0 || a[4] != 0) continue;
        CHECK(cross_check(t, a, make_rat(2, 5), make_rat(7, 10), p2) < pow10(-p2 + 10, b2));
        ++checked;
    }
    CHECK(checked == 10);
}

TEST_CASE("external relation") {
    const ReductionTable& t = default_table();
    sunset::Relation rel = sunset::assemble_main(sunset::find_relation());
    ReductionTable u = apply_external_relation(t, rel);
    std::vector<FamilyIndex> expected{kGammaModule, {0, 1, 1, 0, 0}, {1, 1, 1, 0, 0}, {1, 1, 2, 0, 0}};
    CHECK(u.masters == expected);
    CHECK(u.nontrivial_masters().size() == 2);
    Reduction j112 = reduce(u, {1, 2, 1, 0, 0});
    Reduction want{{kGammaModule, RatFunc(make_rat(1, 2))}, {{1, 1, 1, 0, 0}, -(3 * n - 8) / 2}, {{1, 1, 2, 0, 0}, -z / 2}};
    CHECK(j112 == want);
    CHECK(apply_external_relation(u, rel) == u);

    const BigRat eps = make_rat(1, 4), z0 = make_rat(3, 10);
    const int prec = 40;
    mpfr_prec_t bits = kernel::bits_for_digits(prec);
    CHECK(cross_check(u, {1, 2, 1, 0, 0}, eps, z0, prec) < pow10(-25, bits));
    CHECK(cross_check(u, {1, 1, 3, 0, 0}, eps, z0, prec) < pow10(-25, bits));
}

TEST_CASE("table JSON") {
    const ReductionTable& t = default_table();
    auto j = to_json(t);
    CHECK(j["family"] == "sunset012");
    CHECK(j["variables"] == nlohmann::ordered_json{"n", "z"});
    CHECK(j["masters"][0] == "0,1,1,0,0");
    CHECK(table_from_json(j) == t);
    CHECK(table_from_json(nlohmann::ordered_json::parse(j.dump())) == t);
    ReductionTable u = apply_external_relation(t, sunset::assemble_main(sunset::find_relation()));
    auto ju = to_json(u);
    CHECK(ju["masters"][0] == "gamma_module");
    CHECK(table_from_json(nlohmann::ordered_json::parse(ju.dump())) == u);
}
