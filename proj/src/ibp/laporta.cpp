#include "mastercount/ibp/laporta.hpp"

#include "mastercount/kernel/error.hpp"
#include "mastercount/kernel/gamma.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace mastercount::ibp {

using kernel::Var;

namespace {

const char* const kGammaModuleKey = "gamma_module";

using Row = std::vector<std::pair<int, RatFunc>>;  // ids strictly descending

// r - c p
Row axpy(const Row& r, const RatFunc& c, const Row& p) {
    Row out;
    out.reserve(r.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first > p[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || p[j].first > r[i].first) {
            out.push_back({p[j].first, -(c * p[j].second)});
            ++j;
        } else {
            RatFunc v = r[i].second - c * p[j].second;
            if (!v.is_zero()) out.push_back({r[i].first, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

void scale(Row& r, const RatFunc& c) {
    for (auto& [id, v] : r) v *= c;
}

RatFunc tadpole_ratio(int a2, int a3) {
    // I(0,a2,a3) / I(0,1,1) = (1-n/2)_{a2-1}/(a2-1)! (1-n/2)_{a3-1}/(a3-1)! (m^2)^{1-a3}, M^2 = 1
    const Poly x = Poly(BigRat(1)) - Poly::var(Var::n) * kernel::make_rat(1, 2);
    auto part = [&](int a) {
        return RatFunc(kernel::pochhammer(x, a - 1)) / RatFunc(kernel::pochhammer(BigRat(1), a - 1));
    };
    return part(a2) * part(a3) * (RatFunc::var(Var::z) / 4).pow(1 - a3);
}

const FamilyIndex kTadpole{0, 1, 1, 0, 0};

RatFunc in_units_of_M(const sunset::DimCoeff& c) {
    RatFunc v(0);
    for (const auto& [m, cn] : c.terms()) v += cn * (RatFunc::var(Var::z) / 4).pow(m.first);
    return v;
}

std::string master_key(const FamilyIndex& a) { return a == kGammaModule ? kGammaModuleKey : key(a); }

FamilyIndex master_from_key(const std::string& s) { return s == kGammaModuleKey ? kGammaModule : parse_key(s); }

}  // namespace

bool ReductionTable::is_master(const FamilyIndex& a) const {
    return std::find(masters.begin(), masters.end(), a) != masters.end();
}

std::vector<FamilyIndex> ReductionTable::nontrivial_masters() const {
    std::vector<FamilyIndex> out;
    for (const auto& m : masters)
        if (m != kGammaModule && sector_mask(m) == 0b111) out.push_back(m);
    return out;
}

std::vector<FamilyIndex> seeds(const SeedBounds& b) {
    std::vector<FamilyIndex> out;
    for (int a1 = -b.nums; a1 <= 1 + b.dots; ++a1)
        for (int a2 = 1; a2 <= 1 + b.dots; ++a2)
            for (int a3 = 1; a3 <= 1 + b.dots; ++a3)
                for (int a4 = -b.nums; a4 <= 0; ++a4)
                    for (int a5 = -b.nums; a5 <= 0; ++a5) {
                        FamilyIndex a{a1, a2, a3, a4, a5};
                        if (dots(a) <= b.dots && numerators(a) <= b.nums) out.push_back(a);
                    }
    std::sort(out.begin(), out.end(), integral_less);
    return out;
}

ReductionTable laporta(const SeedBounds& b, unsigned threads) {
    if (b.dots < 2 || b.nums < 1) throw domain_error("seed bounds need dots >= 2 and nums >= 1");
    const auto seed_list = seeds(b);
    const auto& dirs = ibp_directions();
    const std::size_t total = seed_list.size() * dirs.size();

    // Identity generation: each worker fills its own slots.
    std::vector<std::vector<std::pair<FamilyIndex, RatFunc>>> slots(total);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < total;) {
            const auto& [l, v] = dirs[k % dirs.size()];
            slots[k] = gen_ibp(l, v, seed_list[k / dirs.size()]).instantiate();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    // Integral ids in Laporta order.
    std::set<FamilyIndex> seen;
    for (const auto& s : slots)
        for (const auto& [a, c] : s) seen.insert(a);
    for (const auto& a : seed_list) seen.insert(a);
    std::vector<FamilyIndex> integrals(seen.begin(), seen.end());
    std::sort(integrals.begin(), integrals.end(), integral_less);
    std::map<FamilyIndex, int> id;
    for (std::size_t i = 0; i < integrals.size(); ++i) id[integrals[i]] = static_cast<int>(i);

    // Forward elimination on leading terms.
    std::vector<Row> pivot(integrals.size());
    for (const auto& s : slots) {
        Row r;
        for (const auto& [a, c] : s) r.push_back({id.at(a), c});
        while (!r.empty()) {
            const int lead = r.front().first;
            if (pivot[lead].empty()) {
                scale(r, RatFunc(1) / r.front().second);
                pivot[lead] = std::move(r);
                break;
            }
            RatFunc c = r.front().second;
            r = axpy(r, c, pivot[lead]);
        }
    }

    // Back substitution, lowest pivots first, so every tail ends up on non-pivots.
    for (std::size_t i = 0; i < pivot.size(); ++i) {
        if (pivot[i].empty()) continue;
        Row& r = pivot[i];
        for (std::size_t k = 1; k < r.size();) {
            const int t = r[k].first;
            if (pivot[t].empty()) {
                ++k;
                continue;
            }
            RatFunc c = r[k].second;
            r = axpy(r, c, pivot[t]);  // removes t and appends lower terms; position k now holds the next term
        }
    }

    ReductionTable table;
    table.bounds = b;
    std::set<int> master_ids;
    for (const auto& a : seed_list) {
        int i = id.at(a);
        if (pivot[i].empty()) {
            master_ids.insert(i);
            continue;
        }
        for (std::size_t k = 1; k < pivot[i].size(); ++k) master_ids.insert(pivot[i][k].first);
    }
    for (int i : master_ids) table.masters.push_back(integrals[i]);

    for (std::size_t i = 0; i < pivot.size(); ++i) {
        const Row& r = pivot[i];
        if (r.empty()) continue;
        bool closed = std::all_of(r.begin() + 1, r.end(), [&](const auto& t) { return master_ids.count(t.first) > 0; });
        if (!closed) continue;
        Reduction red;
        for (auto it = r.rbegin(); it + 1 != r.rend(); ++it) red.push_back({integrals[it->first], -it->second});
        table.entries[integrals[i]] = std::move(red);
    }

    // Double tadpoles are known in closed form.
    for (const auto& [a, red] : table.entries) {
        if (a[0] != 0 || a[3] != 0 || a[4] != 0) continue;
        RatFunc expected = tadpole_ratio(a[1], a[2]);
        bool ok = red.size() == 1 && red[0].first == kTadpole && red[0].second == expected;
        if (!ok) throw contradiction_error("IBP inconsistency at I(" + key(a) + ")");
    }
    return table;
}

ReductionTable apply_external_relation(const ReductionTable& t, const sunset::Relation& rel) {
    if (rel.equal_mass) throw domain_error("only the general-mass relation can be injected");
    const FamilyIndex eliminated = from_sunset({1, 1, 2});
    if (t.relation || !t.is_master(eliminated)) return t;

    RatFunc ce(0);
    Reduction rest;
    for (const auto& [j, c] : rel.lhs) {
        FamilyIndex a = from_sunset(j);
        if (a == eliminated)
            ce = in_units_of_M(c);
        else {
            if (!t.is_master(a)) throw domain_error("relation term I(" + key(a) + ") is not a master of the table");
            rest.push_back({a, in_units_of_M(c)});
        }
    }
    if (ce.is_zero()) throw domain_error("relation does not involve J(1,1,2)");
    Reduction repl{{kGammaModule, RatFunc(1) / ce}};
    for (const auto& [a, c] : rest) repl.push_back({a, -c / ce});
    std::sort(repl.begin(), repl.end(), [](const auto& x, const auto& y) { return integral_less(x.first, y.first); });

    ReductionTable out;
    out.bounds = t.bounds;
    out.relation = rel;
    for (const auto& m : t.masters)
        if (m != eliminated) out.masters.push_back(m);
    out.masters.push_back(kGammaModule);
    std::sort(out.masters.begin(), out.masters.end(), integral_less);

    auto substitute = [&](const Reduction& red) {
        std::map<FamilyIndex, RatFunc> acc;
        for (const auto& [a, c] : red) {
            if (a == eliminated)
                for (const auto& [b, d] : repl) acc[b] += c * d;
            else
                acc[a] += c;
        }
        Reduction r;
        for (auto& [a, c] : acc)
            if (!c.is_zero()) r.push_back({a, c});
        std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return integral_less(x.first, y.first); });
        return r;
    };
    for (const auto& [a, red] : t.entries) out.entries[a] = substitute(red);
    out.entries[eliminated] = repl;
    return out;
}

Reduction reduce(const ReductionTable& t, const FamilyIndex& target) {
    if (is_zero_sector(target)) return {};
    if (t.is_master(target)) return {{target, RatFunc(1)}};
    auto it = t.entries.find(target);
    if (it == t.entries.end())
        throw domain_error("I(" + key(target) + ") is not reducible with seed bounds dots=" + std::to_string(t.bounds.dots) +
                           ", nums=" + std::to_string(t.bounds.nums));
    return it->second;
}

BigFloat eval_master(const ReductionTable& t, const FamilyIndex& m, const BigRat& eps, const BigRat& z0, int prec) {
    const BigRat n0 = sunset::n_from_eps(eps);
    if (m == kGammaModule) {
        if (!t.relation) throw domain_error("table has no Gamma module");
        mpfr_prec_t bits = kernel::bits_for_digits(prec);
        return BigFloat(t.relation->multiplier.eval(n0, z0), bits) * t.relation->gammas.eval(n0, z0, prec);
    }
    if (m[0] == 0 && m[3] == 0 && m[4] == 0 && m[1] > 0 && m[2] > 0) {
        // one-loop tadpoles with masses M = 1 and m^2 = z0/4
        sunset::GammaProduct g;
        g.mul_gamma(sunset::ParamExpr(BigRat(m[1]), kernel::make_rat(-1, 2)), 1).mul_gamma(sunset::ParamExpr(BigRat(m[1])), -1);
        g.mul_gamma(sunset::ParamExpr(BigRat(m[2]), kernel::make_rat(-1, 2)), 1).mul_gamma(sunset::ParamExpr(BigRat(m[2])), -1);
        g.power_z4 = sunset::ParamExpr(BigRat(-m[2]), kernel::make_rat(1, 2));
        return g.eval(n0, z0, prec);
    }
    if (sector_mask(m) == 0b111 && m[3] == 0 && m[4] == 0) return sunset::eval_J(to_sunset(m), eps, z0, prec);
    throw domain_error("no direct evaluation for I(" + key(m) + ")");
}

BigFloat cross_check(const ReductionTable& t, const FamilyIndex& target, const BigRat& eps, const BigRat& z0, int prec) {
    if (target[3] != 0 || target[4] != 0) throw domain_error("cross_check needs a4 = a5 = 0");
    const BigRat n0 = sunset::n_from_eps(eps);
    mpfr_prec_t bits = kernel::bits_for_digits(prec);
    Reduction red = reduce(t, target);
    BigFloat direct = eval_master(t, target, eps, z0, prec);
    BigFloat reduced(0L, bits);
    for (const auto& [m, c] : red) {
        if (m == target) {
            reduced = reduced + BigFloat(c.eval(n0, z0), bits) * direct;
            continue;
        }
        reduced = reduced + BigFloat(c.eval(n0, z0), bits) * eval_master(t, m, eps, z0, prec);
    }
    return kernel::abs(direct - reduced) / kernel::abs(direct);
}

nlohmann::ordered_json to_json(const ReductionTable& t) {
    nlohmann::ordered_json j;
    j["family"] = "sunset012";
    j["variables"] = {"n", "z"};
    j["seed_bounds"] = {{"dots", t.bounds.dots}, {"nums", t.bounds.nums}};
    nlohmann::ordered_json ms = nlohmann::ordered_json::array();
    for (const auto& m : t.masters) ms.push_back(master_key(m));
    j["masters"] = ms;
    nlohmann::ordered_json es = nlohmann::ordered_json::object();
    for (const auto& [a, red] : t.entries) {
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (const auto& [m, c] : red) list.push_back({master_key(m), c.to_string()});
        es[key(a)] = list;
    }
    j["entries"] = es;
    if (t.relation) j[kGammaModuleKey] = sunset::to_json(*t.relation);
    return j;
}

ReductionTable table_from_json(const nlohmann::ordered_json& j) {
    if (j.value("family", "") != "sunset012") throw domain_error("not a sunset012 reduction table");
    ReductionTable t;
    if (j.contains("seed_bounds")) t.bounds = {j["seed_bounds"].at("dots").get<int>(), j["seed_bounds"].at("nums").get<int>()};
    for (const auto& m : j.at("masters")) t.masters.push_back(master_from_key(m.get<std::string>()));
    for (const auto& [k, list] : j.at("entries").items()) {
        Reduction red;
        for (const auto& p : list) red.push_back({master_from_key(p.at(0).get<std::string>()), kernel::parse_ratfunc(p.at(1).get<std::string>())});
        t.entries[parse_key(k)] = std::move(red);
    }
    if (j.contains(kGammaModuleKey)) t.relation = sunset::relation_from_json(j[kGammaModuleKey]);
    return t;
}

}  // namespace mastercount::ibp
