#include "mastercount/ibp/identity.hpp"

#include "mastercount/kernel/error.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace mastercount::ibp {

using kernel::Var;

std::string key(const FamilyIndex& a) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s;
}

FamilyIndex parse_key(std::string_view text) {
    FamilyIndex a{};
    std::string s(text);
    std::size_t pos = 0;
    for (int i = 0; i < 5; ++i) {
        while (pos < s.size() && s[pos] == ' ') ++pos;
        std::size_t used = 0;
        try {
            a[i] = std::stoi(s.substr(pos), &used);
        } catch (const std::exception&) {
            throw domain_error("malformed family index: " + s);
        }
        pos += used;
        while (pos < s.size() && s[pos] == ' ') ++pos;
        if (i < 4) {
            if (pos >= s.size() || s[pos] != ',') throw domain_error("malformed family index: " + s);
            ++pos;
        }
    }
    if (pos != s.size()) throw domain_error("malformed family index: " + s);
    if (a[3] > 0 || a[4] > 0) throw domain_error("numerator powers a4, a5 must be <= 0");
    return a;
}

FamilyIndex from_sunset(const sunset::SunsetIndices& j) {
    return {static_cast<int>(j.sigma), static_cast<int>(j.alpha), static_cast<int>(j.beta), 0, 0};
}

sunset::SunsetIndices to_sunset(const FamilyIndex& a) {
    if (a[3] != 0 || a[4] != 0) throw domain_error("integral with numerators has no J(sigma,beta,alpha) form");
    return {a[0], a[2], a[1]};
}

bool is_zero_sector(const FamilyIndex& a) { return a[1] <= 0 || a[2] <= 0; }

int sector_mask(const FamilyIndex& a) {
    int m = 0;
    for (int i = 0; i < 3; ++i)
        if (a[i] > 0) m |= 1 << i;
    return m;
}

int dots(const FamilyIndex& a) {
    int d = 0;
    for (int i = 0; i < 3; ++i)
        if (a[i] > 1) d += a[i] - 1;
    return d;
}

int numerators(const FamilyIndex& a) {
    int s = 0;
    for (int x : a)
        if (x < 0) s -= x;
    return s;
}

bool integral_less(const FamilyIndex& a, const FamilyIndex& b) {
    auto k = [](const FamilyIndex& x) {
        int m = sector_mask(x);
        return std::make_tuple(__builtin_popcount(m), m, numerators(x), dots(x), x);
    };
    return k(a) < k(b);
}

std::string to_string(Momentum m) {
    switch (m) {
        case Momentum::k1: return "k1";
        case Momentum::k2: return "k2";
        case Momentum::p: return "p";
    }
    return "?";
}

namespace {

enum { D1, D2, D3, N1, N2 };

LinearForm half(LinearForm f) {
    for (auto& d : f.d) d /= 2;
    f.m2 /= 2;
    f.M2 /= 2;
    return f;
}

}  // namespace

LinearForm sp_map(Momentum a, Momentum b) {
    if (a > b) std::swap(a, b);
    LinearForm f;
    using M = Momentum;
    if (a == M::k1 && b == M::k1) {
        f.d[N1] = 1;
    } else if (a == M::k2 && b == M::k2) {
        f.d[D3] = 1;
        f.m2 = -1;
    } else if (a == M::p && b == M::p) {
        f.m2 = -1;
    } else if (a == M::k1 && b == M::k2) {
        // D2 = k1^2 - 2 k1.k2 + k2^2 + M^2
        f.d[N1] = 1;
        f.d[D3] = 1;
        f.d[D2] = -1;
        f.m2 = -1;
        f.M2 = 1;
        f = half(f);
    } else if (a == M::k1 && b == M::p) {
        // D1 = p^2 - 2 k1.p + k1^2
        f.d[N1] = 1;
        f.d[D1] = -1;
        f.m2 = -1;
        f = half(f);
    } else {
        f.d[N2] = 1;
    }
    return f;
}

RatFunc IbpCoeff::at(const FamilyIndex& seed) const {
    Poly v = constant;
    for (int j = 0; j < 5; ++j)
        if (seed[j] != 0 && !linear[j].is_zero()) v = v + linear[j] * BigRat(seed[j]);
    return RatFunc(v);
}

bool IbpCoeff::is_zero() const {
    return constant.is_zero() && std::all_of(linear.begin(), linear.end(), [](const Poly& p) { return p.is_zero(); });
}

namespace {

using Vec = std::array<BigRat, 3>;  // coefficients on (k1, k2, p)

Vec unit(Momentum m) {
    Vec v{0, 0, 0};
    v[static_cast<int>(m)] = 1;
    return v;
}

// d P_j / d l as a momentum vector.
Vec gradient(Momentum l, int j) {
    auto v = [](int a, int b, int c) { return Vec{BigRat(a), BigRat(b), BigRat(c)}; };
    if (l == Momentum::k1) {
        switch (j) {
            case D1: return v(2, 0, -2);
            case D2: return v(2, -2, 0);
            case N1: return v(2, 0, 0);
            default: return v(0, 0, 0);
        }
    }
    if (l == Momentum::k2) {
        switch (j) {
            case D2: return v(-2, 2, 0);
            case D3: return v(0, 2, 0);
            case N2: return v(0, 0, 1);
            default: return v(0, 0, 0);
        }
    }
    throw domain_error("derivatives are taken with respect to loop momenta only");
}

LinearForm dot(const Vec& a, const Vec& b) {
    LinearForm f;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            BigRat c = a[i] * b[j];
            if (c == 0) continue;
            LinearForm s = sp_map(static_cast<Momentum>(i), static_cast<Momentum>(j));
            for (int k = 0; k < 5; ++k) f.d[k] += c * s.d[k];
            f.m2 += c * s.m2;
            f.M2 += c * s.M2;
        }
    return f;
}

}  // namespace

IBPIdentity gen_ibp(Momentum l, Momentum v, const FamilyIndex& seed) {
    if (l == Momentum::p) throw domain_error("derivatives are taken with respect to loop momenta only");
    std::map<FamilyIndex, IbpCoeff> acc;
    const Poly n = Poly::var(Var::n), z = Poly::var(Var::z);
    if (v == l) acc[FamilyIndex{}].constant = n;
    for (int j = 0; j < 5; ++j) {
        LinearForm f = dot(unit(v), gradient(l, j));
        // -a_j P_j^{-1} (f.d . P + f.m2 m^2 + f.M2 M^2), m^2 = z/4, M^2 = 1
        FamilyIndex up{};
        up[j] = 1;
        Poly c0 = z * (f.m2 / 4) + Poly(f.M2);
        if (!c0.is_zero()) acc[up].linear[j] = acc[up].linear[j] - c0;
        for (int k = 0; k < 5; ++k) {
            if (f.d[k] == 0) continue;
            FamilyIndex s = up;
            s[k] -= 1;
            acc[s].linear[j] = acc[s].linear[j] - Poly(f.d[k]);
        }
    }
    IBPIdentity id{l, v, seed, {}};
    for (auto& [s, c] : acc)
        if (!c.is_zero()) id.terms.push_back({s, c});
    return id;
}

std::vector<std::pair<FamilyIndex, RatFunc>> IBPIdentity::instantiate() const {
    std::map<FamilyIndex, RatFunc> acc;
    for (const auto& [s, c] : terms) {
        FamilyIndex a;
        for (int i = 0; i < 5; ++i) a[i] = seed[i] + s[i];
        if (is_zero_sector(a)) continue;
        RatFunc v = c.at(seed);
        if (v.is_zero()) continue;
        acc[a] += v;
    }
    std::vector<std::pair<FamilyIndex, RatFunc>> out;
    for (auto& [a, v] : acc)
        if (!v.is_zero()) out.push_back({a, v});
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return integral_less(y.first, x.first); });
    return out;
}

const std::array<std::pair<Momentum, Momentum>, 6>& ibp_directions() {
    using M = Momentum;
    static const std::array<std::pair<M, M>, 6> d{{{M::k1, M::k1}, {M::k1, M::k2}, {M::k1, M::p},
                                                    {M::k2, M::k1}, {M::k2, M::k2}, {M::k2, M::p}}};
    return d;
}

}  // namespace mastercount::ibp
