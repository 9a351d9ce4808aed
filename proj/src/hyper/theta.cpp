#include "mastercount/hyper/theta.hpp"

#include "mastercount/kernel/bigrat.hpp"

namespace mastercount::hyper {

ThetaPoly::ThetaPoly(const RatFunc& c0) : c_{c0} { trim(); }

ThetaPoly::ThetaPoly(std::vector<RatFunc> coeffs) : c_(std::move(coeffs)) { trim(); }

void ThetaPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

RatFunc ThetaPoly::coeff(int k) const {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : RatFunc(0);
}

ThetaPoly operator+(const ThetaPoly& a, const ThetaPoly& b) {
    std::vector<RatFunc> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return ThetaPoly(std::move(c));
}

ThetaPoly operator-(const ThetaPoly& a, const ThetaPoly& b) {
    return a + RatFunc(-1) * b;
}

ThetaPoly operator*(const RatFunc& r, const ThetaPoly& a) {
    std::vector<RatFunc> c = a.c_;
    for (auto& x : c) x = r * x;
    return ThetaPoly(std::move(c));
}

ThetaPoly operator*(const ThetaPoly& a, const ThetaPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<RatFunc> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j].is_zero()) continue;
        // theta^i (b_j theta^j) = sum_l C(i,l) theta^l(b_j) theta^(i-l+j)
        std::vector<RatFunc> derivs{b.c_[j]};
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            while (derivs.size() <= i) derivs.push_back(derivs.back().theta());
            kernel::BigInt binom = 1;
            for (std::size_t l = 0; l <= i; ++l) {
                if (l > 0) binom = binom * static_cast<unsigned long>(i - l + 1) / static_cast<unsigned long>(l);
                if (derivs[l].is_zero()) continue;
                out[i - l + j] += a.c_[i] * derivs[l] * RatFunc(kernel::BigRat(binom));
            }
        }
    }
    return ThetaPoly(std::move(out));
}

RatFunc ThetaPoly::apply(const RatFunc& f) const {
    RatFunc acc, d = f;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i > 0) d = d.theta();
        acc += c_[i] * d;
    }
    return acc;
}

BigFloat ThetaPoly::eval(const std::vector<BigFloat>& theta_values, const BigFloat& n, const BigFloat& z) const {
    BigFloat acc(std::max(n.precision(), z.precision()));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        acc += kernel::eval(c_[i], n, z) * theta_values.at(i);
    }
    return acc;
}

std::string ThetaPoly::to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        std::string c = c_[i].to_string();
        if (i == 0) {
            s += c;
            continue;
        }
        if (!c_[i].is_one()) s += "(" + c + ")*";
        s += i == 1 ? "theta" : "theta^" + std::to_string(i);
    }
    return s;
}

}  // namespace mastercount::hyper
