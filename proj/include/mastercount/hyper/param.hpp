#pragma once

#include "mastercount/kernel/bigfloat.hpp"
#include "mastercount/kernel/ratfunc.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace mastercount::hyper {

using kernel::BigFloat;
using kernel::BigRat;
using kernel::Poly;
using kernel::RatFunc;

/// A hypergeometric parameter c0 + c1*n.
struct ParamExpr {
    BigRat c0;
    BigRat c1;

    ParamExpr() = default;
    ParamExpr(BigRat constant, BigRat n_coeff = 0) : c0(std::move(constant)), c1(std::move(n_coeff)) {}  // NOLINT

    /// Parses a rational-linear expression in n such as "(n-1)/2" or "2-n/2".
    static ParamExpr parse(std::string_view text);

    bool is_zero() const { return c0 == 0 && c1 == 0; }
    bool is_constant() const { return c1 == 0; }
    bool is_one() const { return c0 == 1 && c1 == 0; }
    /// this - other when that difference is an integer constant.
    std::optional<long> integer_offset_from(const ParamExpr& other) const;

    Poly to_poly() const;
    RatFunc to_ratfunc() const { return RatFunc(to_poly()); }
    BigRat eval(const BigRat& n) const { return c0 + c1 * n; }
    BigFloat eval(const BigFloat& n) const;

    ParamExpr operator+(const BigRat& k) const { return {c0 + k, c1}; }
    ParamExpr operator-(const BigRat& k) const { return {c0 - k, c1}; }
    ParamExpr operator+(const ParamExpr& o) const { return {c0 + o.c0, c1 + o.c1}; }
    ParamExpr operator-(const ParamExpr& o) const { return {c0 - o.c0, c1 - o.c1}; }
    ParamExpr operator-() const { return {-c0, -c1}; }
    friend bool operator==(const ParamExpr& a, const ParamExpr& b) { return a.c0 == b.c0 && a.c1 == b.c1; }
    friend bool operator!=(const ParamExpr& a, const ParamExpr& b) { return !(a == b); }
    /// Canonical order: by n-coefficient, then constant.
    friend bool operator<(const ParamExpr& a, const ParamExpr& b) {
        return a.c1 != b.c1 ? a.c1 < b.c1 : a.c0 < b.c0;
    }

    /// Human form, e.g. "3-n", "n/2-1", "(n-1)/2"; parse(to_string()) round-trips.
    std::string to_string() const;
};

inline ParamExpr n_times(const BigRat& c1) { return {0, c1}; }

}  // namespace mastercount::hyper
