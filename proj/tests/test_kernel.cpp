#include "doctest.h"

#include "mastercount/kernel/expr_parser.hpp"
#include "mastercount/kernel/gamma.hpp"
#include "mastercount/kernel/linsolve.hpp"
#include "mastercount/kernel/ratfunc.hpp"

#include <random>

using namespace mastercount;
using namespace mastercount::kernel;

namespace {

const RatFunc n = RatFunc::var(Var::n);
const RatFunc z = RatFunc::var(Var::z);

Poly random_poly(std::mt19937& rng, int max_deg) {
    std::uniform_int_distribution<int> coeff(-5, 5), deg(0, max_deg);
    std::vector<Poly::Term> terms;
    int count = deg(rng) + 1;
    for (int i = 0; i < count; ++i) {
        int en = deg(rng), ez = deg(rng);
        if (en + ez > max_deg) continue;
        terms.push_back({{en, ez}, make_rat(coeff(rng), std::uniform_int_distribution<int>(1, 3)(rng))});
    }
    return Poly::from_terms(std::move(terms));
}

RatFunc random_ratfunc(std::mt19937& rng) {
    Poly num = random_poly(rng, 2);
    Poly den;
    do den = random_poly(rng, 2);
    while (den.is_zero());
    return RatFunc(num, den);
}

BigRat random_rat(std::mt19937& rng) {
    std::uniform_int_distribution<int> p(-40, 40), q(1, 17);
    return make_rat(p(rng), q(rng));
}

// MPFR's own Gamma, independent of the Spouge implementation.
BigFloat mpfr_gamma_oracle(const BigRat& x, int digits) {
    mpfr_prec_t bits = bits_for_digits(digits) + 64;
    BigFloat xv(x, bits), r(bits);
    mpfr_gamma(r.get(), xv.get(), MPFR_RNDN);
    return r;
}

}  // namespace

TEST_CASE("rational functions reduce to canonical form") {
    CHECK((n * n - 4) / (n - 2) == n + 2);
    CHECK((z * z - z) / z == z - 1);
    CHECK(parse_ratfunc("(n^2-4)/(n-2)") == n + 2);
    RatFunc f = (3 * n - 8) / (n - 2);
    CHECK(f.to_string() == "(3*n-8)/(n-2)");
    CHECK(parse_ratfunc(f.to_string()) == f);
    // den is monic: (2n)/(2z - 4) -> n/(z - 2)
    RatFunc g = (2 * n) / (2 * z - 4);
    CHECK(g.den() == Poly::var(Var::z) - Poly(2));
    CHECK(g.num() == Poly::var(Var::n));
    CHECK_THROWS_WITH(n / RatFunc(0), "zero divisor");
    CHECK_THROWS_AS(parse_ratfunc("n + 0.5"), ParseError);
}

TEST_CASE("bivariate gcd") {
    Poly pn = Poly::var(Var::n), pz = Poly::var(Var::z);
    Poly common = pn * pz + pz - 3;
    Poly a = common * (pn - 1) * (pn - 1), b = common * (pz * pz + pn);
    CHECK(gcd(a, b) == common * (BigRat(1) / common.leading_coeff()));
    CHECK(gcd(pn - 1, pz + 2) == Poly(1));
    // purely univariate in the main variable with rational content
    CHECK(gcd(Poly(BigRat(1, 2)) * pz * pz - Poly(BigRat(1, 2)), Poly(3) * pz + 3) == pz + 1);
}

TEST_CASE("rational function evaluation") {
    CHECK((3 * n - 8).eval(4, 0) == 4);
    CHECK((3 * n - 8).eval(BigRat(7, 2), 0) == BigRat(5, 2));
    CHECK_THROWS_WITH((RatFunc(1) / (n - 4)).eval(4, 0), "pole of rational function");
}

TEST_CASE("pochhammer") {
    CHECK(pochhammer(BigRat(1, 2), 3) == BigRat(15, 8));
    CHECK(pochhammer(BigRat(-1), 2) == 0);
    CHECK(pochhammer(BigRat(7, 3), 0) == 1);
    Poly pn = Poly::var(Var::n);
    CHECK(pochhammer(pn, 2) == pn * (pn + 1));
    CHECK(pochhammer(pn, 0) == Poly(1));
}

TEST_CASE("field axioms on random rational functions") {
    std::mt19937 rng(20110511);
    for (int trial = 0; trial < 60; ++trial) {
        RatFunc a = random_ratfunc(rng), b = random_ratfunc(rng), c = random_ratfunc(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == RatFunc(0));
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("normalization preserves values") {
    std::mt19937 rng(7);
    int checked = 0;
    while (checked < 100) {
        Poly g = random_poly(rng, 1);
        Poly num = random_poly(rng, 2) * g, den = random_poly(rng, 2) * g;
        if (den.is_zero() || g.is_zero()) continue;
        BigRat pn = random_rat(rng), pz = random_rat(rng);
        BigRat d = den.eval(pn, pz);
        if (d == 0) continue;
        CHECK(RatFunc(num, den).eval(pn, pz) == num.eval(pn, pz) / d);
        ++checked;
    }
}

TEST_CASE("gamma at special points") {
    const int prec = 40;
    BigFloat sqrt_pi = sqrt(BigFloat::pi(bits_for_digits(prec)));
    CHECK(relative_difference(gamma(BigRat(1, 2), prec), sqrt_pi) < pow10(-prec, 256));
    CHECK(gamma(BigRat(5), prec) == BigFloat(24L, 256));
    CHECK(relative_difference(gamma(BigRat(-1, 2), prec), BigFloat(-2L, 256) * sqrt_pi) < pow10(-prec, 256));
    CHECK(gamma(BigRat(1, 2), 20).to_string(17) == "1.772453850905516");
    CHECK_THROWS_WITH(gamma(BigRat(0), prec), "gamma pole");
    CHECK_THROWS_WITH(gamma(BigRat(-3), prec), "gamma pole");
    CHECK_THROWS_WITH(gamma(BigFloat(-2L, 128), prec), "gamma pole");
}

TEST_CASE("gamma agrees with an independent implementation") {
    std::mt19937 rng(99);
    for (int prec : {20, 50, 100}) {
        for (int i = 0; i < 20; ++i) {
            BigRat x = random_rat(rng);
            if (is_integer(x) && x <= 0) continue;
            CHECK(relative_difference(gamma(x, prec), mpfr_gamma_oracle(x, prec)) < pow10(-prec, 512));
        }
    }
}

TEST_CASE("gamma recurrence and reflection") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int prec : {30, 60}) {
        const mpfr_prec_t bits = bits_for_digits(prec);
        const BigFloat tol = pow10(-prec + 2, bits);
        int done = 0;
        while (done < 50) {
            BigRat x(u(rng));
            double frac = std::abs(x.get_d() - std::round(x.get_d()));
            if (frac < 1e-3) continue;
            BigFloat xf(x, bits);
            BigFloat g = gamma(xf, prec), g1 = gamma(xf + BigFloat(1L, bits), prec);
            CHECK(relative_difference(xf * g, g1) <= tol);
            BigFloat pi = BigFloat::pi(bits);
            BigFloat refl = g * gamma(BigFloat(1L, bits) - xf, prec) * sin(pi * xf) / pi;
            CHECK(relative_difference(refl, BigFloat(1L, bits)) <= tol);
            ++done;
        }
    }
}

TEST_CASE("nullspace over rational functions") {
    // rows: [1, n, z], [n, n^2, n z] -> rank 1, nullspace dimension 2
    RatMatrix m{{1, n, z}, {n, n * n, n * z}};
    auto ns = nullspace(m);
    REQUIRE(ns.size() == 2);
    for (const auto& v : ns)
        for (const auto& row : m) CHECK(row[0] * v[0] + row[1] * v[1] + row[2] * v[2] == RatFunc(0));
    CHECK(rank(m) == 1);
}
