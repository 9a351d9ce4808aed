#include "doctest.h"

#include "mastercount/hyper/reduce.hpp"
#include "mastercount/kernel/expr_parser.hpp"

#include <random>

using namespace mastercount;
using namespace mastercount::hyper;
using kernel::make_rat;
using kernel::pow10;
using kernel::Var;

namespace {

const RatFunc n = RatFunc::var(Var::n);
const RatFunc z = RatFunc::var(Var::z);

ParamExpr P(const char* s) { return ParamExpr::parse(s); }

// Canonical bases of the sunset reduction.
const PFQ Fx({P("1/2"), P("3-n")}, {P("n/2")});
const PFQ Fy({P("1"), P("(n-1)/2"), P("2-n/2")}, {P("n/2"), P("n-1")});

ThetaPoly at_n(const ThetaPoly& op, const BigRat& n0) {
    std::vector<RatFunc> c;
    for (const auto& x : op.coeffs()) c.push_back(x.substitute(Var::n, n0));
    return ThetaPoly(std::move(c));
}

bool close(const BigFloat& a, const BigFloat& b, int digits) {
    return kernel::relative_difference(a, b) < pow10(-digits, a.precision());
}

BigFloat log_oracle(const BigRat& x, int prec) {
    return kernel::log(BigFloat(x, kernel::bits_for_digits(prec)));
}

ParamExpr random_param(std::mt19937& rng) {
    static const BigRat slopes[] = {0, make_rat(1, 2), make_rat(-1, 2), 1, -1};
    std::uniform_int_distribution<int> num(-18, 18), pick(0, 4);
    return {make_rat(num(rng), 6), slopes[pick(rng)]};
}

}  // namespace

TEST_CASE("series_sum") {
    PFQ f({P("1/2"), P("-1")}, {P("2")});
    CHECK(series_sum(f, make_rat(1, 2), BigRat(0), 30) == BigFloat(make_rat(7, 8), 256));
    CHECK(series_sum(Fx, BigRat(0), make_rat(7, 2), 30) == BigFloat(1L, 64));
    PFQ log_series({P("1"), P("1")}, {P("2")});
    BigFloat expected = BigFloat(2L, 256) * log_oracle(2, 40);
    CHECK(close(series_sum(log_series, make_rat(1, 2), BigRat(0), 40), expected, 40));
    CHECK(series_sum(log_series, make_rat(1, 2), BigRat(0), 20).to_string(17) == "1.3862943611198906");

    CHECK_THROWS_WITH(series_sum(log_series, BigRat(1), BigRat(0), 20), "divergent series");
    CHECK_THROWS_WITH(series_sum(log_series, make_rat(-3, 2), BigRat(0), 20), "divergent series");
    // terminating series may be summed anywhere
    CHECK(series_sum(f, BigRat(4), BigRat(0), 20) == BigFloat(0L, 64));
    PFQ pole({P("1/2")}, {P("-2")});
    CHECK_THROWS_WITH(series_sum(pole, make_rat(1, 3), BigRat(0), 20), "lower-parameter pole");
    // (-1)_k terminates before (-2)_k vanishes
    PFQ fine({P("-1")}, {P("-2")});
    CHECK(close(series_sum(fine, make_rat(1, 3), BigRat(0), 20), BigFloat(make_rat(7, 6), 128), 20));
}

TEST_CASE("series_theta") {
    PFQ f({P("1/2"), P("-1")}, {P("2")});
    CHECK(series_theta(f, 0, make_rat(1, 3), BigRat(0), 30) == series_sum(f, make_rat(1, 3), BigRat(0), 30));
    CHECK(series_theta(f, 1, make_rat(1, 2), BigRat(0), 30) == BigFloat(make_rat(-1, 8), 256));
    // theta(-ln(1-z)/z) = 1/(1-z) + ln(1-z)/z
    PFQ log_series({P("1"), P("1")}, {P("2")});
    BigFloat expected = BigFloat(2L, 256) - BigFloat(2L, 256) * log_oracle(2, 40);
    CHECK(close(series_theta(log_series, 1, make_rat(1, 2), BigRat(0), 40), expected, 40));
    CHECK(series_theta(log_series, 1, make_rat(1, 2), BigRat(0), 20).to_string(16) == "0.6137056388801094");
}

TEST_CASE("cancel_params") {
    PFQ f({P("3-n"), P("2-n/2"), P("1/2"), P("1")}, {P("2-n/2"), P("1"), P("n/2")});
    CHECK(cancel_params(f) == Fx);
    PFQ none({P("3-n"), P("1/3"), P("1/2"), P("1")}, {P("2-n/2"), P("2"), P("n/2")});
    CHECK(cancel_params(none) == none);
    PFQ second({P("1"), P("2-n/2"), P("(n-1)/2"), P("n/2")}, {P("n/2-1"), P("n-2"), P("n/2")});
    CHECK(cancel_params(second) == PFQ({P("1"), P("2-n/2"), P("(n-1)/2")}, {P("n-2"), P("n/2-1")}));
}

TEST_CASE("contiguous operators") {
    // index of the upper parameter 3-n in Fx
    std::size_t ia = 0;
    while (Fx.upper()[ia] != P("3-n")) ++ia;
    auto [op, same] = raise_upper(Fx, ia);
    CHECK(same == Fx);
    RatFunc a = 3 - n;
    CHECK(op == ThetaPoly(std::vector<RatFunc>{1, 1 / a}));

    // n = 4: a = -1, Fx = 1 - z/4 and 2F1(1/2, 0; 2; z) = 1
    RatFunc fx4 = 1 - z / 4;
    CHECK(RatFunc(terminating_polynomial(Fx, 4)) == fx4);
    CHECK(at_n(op, 4).apply(fx4) == RatFunc(1));
    CHECK(RatFunc(terminating_polynomial(Fx.with_upper_shifted(ia, 1), 4)) == RatFunc(1));

    auto [lop, same2] = lower_lower(Fx, 0);
    CHECK(lop == ThetaPoly(std::vector<RatFunc>{1, 1 / (n / 2 - 1)}));
    CHECK(at_n(lop, 4).apply(fx4) == 1 - z / 2);
    CHECK(RatFunc(terminating_polynomial(Fx.with_lower_shifted(0, -1), 4)) == 1 - z / 2);

    PFQ zero_upper({P("0"), P("1/2")}, {P("n/2")});
    CHECK_THROWS_WITH(raise_upper(zero_upper, 0), "zero parameter, operator singular");
    PFQ unit_lower({P("1/2"), P("3-n")}, {P("1")});
    CHECK_THROWS_WITH(lower_lower(unit_lower, 0), "operator singular");
}

TEST_CASE("theta_reduce") {
    PFQ f({P("n"), P("1/2")}, {P("n/2")});
    RatFunc a = n, b = make_rat(1, 2), c = n / 2;
    ThetaPoly sq = ThetaPoly::theta() * ThetaPoly::theta();
    ThetaPoly reduced = theta_reduce(f, sq);
    ThetaPoly expected(std::vector<RatFunc>{a * b * z / (1 - z), ((a + b) * z - c + 1) / (1 - z)});
    CHECK(reduced == expected);

    ThetaPoly low(std::vector<RatFunc>{z, n});
    CHECK(theta_reduce(f, low) == low);

    PFQ g({P("1"), P("1")}, {P("2")});
    const int prec = 30;
    auto vals = series_theta_all(g, 2, make_rat(1, 2), BigRat(0), prec);
    ThetaPoly rg = theta_reduce(g, sq);
    BigFloat nb(0L, 256), zb(make_rat(1, 2), 256);
    CHECK(close(rg.eval(vals, nb, zb), vals[2], prec - 5));
}

TEST_CASE("reduce_shifts") {
    auto zero = reduce_shifts(Fx, Fx);
    CHECK(zero.op == ThetaPoly(RatFunc(1)));
    CHECK(zero.remainder.is_zero());
    CHECK(zero.steps == 0);

    // x3 = a 2F1(1/2, 1+a; b; z)
    PFQ x3f({P("1/2"), P("4-n")}, {P("n/2")});
    auto x3 = reduce_shifts(x3f, Fx);
    CHECK((3 - n) * x3.op == ThetaPoly(std::vector<RatFunc>{3 - n, 1}));
    CHECK(x3.remainder.is_zero());
    CHECK(x3.steps == 1);

    // y2 = -(2/z)(d-1) 3F2(1, (n-1)/2, c; n/2, d-1; z)
    PFQ y2f({P("1"), P("(n-1)/2"), P("2-n/2")}, {P("n/2"), P("n-2")});
    auto y2 = reduce_shifts(y2f, Fy);
    ThetaPoly scaled = (-2 / z * (n - 2)) * y2.op;
    CHECK(scaled == (-2 / z) * ThetaPoly(std::vector<RatFunc>{n - 2, 1}));
    CHECK(y2.remainder.is_zero());

    PFQ wrong({P("1/2"), P("2-n")}, {P("n/2")});
    CHECK_THROWS_WITH(reduce_shifts(wrong, Fx), "unsupported shift direction");
    PFQ raised_lower({P("1/2"), P("3-n")}, {P("n/2+1")});
    CHECK_THROWS_WITH(reduce_shifts(raised_lower, Fx), "unsupported shift direction");
}

TEST_CASE("unit upper parameter collapse") {
    // 3F2(4-n, 1, 3/2; 2, n/2) = ((b-1)/((a-1)(c-1) z)) [2F1(3-n, 1/2; n/2-1) - 1] reduced onto Fx
    PFQ f({P("4-n"), P("1"), P("3/2")}, {P("2"), P("n/2")});
    auto r = reduce_shifts(f, Fx);
    CHECK(r.basis == Fx);
    CHECK(r.op.degree() <= 1);
    CHECK_FALSE(r.remainder.is_zero());
    for (BigRat z0 : {make_rat(1, 10), make_rat(3, 10), make_rat(7, 10)}) {
        BigRat n0 = make_rat(37, 10);
        CHECK(close(eval_reduced(r, z0, n0, 30), series_sum(f, z0, n0, 30), 25));
    }
    // m = 3 uses a quadratic head polynomial
    PFQ g({P("1"), P("7/3"), P("n")}, {P("3"), P("n/2+1/5")});
    PFQ tg({P("1/3"), P("n-2")}, {P("n/2-9/5")});
    auto rg = reduce_shifts(g, tg);
    for (BigRat z0 : {make_rat(1, 3), make_rat(-1, 2)}) {
        BigRat n0 = make_rat(13, 7);
        CHECK(close(eval_reduced(rg, z0, n0, 30), series_sum(g, z0, n0, 30), 25));
    }
}

TEST_CASE("basis_count") {
    PFQ t1({P("3-n"), P("2-n/2"), P("1/2"), P("1")}, {P("2-n/2"), P("1"), P("n/2")});
    PFQ t2({P("1"), P("2-n/2"), P("(n-1)/2"), P("n/2")}, {P("n/2"), P("n-1"), P("n/2")});
    CHECK(basis_count(t1) == 2);
    CHECK(basis_count(t2) == 2);
    CHECK(basis_count(PFQ({P("1/2")}, {})) == 1);
    CHECK(basis_count(Fx) == 2);
    CHECK(basis_count(Fy) == 2);
}

TEST_CASE("eval_reduced") {
    ReducedForm plain{Fx, ThetaPoly(RatFunc(1)), RatFunc(0), 0};
    CHECK(eval_reduced(plain, make_rat(1, 3), make_rat(18, 5), 30) == series_sum(Fx, make_rat(1, 3), make_rat(18, 5), 30));
    ReducedForm x3{Fx, ThetaPoly(std::vector<RatFunc>{3 - n, 1}), RatFunc(0), 1};
    CHECK(eval_reduced(x3, make_rat(1, 2), BigRat(4), 30) == BigFloat(-1L, 64));
    ReducedForm y2{Fy, (-2 / z) * ThetaPoly(std::vector<RatFunc>{n - 2, 1}), RatFunc(0), 1};
    CHECK(eval_reduced(y2, make_rat(1, 2), BigRat(4), 30) == BigFloat(-8L, 64));
}

TEST_CASE("pFq grammar and JSON") {
    PFQ f = parse_pfq("4F3[3-n,2-n/2,1/2,1; 2-n/2,1,n/2]");
    CHECK(f.p() == 4);
    CHECK(cancel_params(f) == Fx);
    CHECK(parse_pfq(" 2F1 [ 1 , 1 ; 2 ] ") == PFQ({P("1"), P("1")}, {P("2")}));
    CHECK(parse_pfq("1F0[1/2]").q() == 0);
    CHECK(parse_pfq("1F0[1/2;]").q() == 0);
    CHECK(parse_pfq(Fy.to_string()) == Fy);
    CHECK(pfq_from_json(to_json(Fy)) == Fy);
    CHECK(to_json(Fx)["upper"][0] == nlohmann::json{{"c0", "3"}, {"c1", "-1"}});

    auto position_of = [](const char* text) {
        try {
            parse_pfq(text);
        } catch (const kernel::ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1L;
    };
    CHECK(position_of("2F1[1,1;2") == 9);
    CHECK(position_of("2F1[1,x;2]") == 6);
    CHECK(position_of("2F1[1,1,1;2]") == 4);
    CHECK(position_of("2G1[1,1;2]") == 1);
    CHECK(position_of("2F1[1,n^2;2]") == 6);
    CHECK(position_of("2F1[1,0.5;2]") == 7);
}

TEST_CASE("ParamExpr text") {
    for (const char* s : {"3-n", "2-n/2", "(n-1)/2", "n/2-1", "n-1", "n/2", "1/2", "-n", "3*n/2+1", "(3*n+1)/4", "0"})
        CHECK(P(s).to_string() == s);
    CHECK(P("n/2 - 1/2").to_string() == "(n-1)/2");
    CHECK_THROWS(P("n^2"));
    CHECK_THROWS(P("z"));
    CHECK_THROWS(P("1/n"));
}

TEST_CASE("property: reduction round trip and step count") {
    std::mt19937 rng(42);
    const BigRat zs[] = {make_rat(1, 10), make_rat(1, 3), make_rat(7, 10)};
    const int prec = 30;
    int done = 0, attempts = 0;
    while (done < 50 && attempts < 2000) {
        ++attempts;
        int p = std::uniform_int_distribution<int>(2, 3)(rng);
        std::vector<ParamExpr> up, lo;
        for (int i = 0; i < p; ++i) up.push_back(random_param(rng));
        for (int j = 0; j + 1 < p; ++j) lo.push_back(random_param(rng));
        PFQ t(up, lo);
        std::uniform_int_distribution<int> sh(0, 2);
        long total = 0;
        for (auto& a : up) {
            int s = sh(rng);
            a = a + BigRat(s);
            total += s;
        }
        for (auto& b : lo) {
            int s = sh(rng);
            b = b - BigRat(s);
            total += s;
        }
        PFQ f(up, lo);
        if (cancel_params(f) != f || cancel_params(t) != t) continue;
        BigRat n0 = make_rat(4 * 97 - 2 * std::uniform_int_distribution<int>(1, 40)(rng), 97);
        ReducedForm r;
        try {
            r = reduce_shifts(f, t);
        } catch (const Error&) {
            continue;  // a parameter passed through 0 (or 1 for lowers) symbolically
        }
        CHECK(r.steps == total);
        CHECK(r.op.degree() < t.order());
        bool ok = true;
        for (const auto& z0 : zs) {
            try {
                BigFloat direct = series_sum(f, z0, n0, prec);
                BigFloat reduced = eval_reduced(r, z0, n0, prec);
                CHECK(close(reduced, direct, prec - 5));
            } catch (const Error&) {
                ok = false;  // parameter pole at this n0
            }
        }
        if (ok) ++done;
    }
    CHECK(done == 50);
}

TEST_CASE("property: contiguous operators are sound") {
    std::mt19937 rng(5);
    const int prec = 30;
    int done = 0;
    while (done < 40) {
        std::vector<ParamExpr> up{random_param(rng), random_param(rng)}, lo{random_param(rng)};
        if (done % 2) {
            up.push_back(random_param(rng));
            lo.push_back(random_param(rng));
        }
        PFQ f(up, lo);
        BigRat n0 = make_rat(3 * 89 + std::uniform_int_distribution<int>(1, 80)(rng), 89);
        BigRat z0 = make_rat(std::uniform_int_distribution<int>(-6, 6)(rng), 10);
        bool upper = done % 3 != 0;
        std::size_t which = upper ? rng() % f.p() : rng() % f.q();
        try {
            auto [op, same] = upper ? raise_upper(f, which) : lower_lower(f, which);
            PFQ shifted = upper ? f.with_upper_shifted(which, 1) : f.with_lower_shifted(which, -1);
            auto vals = series_theta_all(f, 1, z0, n0, prec);
            mpfr_prec_t bits = kernel::bits_for_digits(prec);
            BigFloat lhs = series_sum(shifted, z0, n0, prec);
            BigFloat rhs = op.eval(vals, BigFloat(n0, bits), BigFloat(z0, bits));
            CHECK(close(lhs, rhs, prec - 5));
            ++done;
        } catch (const Error&) {
        }
    }
}

TEST_CASE("property: ODE residual vanishes") {
    std::mt19937 rng(11);
    const int prec = 30;
    for (int p = 2; p <= 4; ++p) {
        int done = 0;
        while (done < 10) {
            std::vector<ParamExpr> up, lo;
            for (int i = 0; i < p; ++i) up.push_back(random_param(rng));
            for (int j = 0; j + 1 < p; ++j) lo.push_back(random_param(rng));
            PFQ f(up, lo);
            BigRat n0 = make_rat(3 * 71 + std::uniform_int_distribution<int>(1, 60)(rng), 71);
            BigRat z0 = make_rat(std::uniform_int_distribution<int>(1, 7)(rng), 10);
            try {
                auto vals = series_theta_all(f, p, z0, n0, prec);
                mpfr_prec_t bits = kernel::bits_for_digits(prec);
                BigFloat nb(n0, bits), zb(z0, bits);
                ThetaPoly ode = ode_operator(f);
                BigFloat residual = ode.eval(vals, nb, zb);
                // scale: the z prod(theta + a) part on its own
                ThetaPoly rhs(RatFunc(1));
                for (const auto& a : f.upper()) rhs = rhs * ThetaPoly(std::vector<RatFunc>{a.to_ratfunc(), 1});
                BigFloat scale = kernel::abs(rhs.eval(vals, nb, zb) * zb);
                CHECK(kernel::abs(residual) <= scale * pow10(-prec + 5, bits));
                ++done;
            } catch (const Error&) {
            }
        }
    }
}

TEST_CASE("property: cancellation preserves values and counts") {
    std::mt19937 rng(3);
    for (int i = 0; i < 30; ++i) {
        ParamExpr shared = random_param(rng);
        PFQ f({random_param(rng), shared, random_param(rng)}, {shared, random_param(rng)});
        CHECK(basis_count(cancel_params(f)) == basis_count(f));
        CHECK(cancel_params(f).p() == 2);
        BigRat n0 = make_rat(3 * 53 + 7 * i, 53);
        try {
            CHECK(close(series_sum(f, make_rat(2, 5), n0, 25), series_sum(cancel_params(f), make_rat(2, 5), n0, 25), 25));
        } catch (const Error&) {
        }
    }
}
