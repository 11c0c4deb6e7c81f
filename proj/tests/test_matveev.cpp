#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fjprove/errors.hpp"
#include "fjprove/matveev.hpp"

using namespace fjprove;

namespace {

Real exact_height(const mpq_class& x, long bits) {
    mpz_class num = abs(x.get_num());
    const mpz_class& den = x.get_den();
    return log(Real(num > den ? num : den, bits));
}

} // namespace

TEST_CASE("Matveev constant") {
    const Real c = matveev_constant(3, 2);
    CHECK(c > Real::parse("9.69e11", 256));
    CHECK(c < Real::parse("9.70e11", 256));
    const long double ref = 1.4L * std::pow(30.0L, 6) * std::pow(3.0L, 4.5L) * 4 * (1 + std::log(2.0L));
    CHECK(std::fabs(c.to_double() / static_cast<double>(ref) - 1) < 1e-15);
    CHECK(matveev_constant(2, 1).to_double() == doctest::Approx(1.4 * std::pow(30.0, 5) * std::pow(2.0, 4.5)));
}

TEST_CASE("heights of leaves") {
    const long b = 256;
    CHECK(height_bound(HeightExpr::rational(2), b) == log(Real(2, b)));
    CHECK(height_bound(HeightExpr::rational(-7, 3), b) == log(Real(7, b)));
    CHECK(abs(height_bound(HeightExpr::known(KnownAlgebraic::alpha), b) - constant(Const::log_alpha, b) / 2) <
          pow(Real(2, b), -240));
    CHECK(abs(height_bound(HeightExpr::known(KnownAlgebraic::three_over_sqrt5), b) - log(Real(3, b))) <
          pow(Real(2, b), -240));
}

TEST_CASE("height calculus dominates exact heights of random rationals") {
    std::mt19937_64 rng(20260101);
    std::uniform_int_distribution<long> dist(1, 100000);
    const long b = 256;
    for (int i = 0; i < 50; ++i) {
        mpq_class x(dist(rng), dist(rng));
        mpq_class y(dist(rng) * (i % 2 ? -1 : 1), dist(rng));
        x.canonicalize();
        y.canonicalize();
        const HeightExpr hx = HeightExpr::rational(x.get_num(), x.get_den());
        const HeightExpr hy = HeightExpr::rational(y.get_num(), y.get_den());
        const Real slack = pow(Real(2, b), -200);
        CHECK(abs(hx.height_bound(b) - exact_height(x, b)) < slack);
        CHECK(exact_height(x * y, b) <= HeightExpr::product(hx, hy).height_bound(b) + slack);
        CHECK(exact_height(x / y, b) <= HeightExpr::quotient(hx, hy).height_bound(b) + slack);
        CHECK(exact_height(x + y, b) <= HeightExpr::sum(hx, hy).height_bound(b) + slack);
        mpq_class cube = x * x * x;
        CHECK(abs(HeightExpr::power(hx, -3).height_bound(b) - exact_height(cube, b)) < slack);
        CHECK(abs(HeightExpr::product(hx, hy).value(b) - Real(mpq_class(x * y), b)) < slack);
    }
}

TEST_CASE("validation of a linear form") {
    const long b = 256;
    LinearFormSpec spec;
    spec.D = 2;
    spec.B = 100;
    spec.factors.push_back({"2", HeightExpr::rational(2), -80, Real::parse("1.4", b)});
    spec.factors.push_back({"alpha", HeightExpr::known(KnownAlgebraic::alpha), 100, Real::parse("0.5", b)});
    spec.factors.push_back({"3/sqrt5", HeightExpr::known(KnownAlgebraic::three_over_sqrt5), 1, Real::parse("2.2", b)});
    CHECK_NOTHROW(validate(spec));
    CHECK(abs(matveev_coefficient(spec) * 2 / Real::parse("2986803350406.2467", b) - 1) < Real::parse("1e-15", b));
    CHECK(matveev_log_lower_bound(spec) < 0);

    LinearFormSpec small_a = spec;
    small_a.factors[0].A = Real::parse("1.3", b);
    CHECK_THROWS_AS(validate(small_a), invalid_spec);
    LinearFormSpec small_b = spec;
    small_b.B = 99;
    CHECK_THROWS_AS(validate(small_b), invalid_spec);
    LinearFormSpec negative = spec;
    negative.factors[0].gamma = HeightExpr::rational(-2);
    CHECK_THROWS_AS(validate(negative), invalid_spec);
}

namespace {

GrowthInequality simple(long slope, long coeff, long c0, long c1, long offset) {
    const long b = 256;
    return {"test", Real(slope, b), Real(coeff, b), Real(c0, b), Real(c1, b), Real(offset, b)};
}

} // namespace

TEST_CASE("crossover agrees with a scan on small inequalities") {
    const std::vector<GrowthInequality> cases{simple(1, 10, 1, 0, 0), simple(1, 3, 2, 1, 5), simple(2, 1, 1, 1, 40),
                                              simple(1, 0, 0, 0, 0), simple(5, 1, 1, 0, 0)};
    for (const auto& f : cases) {
        long last_bad = 2;
        for (long x = 3; x <= 200000; ++x) {
            if (f(x) <= 0) {
                last_bad = x;
            }
        }
        CHECK(crossover_solve(f, 10) == last_bad + 1);
        CHECK(crossover_solve(f, 100000) == last_bad + 1);
    }
}

TEST_CASE("crossover of a published inequality") {
    const long b = 256;
    GrowthInequality f{"a", constant(Const::log2, b), Real::parse("1.37e12", b), Real(4, b), Real::parse("6e12", b),
                       Real(b)};
    const mpz_class x = crossover_solve(f, 1000);
    CHECK(f(x) > 0);
    CHECK(f(x - 1) <= 0);
    CHECK(x <= mpz_class("100000000000000000000000000000"));
    CHECK(x > mpz_class("10000000000000000000000000000"));
    CHECK_THROWS_AS(crossover_solve(f, 1000, mpz_class("1000000000000")), no_crossover);
    GrowthInequality bad = f;
    bad.slope = Real(b);
    CHECK_THROWS(crossover_solve(bad, 1000));
}
