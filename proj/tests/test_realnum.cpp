#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fjprove/errors.hpp"
#include "fjprove/realnum.hpp"

using namespace fjprove;

namespace {

// Published decimal expansions (40 digits, truncated).
constexpr const char* kLog2 = "0.6931471805599453094172321214581765680755";
constexpr const char* kLogAlpha = "0.4812118250596034474977589134243684231351";
constexpr const char* kSqrt5 = "2.2360679774997896964091736687312762354406";

bool agrees(const Real& x, const char* digits, int places) {
    const Real ref = Real::parse(digits, 256);
    return abs(x - ref) < pow(Real(10, 256), -places);
}

} // namespace

TEST_CASE("named constants match published digits") {
    CHECK(agrees(constant(Const::log2, 256), kLog2, 39));
    CHECK(agrees(constant(Const::log_alpha, 256), kLogAlpha, 39));
    CHECK(agrees(constant(Const::sqrt5, 256), kSqrt5, 39));
    const Real alpha = constant(Const::alpha, 256);
    CHECK(abs(alpha * alpha - alpha - 1) < pow(Real(2, 256), -240));
    CHECK(abs(constant(Const::log_3_over_sqrt5, 256) + constant(Const::log_sqrt5_over_3, 256)) <
          pow(Real(2, 256), -240));
}

TEST_CASE("parse and format") {
    CHECK(Real::parse("1.37e12", 128) == Real(1370000000000L, 128));
    CHECK_THROWS_AS(Real::parse("1.3x", 128), std::invalid_argument);
    CHECK_THROWS_AS(Real::parse("", 128), std::invalid_argument);
    const Real third = Real(1, 256) / 3;
    CHECK(third.to_sig(5) == "0.33333");
    CHECK(third.to_sig(5, Round::up) == "0.33334");
    CHECK(third.to_fixed(2, Round::down) == "0.33");
    CHECK(third.to_fixed(2, Round::up) == "0.34");
    CHECK(Real(mpq_class(1095231, 10000), 256).to_fixed(2, Round::down) == "109.52");
    CHECK(Real(mpq_class(1095231, 10000), 256).to_fixed(2, Round::up) == "109.53");
    CHECK(Real(51842492459531294L, 128).to_sci(6) == "5.18425e+16");
}

TEST_CASE("integer parts and exact value") {
    CHECK(Real(mpq_class(7, 2), 128).floor_int() == 3);
    CHECK(Real(mpq_class(7, 2), 128).ceil_int() == 4);
    CHECK(Real(mpq_class(-7, 2), 128).round_int() == -4);
    CHECK(Real(mpq_class(3, 8), 128).exact() == mpq_class(3, 8));
}

TEST_CASE("nearest integer distance") {
    CHECK(abs(nearest_int_distance(Real::parse("2.75", 128)).value - Real::parse("0.25", 128)) < Real::parse("1e-30", 128));
    CHECK(nearest_int_distance(Real(mpq_class(1, 2), 128)).value == Real(mpq_class(1, 2), 128));
    CHECK(nearest_int_distance(Real(5, 128)).value.is_zero());
    const Real near_half = Real(mpq_class(1, 2), 128) + pow(Real(2, 128), -127);
    CHECK_THROWS_AS(nearest_int_distance(near_half), ambiguous_rounding);
}

TEST_CASE("continued fraction of rationals terminates") {
    const ContinuedFraction half = cf_expand(Real(mpq_class(1, 2), 256), 10);
    CHECK(half.terminated);
    CHECK(half.quotients == std::vector<mpz_class>{0, 2});
    const ContinuedFraction dyadic = cf_expand(Real(mpq_class(13, 8), 256), 10);
    CHECK(dyadic.terminated);
    CHECK(dyadic.quotients == std::vector<mpz_class>{1, 1, 1, 1, 2});
}

TEST_CASE("a non-dyadic rational is ambiguous at its last quotient") {
    // 355/113 rounds to a neighbour whose expansion is [3; 7, 16, huge] or [3; 7, 15, 1, huge]
    const Real x(mpq_class(355, 113), 256);
    CHECK(cf_expand(x, 2).quotients == std::vector<mpz_class>{3, 7});
    CHECK_THROWS_AS(cf_expand(x, 3), precision_exhausted);
}

TEST_CASE("continued fractions of quadratic irrationals are periodic") {
    const ContinuedFraction phi = cf_expand(constant(Const::alpha, 512), 60);
    CHECK_FALSE(phi.terminated);
    for (const auto& a : phi.quotients) {
        CHECK(a == 1);
    }
    const ContinuedFraction root2 = cf_expand(sqrt(Real(2, 512)), 60);
    CHECK(root2.quotients[0] == 1);
    for (std::size_t i = 1; i < root2.quotients.size(); ++i) {
        CHECK(root2.quotients[i] == 2);
    }
}

TEST_CASE("continued fraction runs out at low precision") {
    CHECK_THROWS_AS(cf_expand(constant(Const::log2, 64), 100), precision_exhausted);
}

TEST_CASE("convergent determinant identity") {
    const LazyReal x = [](long b) { return constant(Const::log_alpha, b) / constant(Const::log2, b); };
    const ContinuedFraction cf = cf_expand(x, 100);
    for (std::size_t k = 1; k < cf.convergents.size(); ++k) {
        const auto& c = cf.convergents[k];
        const auto& d = cf.convergents[k - 1];
        const mpz_class det = c.p * d.q - d.p * c.q;
        CHECK(det == ((k % 2 == 1) ? 1 : -1));
    }
}

TEST_CASE("convergents are the best approximations up to 10^4") {
    const long bits = 256;
    const Real x = constant(Const::log_alpha, bits) / constant(Const::log2, bits);
    std::vector<mpz_class> records;
    Real best(2, bits);
    for (long q = 1; q <= 10000; ++q) {
        const Real d = nearest_int_distance(x * q).value;
        if (d < best) {
            best = d;
            records.emplace_back(q);
        }
    }
    const ContinuedFraction cf = cf_expand(x, 40);
    std::vector<mpz_class> qs;
    for (const auto& c : cf.convergents) {
        if (c.q <= 10000 && (qs.empty() || qs.back() != c.q)) {
            qs.push_back(c.q);
        }
    }
    CHECK(records == qs);
}

TEST_CASE("lazy expansion locates known denominators") {
    const LazyReal x = [](long b) { return constant(Const::log_alpha, b) / constant(Const::log2, b); };
    const ContinuedFraction cf = cf_expand(x, 90);
    CHECK(cf.index_of_denominator(mpz_class("20721505928824926197089563175427")) == std::optional<std::size_t>(69));
    CHECK(cf.index_of_denominator(mpz_class("1234165504911193651820557190855668171489")) ==
          std::optional<std::size_t>(82));
    CHECK_FALSE(cf.index_of_denominator(mpz_class("20721505928824926197089563175428")));
    const auto near = cf.nearest_denominator(mpz_class("20721505928824926197089563175428"));
    REQUIRE(near);
    CHECK(*near == 69);
}

TEST_CASE("certified digits") {
    CHECK(certified_digits(lazy_constant(Const::log2), 128, 10) == "0.6931471806");
    CHECK(certified_digits(lazy_rational(1, 3), 128, 4, Round::up) == "0.3334");
}
