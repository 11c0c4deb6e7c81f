#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fjprove/expr.hpp"

using namespace fjprove;

namespace {

bool near(const LazyReal& f, const Real& ref) { return abs(f(256) - ref) < pow(Real(2, 256), -240); }

} // namespace

TEST_CASE("expressions evaluate") {
    const long b = 256;
    CHECK(near(parse_real_expression("log(alpha)/log(2)"), constant(Const::log_alpha, b) / constant(Const::log2, b)));
    CHECK(near(parse_real_expression("log(3/sqrt5)"), constant(Const::log_3_over_sqrt5, b)));
    CHECK(near(parse_real_expression("2*5/log2"), Real(10, b) / constant(Const::log2, b)));
    CHECK(near(parse_real_expression("-2^3 + 1"), Real(-7, b)));
    CHECK(near(parse_real_expression("alpha^-2"), pow(constant(Const::alpha, b), -2)));
    CHECK(near(parse_real_expression("alpha + beta"), Real(1, b)));
    CHECK(near(parse_real_expression("exp(log(7))"), Real(7, b)));
    CHECK(near(parse_real_expression("1.5e3 - 1500"), Real(0L, b)));
    CHECK(parse_real_expression("pi")(128).to_sig(10) == "3.141592654");
    CHECK(parse_real_expression("e")(128).to_sig(10) == "2.718281828");
}

TEST_CASE("malformed expressions are rejected while parsing") {
    for (const char* bad : {"", "log(", "2 +", "foo", "2 ^ x", "(1", "1 2", "sqrt 5"}) {
        CHECK_THROWS_AS(parse_real_expression(bad), std::invalid_argument);
    }
    CHECK_THROWS_AS(parse_real_expression("log(-1)")(128), std::domain_error);
    CHECK_THROWS_AS(parse_real_expression("1/(2-2)")(128), std::domain_error);
}

TEST_CASE("exact integers") {
    CHECK(parse_exact_integer("1e29") == mpz_class("100000000000000000000000000000"));
    CHECK(parse_exact_integer("3.7e28") == mpz_class("37000000000000000000000000000"));
    CHECK(parse_exact_integer("1200") == 1200);
    CHECK(parse_exact_integer("1.2e16") == mpz_class("12000000000000000"));
    CHECK_THROWS_AS(parse_exact_integer("1.25e1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_exact_integer("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_exact_integer("1e"), std::invalid_argument);
}
