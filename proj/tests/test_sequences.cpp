#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <utility>

#include "fjprove/errors.hpp"
#include "fjprove/sequences.hpp"

using namespace fjprove;

namespace {

// Fast doubling, independent of the linear recurrence.
std::pair<mpz_class, mpz_class> fib_pair(unsigned k) {
    if (k == 0) {
        return {0, 1};
    }
    auto [a, b] = fib_pair(k / 2);
    mpz_class c = a * (2 * b - a);
    mpz_class d = a * a + b * b;
    if (k % 2 == 0) {
        return {c, d};
    }
    return {d, c + d};
}

mpz_class jacobsthal_closed(unsigned k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, k);
    return (p - (k % 2 == 0 ? 1 : -1)) / 3;
}

} // namespace

TEST_CASE("initial terms") {
    const std::vector<long> fib{0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55};
    const std::vector<long> jac{0, 1, 1, 3, 5, 11, 21, 43, 85, 171, 341};
    for (unsigned k = 0; k < fib.size(); ++k) {
        CHECK(term(SeqKind::fibonacci, k) == fib[k]);
        CHECK(term(SeqKind::jacobsthal, k) == jac[k]);
    }
}

TEST_CASE("recurrence agrees with independent closed forms to 2000") {
    const SequenceTable fib(SeqKind::fibonacci, 2000);
    const SequenceTable jac(SeqKind::jacobsthal, 2000);
    for (unsigned k = 0; k <= 2000; ++k) {
        CHECK(fib[k] == fib_pair(k).first);
        CHECK(jac[k] == jacobsthal_closed(k));
    }
}

TEST_CASE("Binet rounding agrees with the recurrence to 2000") {
    for (unsigned k = 0; k <= 2000; ++k) {
        CHECK(binet_check(SeqKind::fibonacci, k, 1600));
        CHECK(binet_check(SeqKind::jacobsthal, k, 1600));
    }
}

TEST_CASE("Binet evaluation at too low a precision is rejected") {
    CHECK_THROWS_AS(binet_check(SeqKind::fibonacci, 500, 64), precision_insufficient);
}

TEST_CASE("membership") {
    const SequenceTable fib(SeqKind::fibonacci, 30);
    CHECK(fib.indices_of_value(0) == std::vector<unsigned>{0});
    CHECK(fib.indices_of_value(1) == std::vector<unsigned>{1, 2});
    CHECK(fib.indices_of_value(4).empty());
    CHECK(fib.indices_of_value(832040) == std::vector<unsigned>{30});
    CHECK(fib.indices_of_value(1346269).empty());
    CHECK(indices_of_value(SeqKind::jacobsthal, 1, 1) == std::vector<unsigned>{1});
    CHECK(indices_of_value(SeqKind::jacobsthal, 43, 10) == std::vector<unsigned>{7});
}

TEST_CASE("growth bounds hold to 300") {
    const GrowthReport r = verify_growth_bounds(300);
    CHECK(r.holds);
    CHECK_FALSE(r.first_violation);
    CHECK_THROWS(verify_growth_bounds(4));
}

TEST_CASE("growth crossovers agree with a direct scan") {
    // alpha^(n-1) <= 2^(n-2)  <=>  F-free comparison of powers
    const long bits = 512;
    const Real alpha = constant(Const::alpha, bits);
    unsigned last_fail_weak = 0;
    unsigned last_fail_strict = 0;
    for (unsigned n = 1; n <= 300; ++n) {
        const Real lhs = pow(alpha, static_cast<long>(n) - 1);
        const Real rhs = pow(Real(2, bits), static_cast<long>(n) - 2);
        if (!(lhs <= rhs)) {
            last_fail_weak = n;
        }
        if (!(lhs * 2 < rhs)) {
            last_fail_strict = n;
        }
    }
    const GrowthReport r = verify_growth_bounds(300);
    CHECK(r.fib_below_pow2_from == last_fail_weak + 1);
    CHECK(r.twice_fib_below_pow2_from == last_fail_strict + 1);
    CHECK(growth_crossover(1, false) == last_fail_weak + 1);
    CHECK(growth_crossover(2, true) == last_fail_strict + 1);
    CHECK(last_fail_weak + 1 == 5);
    CHECK(last_fail_strict + 1 == 8);
}
