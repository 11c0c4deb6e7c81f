#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fjprove/errors.hpp"
#include "fjprove/reduction.hpp"

using namespace fjprove;

namespace {

LazyReal ratio(Const num, Const den) {
    return [num, den](long b) { return constant(num, b) / constant(den, b); };
}

ReductionInstance first_instance(const mpz_class& M) {
    ReductionInstance inst;
    inst.gamma = ratio(Const::log_alpha, Const::log2);
    inst.mu = ratio(Const::log_3_over_sqrt5, Const::log2);
    inst.A = lazy_integer(15);
    inst.B = lazy_integer(2);
    inst.M = M;
    return inst;
}

const mpz_class kM1("100000000000000000000000000000");
const mpz_class kQ69("20721505928824926197089563175427");

bool close(const Real& x, const char* ref, const char* tol) {
    return abs(x - Real::parse(ref, 256)) < Real::parse(tol, 256);
}

} // namespace

TEST_CASE("epsilon matches an independent evaluation") {
    ReductionOptions opt;
    opt.pinned_q = kQ69;
    const ReductionResult r = dp_reduce(first_instance(kM1), opt);
    CHECK(r.applicable);
    CHECK(r.convergent_index == 69);
    // mpmath at 300 digits
    CHECK(close(r.epsilon.lo, "0.33323318272230366899", "1e-19"));
    CHECK(close(r.bound, "109.5231864", "1e-7"));
    CHECK(r.epsilon.hi - r.epsilon.lo < Real::parse("1e-100", 256));
}

TEST_CASE("automatic selection takes the first convergent above 6M") {
    const ReductionResult r = dp_reduce(first_instance(kM1));
    CHECK(r.q > 6 * kM1);
    const ContinuedFraction cf = cf_expand(ratio(Const::log_alpha, Const::log2), 80);
    CHECK(cf.convergents[r.convergent_index].q == r.q);
    CHECK_FALSE(cf.convergents[r.convergent_index - 1].q > 6 * kM1);
}

TEST_CASE("pinned denominators") {
    ReductionOptions opt;
    opt.pinned_q = kQ69 + 1;
    CHECK_THROWS_AS(dp_reduce(first_instance(kM1), opt), not_a_convergent);
    opt.pinned_q = kQ69;
    const ReductionResult small = dp_reduce(first_instance(kQ69), opt);
    CHECK_FALSE(small.applicable);
}

TEST_CASE("monotonicity under perturbation") {
    ReductionOptions opt;
    opt.pinned_q = kQ69;
    const ReductionResult base = dp_reduce(first_instance(kM1), opt);

    // larger A: bound grows by exactly log(A'/A)/log B
    ReductionInstance wider = first_instance(kM1);
    wider.A = lazy_integer(30);
    const ReductionResult a2 = dp_reduce(wider, opt);
    CHECK(abs(a2.bound - base.bound - 1) < Real::parse("1e-60", 256));

    // larger M: epsilon can only shrink
    const ReductionResult m2 = dp_reduce(first_instance(2 * kM1), opt);
    CHECK(m2.epsilon.hi <= base.epsilon.lo);
    CHECK(m2.bound >= base.bound);

    // shifting mu by an integer changes nothing
    ReductionInstance shifted = first_instance(kM1);
    shifted.mu = [](long b) { return constant(Const::log_3_over_sqrt5, b) / constant(Const::log2, b) + 7; };
    const ReductionResult s = dp_reduce(shifted, opt);
    CHECK(abs(s.epsilon.lo - base.epsilon.lo) < Real::parse("1e-100", 256));

    // mu = 0 never gives a positive epsilon
    ReductionInstance homogeneous = first_instance(kM1);
    homogeneous.mu = lazy_integer(0);
    CHECK_THROWS_AS(dp_reduce(homogeneous), reduction_exhausted);
}

TEST_CASE("reduced bound is sound on a brute-forced instance") {
    // 0 < |u gamma - v + mu| < A B^-w with u <= M; no solution may have w >= bound
    ReductionInstance inst;
    inst.gamma = ratio(Const::log_alpha, Const::log2);
    inst.mu = [](long b) { return Real(1, b) / 7; };
    inst.A = lazy_integer(3);
    inst.B = lazy_integer(2);
    inst.M = 2000;
    const ReductionResult r = dp_reduce(inst);
    REQUIRE(r.applicable);
    const long bits = 256;
    const Real g = inst.gamma(bits);
    const Real mu = inst.mu(bits);
    const Real logb = log(Real(2, bits));
    Real worst(0L, bits);
    for (long u = 1; u <= 2000; ++u) {
        const Real x = g * u + mu;
        const Real d = nearest_int_distance(x).value;
        // largest real w with d < A 2^-w
        const Real w = log(Real(3, bits) / d) / logb;
        worst = max(worst, w);
    }
    CHECK(worst < r.bound);
}

TEST_CASE("sweep finds the worst member") {
    ReductionInstance base = first_instance(mpz_class("12000000000000000"));
    base.A = lazy_integer(11);
    const MuFamily family = [](long k) -> LazyReal {
        return [k](long b) {
            const long w = b + 32;
            const Real shift = Real(1, w) + pow(Real(2, w), -k);
            return (constant(Const::log_3_over_sqrt5, w) - log(shift)).with_precision(b) / constant(Const::log2, b);
        };
    };
    ReductionOptions opt;
    opt.pinned_q = mpz_class("1234165504911193651820557190855668171489");
    const SweepResult s = dp_sweep(base, family, 1, 109, opt);
    CHECK(s.worst_k == 66);
    CHECK(s.per_k.size() == 109);
    for (const auto& [k, r] : s.per_k) {
        CHECK(r.epsilon.lo >= s.worst.epsilon.lo);
    }
    CHECK(close(s.worst.epsilon.lo, "0.0066353173648870593", "1e-18"));
    CHECK(close(s.worst.bound, "140.5537820", "1e-7"));
    CHECK_THROWS_AS(dp_sweep(base, family, 5, 4, opt), std::invalid_argument);
}
