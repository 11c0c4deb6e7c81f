#pragma once

// Dujella-Pethő reduction: for a convergent denominator q > 6M of gamma with
// eps = ||mu q|| - M ||gamma q|| > 0, the inequality
//   0 < |u gamma - v + mu| < A B^{-w}
// has no solution in integers 0 < u <= M, v, w >= log(A q / eps) / log B.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fjprove/realnum.hpp"

namespace fjprove {

struct ReductionInstance {
    LazyReal gamma;  // irrational multiplier
    LazyReal mu;     // shift
    LazyReal A;      // > 0
    LazyReal B;      // > 1
    mpz_class M;     // >= max |u|
};

struct ReductionOptions {
    long precision_bits = kDefaultPrecisionBits;
    std::optional<mpz_class> pinned_q;
    std::size_t convergent_count = 120;
};

struct EpsilonInterval {
    Real lo;
    Real hi;
};

struct ReductionResult {
    mpz_class q;
    std::size_t convergent_index = 0;  // a_0 counts as index 0
    EpsilonInterval epsilon;
    Real bound;                        // log(A q / eps_lo) / log B
    bool applicable = false;
    std::string note;
};

// eps evaluated at `bits` and `2*bits`, widened by the difference and the
// propagated rounding error of mu*q and gamma*q.
EpsilonInterval epsilon_interval(const LazyReal& gamma, const LazyReal& mu, const mpz_class& M, const mpz_class& q,
                                 long bits);

Real reduction_bound(const ReductionInstance& inst, const mpz_class& q, const Real& epsilon_lo, long bits);

// With a pinned q the result may be inapplicable (q <= 6M or eps not
// certified positive); otherwise convergents are scanned in increasing order
// and reduction_exhausted is thrown when none qualifies. A pinned q that is
// not a convergent denominator throws not_a_convergent.
ReductionResult dp_reduce(const ReductionInstance& inst, const ReductionOptions& options = {});

// mu_k for each member of the family.
using MuFamily = std::function<LazyReal(long k)>;

struct SweepResult {
    long worst_k = 0;
    ReductionResult worst;
    std::vector<std::pair<long, ReductionResult>> per_k;
};

// Runs the reduction for every k in [k_lo, k_hi] with one shared q (pinned,
// or the first convergent > 6M that works for every member). The worst member
// has the smallest eps_lo and so the largest bound. A member with eps <= 0
// under a pinned q throws reduction_exhausted naming k.
SweepResult dp_sweep(const ReductionInstance& base, const MuFamily& family, long k_lo, long k_hi,
                     const ReductionOptions& options = {});

} // namespace fjprove
