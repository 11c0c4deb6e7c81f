#include "fjprove/reduction.hpp"

#include <stdexcept>

#include "fjprove/errors.hpp"

namespace fjprove {

namespace {

Real epsilon_at(const LazyReal& gamma, const LazyReal& mu, const mpz_class& M, const mpz_class& q, long bits) {
    const Real g = gamma(bits);
    const Real m = mu(bits);
    const Real qr(q, bits);
    return nearest_int_distance(m * qr).value - Real(M, bits) * nearest_int_distance(g * qr).value;
}

ReductionResult evaluate(const ReductionInstance& inst, const LazyReal& mu, const mpz_class& q, std::size_t index,
                         long bits) {
    ReductionResult r{q, index, epsilon_interval(inst.gamma, mu, inst.M, q, bits), Real(bits), false, {}};
    if (!(q > 6 * inst.M)) {
        r.note = "q <= 6M";
        return r;
    }
    if (r.epsilon.lo <= 0) {
        r.note = "epsilon not certified positive";
        return r;
    }
    r.applicable = true;
    r.bound = reduction_bound(inst, q, r.epsilon.lo, bits);
    return r;
}

std::size_t locate_pinned(const ContinuedFraction& cf, const mpz_class& q) {
    const auto idx = cf.index_of_denominator(q);
    if (!idx) {
        throw not_a_convergent(q.get_str() + " is not among the first " + std::to_string(cf.convergents.size()) +
                               " convergent denominators");
    }
    return *idx;
}

} // namespace

EpsilonInterval epsilon_interval(const LazyReal& gamma, const LazyReal& mu, const mpz_class& M, const mpz_class& q,
                                 long bits) {
    const Real coarse = epsilon_at(gamma, mu, M, q, bits);
    const Real fine = epsilon_at(gamma, mu, M, q, 2 * bits);
    const long wb = 2 * bits;
    // |mu q| and M |gamma q| each carry about q * 2^-bits relative error at the coarse precision
    const Real magnitude = Real(mpz_class(q * (M + 1)), wb) * (abs(mu(64).with_precision(wb)) + abs(gamma(64)) + 1);
    const Real propagated = magnitude * pow(Real(2, wb), 4 - bits);
    const Real delta = abs(coarse.with_precision(wb) - fine) + propagated;
    return {fine - delta, fine + delta};
}

Real reduction_bound(const ReductionInstance& inst, const mpz_class& q, const Real& epsilon_lo, long bits) {
    const Real a = inst.A(bits);
    const Real b = inst.B(bits);
    if (a <= 0 || b <= 1) {
        throw std::invalid_argument("reduction needs A > 0 and B > 1");
    }
    return log(a * Real(q, bits) / epsilon_lo.with_precision(bits)) / log(b);
}

ReductionResult dp_reduce(const ReductionInstance& inst, const ReductionOptions& options) {
    if (inst.M < 1) {
        throw std::invalid_argument("reduction needs M >= 1");
    }
    const long bits = options.precision_bits;
    const ContinuedFraction cf = cf_expand(inst.gamma, options.convergent_count, bits);
    if (cf.terminated) {
        throw std::invalid_argument("gamma expanded as a rational number");
    }
    if (options.pinned_q) {
        const std::size_t idx = locate_pinned(cf, *options.pinned_q);
        return evaluate(inst, inst.mu, *options.pinned_q, idx, bits);
    }
    for (std::size_t i = 0; i < cf.convergents.size(); ++i) {
        const mpz_class& q = cf.convergents[i].q;
        if (!(q > 6 * inst.M)) {
            continue;
        }
        ReductionResult r = evaluate(inst, inst.mu, q, i, bits);
        if (r.applicable) {
            return r;
        }
    }
    throw reduction_exhausted("no convergent among the first " + std::to_string(cf.convergents.size()) +
                              " gives a certified epsilon > 0");
}

namespace {

// nullopt when some member fails with this q
std::optional<SweepResult> sweep_with(const ReductionInstance& base, const MuFamily& family, long k_lo, long k_hi,
                                      const mpz_class& q, std::size_t index, long bits, long& failed_k) {
    SweepResult out;
    for (long k = k_lo; k <= k_hi; ++k) {
        ReductionResult r = evaluate(base, family(k), q, index, bits);
        if (!r.applicable) {
            failed_k = k;
            return std::nullopt;
        }
        if (out.per_k.empty() || r.epsilon.lo < out.worst.epsilon.lo) {
            out.worst_k = k;
            out.worst = r;
        }
        out.per_k.emplace_back(k, std::move(r));
    }
    return out;
}

} // namespace

SweepResult dp_sweep(const ReductionInstance& base, const MuFamily& family, long k_lo, long k_hi,
                     const ReductionOptions& options) {
    if (k_lo > k_hi) {
        throw std::invalid_argument("empty sweep family");
    }
    const long bits = options.precision_bits;
    const ContinuedFraction cf = cf_expand(base.gamma, options.convergent_count, bits);
    long failed_k = 0;
    if (options.pinned_q) {
        const std::size_t idx = locate_pinned(cf, *options.pinned_q);
        auto res = sweep_with(base, family, k_lo, k_hi, *options.pinned_q, idx, bits, failed_k);
        if (!res) {
            throw reduction_exhausted("epsilon not certified positive at k = " + std::to_string(failed_k) +
                                      " with q = " + options.pinned_q->get_str());
        }
        return std::move(*res);
    }
    for (std::size_t i = 0; i < cf.convergents.size(); ++i) {
        const mpz_class& q = cf.convergents[i].q;
        if (!(q > 6 * base.M)) {
            continue;
        }
        if (auto res = sweep_with(base, family, k_lo, k_hi, q, i, bits, failed_k)) {
            return std::move(*res);
        }
    }
    throw reduction_exhausted("no shared convergent gives epsilon > 0 for every k in [" + std::to_string(k_lo) + ", " +
                              std::to_string(k_hi) + "]");
}

} // namespace fjprove
