#include "fjprove/sequences.hpp"

#include <algorithm>
#include <stdexcept>

#include "fjprove/errors.hpp"

namespace fjprove {

std::string_view to_string(SeqKind kind) {
    return kind == SeqKind::fibonacci ? "fibonacci" : "jacobsthal";
}

BinetConstants binet_constants(long bits) {
    Real s5 = constant(Const::sqrt5, bits);
    Real alpha = (Real(1, bits) + s5) / 2;
    Real beta = (Real(1, bits) - s5) / 2;
    return {std::move(alpha), std::move(beta), std::move(s5)};
}

mpz_class recurrence_term(unsigned long multiplier, unsigned k) {
    mpz_class prev = 0, cur = 1;
    if (k == 0) {
        return prev;
    }
    for (unsigned i = 1; i < k; ++i) {
        mpz_class next = cur + multiplier * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

mpz_class term(SeqKind kind, unsigned k) {
    return recurrence_term(kind == SeqKind::fibonacci ? 1 : 2, k);
}

SequenceTable::SequenceTable(SeqKind kind, unsigned max_index) : kind_(kind) {
    const unsigned long mult = kind == SeqKind::fibonacci ? 1 : 2;
    terms_.reserve(std::max(max_index, 1u) + 1);
    terms_.emplace_back(0);
    terms_.emplace_back(1);
    for (unsigned k = 2; k <= max_index; ++k) {
        terms_.push_back(terms_[k - 1] + mult * terms_[k - 2]);
    }
    terms_.resize(static_cast<std::size_t>(max_index) + 1);
}

std::vector<unsigned> SequenceTable::indices_of_value(const mpz_class& v) const {
    std::vector<unsigned> out;
    const unsigned top = max_index();
    if (v == 0) {
        out.push_back(0);
        return out;
    }
    if (v == 1) {
        for (unsigned k : {1u, 2u}) {
            if (k <= top) {
                out.push_back(k);
            }
        }
        return out;
    }
    // strictly increasing from index 2 on
    if (top < 3) {
        return out;
    }
    auto first = terms_.begin() + 3;
    auto last = terms_.end();
    auto it = std::lower_bound(first, last, v);
    if (it != last && *it == v) {
        out.push_back(static_cast<unsigned>(it - terms_.begin()));
    }
    return out;
}

std::vector<unsigned> indices_of_value(SeqKind kind, const mpz_class& v, unsigned max_index) {
    return SequenceTable(kind, max_index).indices_of_value(v);
}

bool binet_check(SeqKind kind, unsigned k, long precision_bits) {
    const mpz_class expected = term(kind, k);
    if (kind == SeqKind::jacobsthal) {
        mpz_class pow2;
        mpz_ui_pow_ui(pow2.get_mpz_t(), 2, k);
        const mpz_class numer = pow2 - (k % 2 == 0 ? 1 : -1);
        if (numer % 3 != 0) {
            return false;
        }
        return numer / 3 == expected;
    }
    const auto bc = binet_constants(precision_bits);
    const Real value = (pow(bc.alpha, static_cast<long>(k)) - pow(bc.beta, static_cast<long>(k))) / bc.sqrt5;
    const mpz_class nearest = value.round_int();
    // alpha carries relative error 2^-bits, which alpha^k amplifies k-fold
    const Real error = value.ulp() * static_cast<long>(k + 4);
    const Real residual = abs(value - Real(nearest, precision_bits)) + error;
    if (residual > Real(mpq_class(1, 4), precision_bits)) {
        throw precision_insufficient("Binet residual " + residual.to_sig(6) + " at k = " + std::to_string(k) +
                                     " with " + std::to_string(precision_bits) + " bits");
    }
    return nearest == expected;
}

unsigned growth_crossover(long multiplier, bool strict, long bits) {
    const Real l2 = constant(Const::log2, bits);
    const Real la = constant(Const::log_alpha, bits);
    const Real ratio = (log(Real(multiplier, bits)) + l2 * 2 - la) / (l2 - la);
    mpz_class n0 = strict && ratio.is_integer() ? ratio.floor_int() + 1 : ratio.ceil_int();
    return static_cast<unsigned>(n0.get_ui());
}

GrowthReport verify_growth_bounds(unsigned n_max) {
    if (n_max < 5) {
        throw std::invalid_argument("verify_growth_bounds needs n_max >= 5");
    }
    const long bits = 2L * n_max + 256;
    const auto bc = binet_constants(bits);
    // relative slack far above rounding error, far below the gaps checked
    const Real slack = pow(Real(2, bits), -static_cast<long>(bits) / 2);
    GrowthReport report;

    auto fail = [&](std::string what, unsigned n) {
        if (report.holds) {
            report.holds = false;
            report.first_violation = GrowthViolation{std::move(what), n};
        }
    };

    mpz_class f_prev = 0, f_cur = 1;  // F_0, F_1
    mpz_class j_prev = 0, j_cur = 1;  // J_0, J_1
    for (unsigned n = 1; n <= n_max; ++n) {
        if (n > 1) {
            mpz_class f_next = f_cur + f_prev;
            f_prev = std::move(f_cur);
            f_cur = std::move(f_next);
            mpz_class j_next = j_cur + 2 * j_prev;
            j_prev = std::move(j_cur);
            j_cur = std::move(j_next);
        }
        const Real fn(f_cur, bits);
        const Real lower = pow(bc.alpha, static_cast<long>(n) - 2);
        const Real upper = pow(bc.alpha, static_cast<long>(n) - 1);
        if (lower > fn * (Real(1, bits) + slack)) {
            fail("alpha^(n-2) <= F_n", n);
        }
        if (fn > upper * (Real(1, bits) + slack)) {
            fail("F_n <= alpha^(n-1)", n);
        }
        if (n >= 3) {
            mpz_class p_lo, p_hi;
            mpz_ui_pow_ui(p_lo.get_mpz_t(), 2, n - 2);
            mpz_ui_pow_ui(p_hi.get_mpz_t(), 2, n - 1);
            if (!(p_lo < j_cur && j_cur < p_hi)) {
                fail("2^(n-2) < J_n < 2^(n-1)", n);
            }
        }
        if (n >= 201) {
            const Real lhs = upper * 2;
            const Real rhs = pow(Real(2, bits), static_cast<long>(n) - 2);
            if (!(lhs * (Real(1, bits) + slack) < rhs)) {
                fail("2 alpha^(n-1) < 2^(n-2)", n);
            }
        }
    }

    report.fib_below_pow2_from = growth_crossover(1, false);
    report.twice_fib_below_pow2_from = growth_crossover(2, true);
    return report;
}

} // namespace fjprove
