#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "fjprove/realnum.hpp"

namespace fjprove {

// Fibonacci: s_k = s_{k-1} + s_{k-2}; Jacobsthal: s_k = s_{k-1} + 2 s_{k-2};
// both seeded with s_0 = 0, s_1 = 1.
enum class SeqKind { fibonacci, jacobsthal };

std::string_view to_string(SeqKind kind);

// Characteristic roots. alpha, beta are the Fibonacci roots; u = 2, v = -1
// are the roots of x^2 - x - 2.
struct BinetConstants {
    Real alpha;
    Real beta;
    Real sqrt5;
    long u = 2;
    long v = -1;
};

BinetConstants binet_constants(long bits);

// s_k of the recurrence s_k = s_{k-1} + multiplier * s_{k-2}, s_0 = 0, s_1 = 1.
mpz_class recurrence_term(unsigned long multiplier, unsigned k);

mpz_class term(SeqKind kind, unsigned k);

// Terms s_0..s_max_index computed once, with exact membership queries.
class SequenceTable {
public:
    SequenceTable(SeqKind kind, unsigned max_index);

    SeqKind kind() const noexcept { return kind_; }
    unsigned max_index() const noexcept { return static_cast<unsigned>(terms_.size() - 1); }
    const mpz_class& operator[](unsigned k) const { return terms_.at(k); }

    // Every k <= max_index with s_k == v, ascending. Both 1 and 2 are
    // returned for v == 1.
    std::vector<unsigned> indices_of_value(const mpz_class& v) const;

private:
    SeqKind kind_;
    std::vector<mpz_class> terms_;
};

std::vector<unsigned> indices_of_value(SeqKind kind, const mpz_class& v, unsigned max_index);

// Rounded Binet evaluation equals the recurrence term. Jacobsthal uses the
// exact form (2^k - (-1)^k)/3. Throws precision_insufficient when the
// Fibonacci residual exceeds 1/4 before rounding.
bool binet_check(SeqKind kind, unsigned k, long precision_bits);

struct GrowthViolation {
    std::string inequality;
    unsigned n = 0;
};

struct GrowthReport {
    bool holds = true;
    std::optional<GrowthViolation> first_violation;
    // Least n0 with alpha^(n-1) <= 2^(n-2) for all n >= n0.
    unsigned fib_below_pow2_from = 0;
    // Least n0 with 2 alpha^(n-1) < 2^(n-2) for all n >= n0.
    unsigned twice_fib_below_pow2_from = 0;
};

// Checks alpha^(n-2) <= F_n <= alpha^(n-1) for 1 <= n <= n_max,
// 2^(n-2) < J_n < 2^(n-1) for 3 <= n <= n_max, and 2 alpha^(n-1) < 2^(n-2)
// for 201 <= n <= n_max. Requires n_max >= 5.
GrowthReport verify_growth_bounds(unsigned n_max);

// Closed-form crossover of c * alpha^(n-1) vs 2^(n-2) (strict when `strict`).
unsigned growth_crossover(long multiplier, bool strict, long bits = 256);

} // namespace fjprove
