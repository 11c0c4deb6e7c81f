#pragma once

#include <compare>
#include <string_view>
#include <utility>
#include <vector>

#include "fjprove/sequences.hpp"

namespace fjprove {

// jj_eq_f: J_n + J_m = F_a;  ff_eq_j: F_n + F_m = J_a.
enum class EquationKind { jj_eq_f, ff_eq_j };

std::string_view to_string(EquationKind eq);
SeqKind left_kind(EquationKind eq);
SeqKind right_kind(EquationKind eq);

struct Solution {
    unsigned n = 0;
    unsigned m = 0;  // n >= m
    unsigned a = 0;

    // (a, n, m) lexicographic
    friend auto operator<=>(const Solution& x, const Solution& y) {
        return std::tie(x.a, x.n, x.m) <=> std::tie(y.a, y.n, y.m);
    }
    friend bool operator==(const Solution&, const Solution&) = default;
};

bool satisfies(EquationKind eq, const Solution& s);

// Largest right-hand index that can match a sum of two left terms of index
// <= max_nm, from the growth bounds; verified against the exact terms.
unsigned right_index_bound(EquationKind eq, unsigned max_nm);

// Every (n, m, a) with 0 <= m <= n <= max_nm solving the equation, one triple
// per matching a, sorted by (a, n, m).
std::vector<Solution> brute_search(EquationKind eq, unsigned max_nm);

// All (n, a) with F_n = J_a and n, a <= max_n, sorted.
std::vector<std::pair<unsigned, unsigned>> pure_equality_solutions(unsigned max_n);

} // namespace fjprove
