#include "fjprove/search.hpp"

#include <algorithm>
#include <stdexcept>

namespace fjprove {

std::string_view to_string(EquationKind eq) {
    return eq == EquationKind::jj_eq_f ? "J_n + J_m = F_a" : "F_n + F_m = J_a";
}

SeqKind left_kind(EquationKind eq) {
    return eq == EquationKind::jj_eq_f ? SeqKind::jacobsthal : SeqKind::fibonacci;
}

SeqKind right_kind(EquationKind eq) {
    return eq == EquationKind::jj_eq_f ? SeqKind::fibonacci : SeqKind::jacobsthal;
}

bool satisfies(EquationKind eq, const Solution& s) {
    return term(left_kind(eq), s.n) + term(left_kind(eq), s.m) == term(right_kind(eq), s.a);
}

unsigned right_index_bound(EquationKind eq, unsigned max_nm) {
    constexpr long bits = 128;
    const Real l2 = constant(Const::log2, bits);
    const Real la = constant(Const::log_alpha, bits);
    const Real n(static_cast<long>(max_nm), bits);
    mpz_class bound;
    if (eq == EquationKind::jj_eq_f) {
        // 2 J_N <= 2^N and F_a >= alpha^(a-2): a <= 2 + N log2 / log alpha
        bound = (n * l2 / la + 2).floor_int();
    } else {
        // 2 F_N <= 2 alpha^(N-1) and J_a > 2^(a-2): a <= 3 + (N-1) log alpha / log 2
        bound = (Real(static_cast<long>(max_nm) - 1, bits) * la / l2 + 3).ceil_int();
    }
    const unsigned r = std::max(3u, static_cast<unsigned>(bound.get_ui()));
    const mpz_class max_sum = 2 * term(left_kind(eq), max_nm);
    if (!(term(right_kind(eq), r + 1) > max_sum)) {
        throw std::logic_error("right-hand index bound " + std::to_string(r) + " does not dominate the largest sum");
    }
    return r;
}

std::vector<Solution> brute_search(EquationKind eq, unsigned max_nm) {
    const SequenceTable left(left_kind(eq), max_nm);
    const SequenceTable right(right_kind(eq), right_index_bound(eq, max_nm));
    std::vector<Solution> out;
    mpz_class sum;
    for (unsigned n = 0; n <= max_nm; ++n) {
        for (unsigned m = 0; m <= n; ++m) {
            sum = left[n] + left[m];
            for (unsigned a : right.indices_of_value(sum)) {
                out.push_back({n, m, a});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<unsigned, unsigned>> pure_equality_solutions(unsigned max_n) {
    const SequenceTable fib(SeqKind::fibonacci, max_n);
    const SequenceTable jac(SeqKind::jacobsthal, max_n);
    std::vector<std::pair<unsigned, unsigned>> out;
    for (unsigned n = 0; n <= max_n; ++n) {
        for (unsigned a : jac.indices_of_value(fib[n])) {
            out.emplace_back(n, a);
        }
    }
    return out;
}

} // namespace fjprove
