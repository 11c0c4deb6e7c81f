#pragma once

// Logarithmic heights, Matveev's lower bound for linear forms in logarithms
// and the crossover solver that turns "linear < polylog" into a bound.

#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "fjprove/realnum.hpp"

namespace fjprove {

enum class KnownAlgebraic { alpha, sqrt5_over_3, three_over_sqrt5 };

// Expression tree over algebraic numbers whose logarithmic height is bounded
// with h(z+s) <= h(z)+h(s)+log 2, h(z s^{+-1}) <= h(z)+h(s), h(z^s) <= |s| h(z).
// Nodes are immutable and shared, so copies are cheap.
class HeightExpr {
public:
    static HeightExpr rational(const mpz_class& p, const mpz_class& q = 1);
    static HeightExpr known(KnownAlgebraic tag);
    static HeightExpr sum(HeightExpr lhs, HeightExpr rhs);
    static HeightExpr product(HeightExpr lhs, HeightExpr rhs);
    static HeightExpr quotient(HeightExpr lhs, HeightExpr rhs);
    static HeightExpr power(HeightExpr base, long exponent);

    // Upper bound on h(expr); exact for leaves.
    Real height_bound(long bits = 256) const;
    // Numerical value of the (real, positive) algebraic number.
    Real value(long bits = 256) const;
    std::string describe() const;

    struct Node;

private:
    explicit HeightExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

inline Real height_bound(const HeightExpr& e, long bits = 256) { return e.height_bound(bits); }

struct AlgebraicFactor {
    std::string label;
    HeightExpr gamma;
    mpz_class exponent;  // b_i
    Real A;              // A_i >= max{D h(gamma_i), |log gamma_i|, 0.16}
};

// Data of one application of Matveev's theorem to
// Gamma = gamma_1^{b_1} ... gamma_t^{b_t} - 1.
struct LinearFormSpec {
    int D = 1;
    mpz_class B;  // >= max |b_i|
    std::vector<AlgebraicFactor> factors;

    int t() const noexcept { return static_cast<int>(factors.size()); }
};

// 1.4 * 30^(t+3) * t^4.5 * D^2 * (1 + log D).
Real matveev_constant(int t, int D, long bits = 256);

// Throws invalid_spec when any A_i or B violates the theorem's hypotheses.
void validate(const LinearFormSpec& spec, long bits = 256);

// C(t, D) * A_1 ... A_t, the factor multiplying (1 + log B).
Real matveev_coefficient(const LinearFormSpec& spec, long bits = 256);

// -C(t, D) (1 + log B) A_1 ... A_t, a lower bound for log |Gamma| when Gamma != 0.
Real matveev_log_lower_bound(const LinearFormSpec& spec, long bits = 256);

// f(x) = slope*x - coeff*log(x)*(c0 + c1*log(x)) - offset on x >= 3, with
// slope > 0 and coeff, c0, c1, offset >= 0. f is convex there.
struct GrowthInequality {
    std::string label;
    Real slope;
    Real coeff;
    Real c0;
    Real c1;
    Real offset;

    Real operator()(const mpz_class& x) const;
};

inline constexpr long kCrossoverDomainStart = 3;

// Least integer X >= 3 with f(a) > 0 for every integer a >= X, found by
// exponential bracketing from `hint` and bisection. Asserts f(X) > 0 and
// f(X-1) <= 0 (when X > 3). Throws no_crossover above `ceiling`.
mpz_class crossover_solve(const GrowthInequality& f, const mpz_class& hint, const mpz_class& ceiling);
mpz_class crossover_solve(const GrowthInequality& f, const mpz_class& hint);

} // namespace fjprove
