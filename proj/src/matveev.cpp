#include "fjprove/matveev.hpp"

#include <stdexcept>
#include <variant>

#include "fjprove/errors.hpp"

namespace fjprove {

namespace {

struct RationalLeaf {
    mpz_class p;
    mpz_class q;
};
struct KnownLeaf {
    KnownAlgebraic tag;
};
enum class BinaryOp { sum, product, quotient };
struct BinaryNode {
    BinaryOp op;
    HeightExpr lhs;
    HeightExpr rhs;
};
struct PowerNode {
    HeightExpr base;
    long exponent;
};

} // namespace

struct HeightExpr::Node {
    std::variant<RationalLeaf, KnownLeaf, BinaryNode, PowerNode> data;
};

HeightExpr HeightExpr::rational(const mpz_class& p, const mpz_class& q) {
    if (q == 0) {
        throw std::invalid_argument("rational height leaf with zero denominator");
    }
    mpq_class r(p, q);
    r.canonicalize();
    return HeightExpr(std::make_shared<const Node>(Node{RationalLeaf{r.get_num(), r.get_den()}}));
}

HeightExpr HeightExpr::known(KnownAlgebraic tag) {
    return HeightExpr(std::make_shared<const Node>(Node{KnownLeaf{tag}}));
}

HeightExpr HeightExpr::sum(HeightExpr lhs, HeightExpr rhs) {
    return HeightExpr(std::make_shared<const Node>(Node{BinaryNode{BinaryOp::sum, std::move(lhs), std::move(rhs)}}));
}

HeightExpr HeightExpr::product(HeightExpr lhs, HeightExpr rhs) {
    return HeightExpr(
        std::make_shared<const Node>(Node{BinaryNode{BinaryOp::product, std::move(lhs), std::move(rhs)}}));
}

HeightExpr HeightExpr::quotient(HeightExpr lhs, HeightExpr rhs) {
    return HeightExpr(
        std::make_shared<const Node>(Node{BinaryNode{BinaryOp::quotient, std::move(lhs), std::move(rhs)}}));
}

HeightExpr HeightExpr::power(HeightExpr base, long exponent) {
    return HeightExpr(std::make_shared<const Node>(Node{PowerNode{std::move(base), exponent}}));
}

Real HeightExpr::height_bound(long bits) const {
    return std::visit(
        [bits](const auto& n) -> Real {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, RationalLeaf>) {
                const mpz_class big = abs(n.p) > n.q ? mpz_class(abs(n.p)) : n.q;
                return log(Real(big, bits));
            } else if constexpr (std::is_same_v<T, KnownLeaf>) {
                if (n.tag == KnownAlgebraic::alpha) {
                    return constant(Const::log_alpha, bits) / 2;
                }
                // minimal polynomial 5x^2 - 9 (or 9x^2 - 5): (1/2)(log 5 + 2 log(3/sqrt5)) = log 3
                return log(Real(3, bits));
            } else if constexpr (std::is_same_v<T, BinaryNode>) {
                Real h = n.lhs.height_bound(bits) + n.rhs.height_bound(bits);
                if (n.op == BinaryOp::sum) {
                    h += constant(Const::log2, bits);
                }
                return h;
            } else {
                return n.base.height_bound(bits) * (n.exponent < 0 ? -n.exponent : n.exponent);
            }
        },
        node_->data);
}

Real HeightExpr::value(long bits) const {
    return std::visit(
        [bits](const auto& n) -> Real {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, RationalLeaf>) {
                return Real(mpq_class(n.p, n.q), bits);
            } else if constexpr (std::is_same_v<T, KnownLeaf>) {
                switch (n.tag) {
                case KnownAlgebraic::alpha: return constant(Const::alpha, bits);
                case KnownAlgebraic::sqrt5_over_3: return constant(Const::sqrt5, bits) / 3;
                case KnownAlgebraic::three_over_sqrt5: return Real(3, bits) / constant(Const::sqrt5, bits);
                }
                throw std::logic_error("unknown algebraic tag");
            } else if constexpr (std::is_same_v<T, BinaryNode>) {
                Real a = n.lhs.value(bits);
                Real b = n.rhs.value(bits);
                switch (n.op) {
                case BinaryOp::sum: return a + b;
                case BinaryOp::product: return a * b;
                case BinaryOp::quotient: return a / b;
                }
                throw std::logic_error("unknown binary op");
            } else {
                return pow(n.base.value(bits), n.exponent);
            }
        },
        node_->data);
}

std::string HeightExpr::describe() const {
    return std::visit(
        [](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, RationalLeaf>) {
                return n.q == 1 ? n.p.get_str() : n.p.get_str() + "/" + n.q.get_str();
            } else if constexpr (std::is_same_v<T, KnownLeaf>) {
                switch (n.tag) {
                case KnownAlgebraic::alpha: return "alpha";
                case KnownAlgebraic::sqrt5_over_3: return "sqrt5/3";
                case KnownAlgebraic::three_over_sqrt5: return "3/sqrt5";
                }
                return "?";
            } else if constexpr (std::is_same_v<T, BinaryNode>) {
                const char* op = n.op == BinaryOp::sum ? " + " : n.op == BinaryOp::product ? " * " : " / ";
                return "(" + n.lhs.describe() + op + n.rhs.describe() + ")";
            } else {
                return n.base.describe() + "^" + std::to_string(n.exponent);
            }
        },
        node_->data);
}

Real matveev_constant(int t, int D, long bits) {
    if (t < 1 || D < 1) {
        throw std::invalid_argument("matveev_constant needs t >= 1 and D >= 1");
    }
    const Real tt(t, bits);
    Real c = Real(mpq_class(7, 5), bits);
    c *= pow(Real(30, bits), t + 3);
    c *= pow(tt, 4) * sqrt(tt);
    c *= Real(static_cast<long>(D) * D, bits);
    c *= Real(1, bits) + log(Real(D, bits));
    return c;
}

void validate(const LinearFormSpec& spec, long bits) {
    if (spec.factors.empty()) {
        throw invalid_spec("linear form with no algebraic numbers");
    }
    if (spec.D < 1) {
        throw invalid_spec("field degree D must be >= 1");
    }
    const Real floor_016(mpq_class(4, 25), bits);
    for (const auto& f : spec.factors) {
        if (abs(f.exponent) > spec.B) {
            throw invalid_spec("B = " + spec.B.get_str() + " is below |b| = " + mpz_class(abs(f.exponent)).get_str() +
                               " for " + f.label);
        }
        const Real v = f.gamma.value(bits);
        if (v <= 0) {
            throw invalid_spec(f.label + " is not a positive real");
        }
        const Real dh = f.gamma.height_bound(bits) * spec.D;
        const Real abs_log = abs(log(v));
        // A may equal the requirement exactly (sharp constants); compare up to rounding
        const Real a_up = f.A + abs(f.A) * pow(Real(2, bits), 16 - bits);
        if (a_up < dh || a_up < abs_log || a_up < floor_016) {
            throw invalid_spec("A for " + f.label + " = " + f.A.to_sig(8) + " below max{D h = " + dh.to_sig(8) +
                               ", |log| = " + abs_log.to_sig(8) + ", 0.16}");
        }
    }
}

Real matveev_coefficient(const LinearFormSpec& spec, long bits) {
    Real c = matveev_constant(spec.t(), spec.D, bits);
    for (const auto& f : spec.factors) {
        c *= f.A.with_precision(bits);
    }
    return c;
}

Real matveev_log_lower_bound(const LinearFormSpec& spec, long bits) {
    validate(spec, bits);
    if (spec.B < 1) {
        throw invalid_spec("B must be >= 1");
    }
    const Real one_plus_log_b = Real(1, bits) + log(Real(spec.B, bits));
    return -(matveev_coefficient(spec, bits) * one_plus_log_b);
}

Real GrowthInequality::operator()(const mpz_class& x) const {
    const long bits = std::max({slope.precision(), coeff.precision(), c0.precision(), c1.precision(), 256L});
    const Real xr(x, bits);
    const Real lx = log(xr);
    return slope * xr - coeff * lx * (c0 + c1 * lx) - offset;
}

mpz_class crossover_solve(const GrowthInequality& f, const mpz_class& hint) {
    mpz_class ceiling;
    mpz_ui_pow_ui(ceiling.get_mpz_t(), 10, 60);
    return crossover_solve(f, hint, ceiling);
}

mpz_class crossover_solve(const GrowthInequality& f, const mpz_class& hint, const mpz_class& ceiling) {
    if (f.slope <= 0 || f.coeff < 0 || f.c0 < 0 || f.c1 < 0 || f.offset < 0) {
        throw std::invalid_argument("crossover_solve: descriptor '" + f.label + "' is outside the convex family");
    }
    const mpz_class start = kCrossoverDomainStart;
    auto rising = [&f](const mpz_class& x) { return f(x + 1) > f(x); };

    mpz_class hi = hint > start ? hint : start;
    while (!(f(hi) > 0 && rising(hi))) {
        hi *= 2;
        if (hi > ceiling) {
            throw no_crossover("no crossover for '" + f.label + "' below " + Real(ceiling, 64).to_sig(3));
        }
    }

    // f convex: the forward difference is nondecreasing; find the argmin.
    mpz_class lo = start;
    mpz_class top = hi;
    while (lo < top) {
        mpz_class mid = (lo + top) / 2;
        if (rising(mid)) {
            top = mid;
        } else {
            lo = mid + 1;
        }
    }
    const mpz_class argmin = lo;
    if (f(argmin) > 0) {
        return start;
    }

    // f(lo) <= 0 < f(hi), f increasing on [argmin, inf)
    lo = argmin;
    while (hi - lo > 1) {
        mpz_class mid = (lo + hi) / 2;
        if (f(mid) > 0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if (!(f(hi) > 0) || !(f(hi - 1) <= 0)) {
        throw std::logic_error("crossover_solve post-check failed for '" + f.label + "'");
    }
    return hi;
}

} // namespace fjprove
