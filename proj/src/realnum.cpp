#include "fjprove/realnum.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "fjprove/errors.hpp"

namespace fjprove {

namespace {

mpfr_rnd_t to_mpfr(Round mode) {
    switch (mode) {
    case Round::down: return MPFR_RNDD;
    case Round::up: return MPFR_RNDU;
    case Round::nearest: break;
    }
    return MPFR_RNDN;
}

long checked_bits(long bits) {
    if (bits < 2 || bits > MPFR_PREC_MAX) {
        throw std::invalid_argument("precision out of range: " + std::to_string(bits));
    }
    return bits;
}

mpz_class pow10(unsigned long n) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, n);
    return r;
}

// Exact continued fraction of num/den (den > 0), at most `count` quotients.
std::vector<mpz_class> expand_rational(mpz_class num, mpz_class den, std::size_t count, bool& terminated) {
    std::vector<mpz_class> out;
    terminated = false;
    while (out.size() < count) {
        mpz_class a, r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        out.push_back(a);
        if (r == 0) {
            terminated = true;
            break;
        }
        num = std::move(den);
        den = std::move(r);
    }
    return out;
}

std::vector<mpz_class> expand_rational(const mpq_class& x, std::size_t count) {
    bool ignored = false;
    return expand_rational(x.get_num(), x.get_den(), count, ignored);
}

std::vector<Convergent> convergents_of(const std::vector<mpz_class>& quotients) {
    std::vector<Convergent> out;
    out.reserve(quotients.size());
    mpz_class p_prev2 = 0, p_prev1 = 1, q_prev2 = 1, q_prev1 = 0;
    for (const auto& a : quotients) {
        mpz_class p = a * p_prev1 + p_prev2;
        mpz_class q = a * q_prev1 + q_prev2;
        out.push_back({p, q});
        p_prev2 = std::exchange(p_prev1, p);
        q_prev2 = std::exchange(q_prev1, q);
    }
    return out;
}

} // namespace

Real::Real(long bits) {
    mpfr_init2(v_, checked_bits(bits));
    mpfr_set_zero(v_, 1);
}

Real::Real(long value, long bits) {
    mpfr_init2(v_, checked_bits(bits));
    mpfr_set_si(v_, value, MPFR_RNDN);
}

Real::Real(const mpz_class& value, long bits) {
    mpfr_init2(v_, checked_bits(bits));
    mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& value, long bits) {
    mpfr_init2(v_, checked_bits(bits));
    mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
}

Real Real::parse(std::string_view text, long bits) {
    Real r(bits);
    std::string s(text);
    char* end = nullptr;
    if (!s.empty()) {
        mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
    }
    if (s.empty() || end != s.c_str() + s.size()) {
        throw std::invalid_argument("not a decimal number: '" + s + "'");
    }
    return r;
}

Real::Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::with_precision(long bits) const {
    Real r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

namespace {

template <typename Op>
Real& apply_binary(Real& lhs, const Real& rhs, Op op) {
    if (rhs.precision() > lhs.precision()) {
        Real wide = lhs.with_precision(rhs.precision());
        op(wide.get(), wide.get(), rhs.get(), MPFR_RNDN);
        lhs = std::move(wide);
    } else {
        op(lhs.get(), lhs.get(), rhs.get(), MPFR_RNDN);
    }
    return lhs;
}

} // namespace

Real& Real::operator+=(const Real& rhs) { return apply_binary(*this, rhs, mpfr_add); }
Real& Real::operator-=(const Real& rhs) { return apply_binary(*this, rhs, mpfr_sub); }
Real& Real::operator*=(const Real& rhs) { return apply_binary(*this, rhs, mpfr_mul); }
Real& Real::operator/=(const Real& rhs) { return apply_binary(*this, rhs, mpfr_div); }

Real Real::operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

mpz_class Real::floor_int() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
    return z;
}

mpz_class Real::ceil_int() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDU);
    return z;
}

mpz_class Real::round_int() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDNA);
    return z;
}

mpq_class Real::exact() const {
    if (!is_finite()) {
        throw std::domain_error("exact value of a non-finite real");
    }
    mpz_class m;
    const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    mpq_class q(m);
    if (e >= 0) {
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    q.canonicalize();
    return q;
}

Real Real::ulp() const {
    Real r(precision());
    if (is_zero() || !is_finite()) {
        mpfr_set_ui_2exp(r.v_, 1, mpfr_get_emin(), MPFR_RNDN);
    } else {
        mpfr_set_ui_2exp(r.v_, 1, mpfr_get_exp(v_) - precision(), MPFR_RNDN);
    }
    return r;
}

std::string Real::to_sig(int digits, Round mode) const {
    if (digits < 1) {
        throw std::invalid_argument("to_sig needs at least one digit");
    }
    if (is_zero()) {
        return "0";
    }
    if (!is_finite()) {
        return mpfr_nan_p(v_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
    }
    mpfr_exp_t e = 0;
    char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(digits), v_, to_mpfr(mode));
    std::string s(raw);
    mpfr_free_str(raw);
    std::string sign_part;
    if (s.front() == '-') {
        sign_part = "-";
        s.erase(0, 1);
    }
    // value = 0.s * 10^e
    const long lead = static_cast<long>(e) - 1;
    std::string body;
    if (lead >= -6 && lead < 30) {
        if (e <= 0) {
            body = "0." + std::string(static_cast<std::size_t>(-e), '0') + s;
        } else if (static_cast<std::size_t>(e) >= s.size()) {
            body = s + std::string(static_cast<std::size_t>(e) - s.size(), '0');
        } else {
            body = s.substr(0, static_cast<std::size_t>(e)) + "." + s.substr(static_cast<std::size_t>(e));
        }
    } else {
        body = s.substr(0, 1);
        if (s.size() > 1) {
            body += "." + s.substr(1);
        }
        body += "e" + std::string(lead >= 0 ? "+" : "") + std::to_string(lead);
    }
    return sign_part + body;
}

std::string Real::to_sci(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

std::string Real::to_fixed(int decimals, Round mode) const {
    if (decimals < 0) {
        throw std::invalid_argument("to_fixed needs decimals >= 0");
    }
    const mpq_class scaled = exact() * mpq_class(pow10(static_cast<unsigned long>(decimals)));
    mpz_class z;
    switch (mode) {
    case Round::down: mpz_fdiv_q(z.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t()); break;
    case Round::up: mpz_cdiv_q(z.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t()); break;
    case Round::nearest: {
        const mpq_class shifted = scaled + mpq_class(1, 2);
        mpz_fdiv_q(z.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
        break;
    }
    }
    const bool negative = z < 0;
    std::string digits = mpz_class(abs(z)).get_str();
    if (decimals > 0) {
        if (digits.size() <= static_cast<std::size_t>(decimals)) {
            digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
        }
        digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
    }
    return (negative ? "-" : "") + digits;
}

Real abs(const Real& x) {
    Real r(x.precision());
    mpfr_abs(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real log(const Real& x) {
    Real r(x.precision());
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real exp(const Real& x) {
    Real r(x.precision());
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real sqrt(const Real& x) {
    Real r(x.precision());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real floor(const Real& x) {
    Real r(x.precision());
    mpfr_floor(r.get(), x.get());
    return r;
}

Real pow(const Real& base, long exponent) {
    Real r(base.precision());
    mpfr_pow_si(r.get(), base.get(), exponent, MPFR_RNDN);
    return r;
}

Real pow(const Real& base, const Real& exponent) {
    Real r(std::max(base.precision(), exponent.precision()));
    mpfr_pow(r.get(), base.get(), exponent.get(), MPFR_RNDN);
    return r;
}

const Real& min(const Real& a, const Real& b) { return b < a ? b : a; }
const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }

LazyReal lazy_integer(long value) {
    return [value](long bits) { return Real(value, bits); };
}

LazyReal lazy_rational(long num, long den) {
    return [num, den](long bits) { return Real(mpq_class(num, den), bits); };
}

std::string_view to_string(Const c) {
    switch (c) {
    case Const::log2: return "log2";
    case Const::log_alpha: return "log_alpha";
    case Const::sqrt5: return "sqrt5";
    case Const::log_3_over_sqrt5: return "log_3_over_sqrt5";
    case Const::log_sqrt5_over_3: return "log_sqrt5_over_3";
    case Const::alpha: return "alpha";
    }
    return "?";
}

Real constant(Const name, long bits) {
    if (bits < kMinPrecisionBits) {
        throw std::invalid_argument("constants need at least 64 bits of precision");
    }
    const long work = bits + 64;
    Real r(work);
    switch (name) {
    case Const::log2: mpfr_const_log2(r.get(), MPFR_RNDN); break;
    case Const::sqrt5: mpfr_sqrt_ui(r.get(), 5, MPFR_RNDN); break;
    case Const::alpha:
    case Const::log_alpha: {
        mpfr_sqrt_ui(r.get(), 5, MPFR_RNDN);
        mpfr_add_ui(r.get(), r.get(), 1, MPFR_RNDN);
        mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDN);
        if (name == Const::log_alpha) {
            mpfr_log(r.get(), r.get(), MPFR_RNDN);
        }
        break;
    }
    case Const::log_3_over_sqrt5:
    case Const::log_sqrt5_over_3: {
        Real log5(work);
        mpfr_log_ui(r.get(), 3, MPFR_RNDN);
        mpfr_log_ui(log5.get(), 5, MPFR_RNDN);
        mpfr_div_2ui(log5.get(), log5.get(), 1, MPFR_RNDN);
        mpfr_sub(r.get(), r.get(), log5.get(), MPFR_RNDN);
        if (name == Const::log_sqrt5_over_3) {
            mpfr_neg(r.get(), r.get(), MPFR_RNDN);
        }
        break;
    }
    }
    return r.with_precision(bits);
}

LazyReal lazy_constant(Const name) {
    return [name](long bits) { return constant(name, bits); };
}

std::string certified_digits(const LazyReal& x, long bits, int digits, Round mode) {
    std::string lo = x(bits).to_sig(digits, mode);
    std::string hi = x(2 * bits).to_sig(digits, mode);
    if (lo != hi) {
        throw precision_exhausted("value not stable under precision doubling at " + std::to_string(bits) +
                                  " bits: " + lo + " vs " + hi);
    }
    return lo;
}

std::optional<std::size_t> ContinuedFraction::index_of_denominator(const mpz_class& q) const {
    for (std::size_t i = 0; i < convergents.size(); ++i) {
        if (convergents[i].q == q) {
            return i;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> ContinuedFraction::nearest_denominator(const mpz_class& q) const {
    const std::size_t len = q.get_str().size();
    std::optional<std::size_t> best;
    mpz_class best_gap;
    for (std::size_t i = 0; i < convergents.size(); ++i) {
        if (convergents[i].q.get_str().size() != len) {
            continue;
        }
        mpz_class gap = abs(convergents[i].q - q);
        if (!best || gap < best_gap) {
            best = i;
            best_gap = gap;
        }
    }
    return best;
}

ContinuedFraction cf_expand(const Real& x, std::size_t count) {
    if (count == 0) {
        throw std::invalid_argument("cf_expand needs count >= 1");
    }
    if (!x.is_finite()) {
        throw std::domain_error("cf_expand of a non-finite value");
    }
    const mpq_class value = x.exact();
    bool terminated = false;
    std::vector<mpz_class> exact = expand_rational(value.get_num(), value.get_den(), count, terminated);

    ContinuedFraction cf{x, {}, {}, false};
    if (terminated) {
        // A short exact expansion: the stored value is a simple rational.
        auto conv = convergents_of(exact);
        if (mpz_sizeinbase(conv.back().q.get_mpz_t(), 2) <= static_cast<std::size_t>(x.precision() / 4)) {
            cf.quotients = std::move(exact);
            cf.convergents = std::move(conv);
            cf.terminated = true;
            return cf;
        }
    }

    const mpq_class u = x.ulp().exact();
    const auto lo = expand_rational(value - u, count);
    const auto hi = expand_rational(value + u, count);
    std::size_t certified = 0;
    while (certified < exact.size() && certified < lo.size() && certified < hi.size() &&
           exact[certified] == lo[certified] && exact[certified] == hi[certified]) {
        ++certified;
    }
    if (certified < count) {
        throw precision_exhausted("only " + std::to_string(certified) + " of " + std::to_string(count) +
                                  " partial quotients certified at " + std::to_string(x.precision()) + " bits");
    }
    exact.resize(count);
    cf.convergents = convergents_of(exact);
    cf.quotients = std::move(exact);
    return cf;
}

ContinuedFraction cf_expand(const LazyReal& x, std::size_t count, long bits, long max_bits) {
    for (long b = std::max(bits, kMinPrecisionBits); b <= max_bits; b *= 2) {
        try {
            ContinuedFraction base = cf_expand(x(b), count);
            const ContinuedFraction check = cf_expand(x(2 * b), count);
            if (base.quotients == check.quotients && base.terminated == check.terminated) {
                return base;
            }
        } catch (const precision_exhausted&) {
            // retry at doubled precision
        }
    }
    throw precision_exhausted("continued fraction not certified up to " + std::to_string(max_bits) + " bits");
}

NearestDistance nearest_int_distance(const Real& x) {
    if (!x.is_finite()) {
        throw std::domain_error("nearest_int_distance of a non-finite value");
    }
    const long work = x.precision() + 64;
    const Real wide = x.with_precision(work);
    const Real frac = wide - floor(wide);
    const Real half(mpq_class(1, 2), work);
    Real error = x.ulp() * 2;
    if (frac == half) {
        return {half.with_precision(x.precision()), std::move(error)};
    }
    if (abs(frac - half) <= error) {
        throw ambiguous_rounding("value " + x.to_sig(20) + " is within its error bound of a half-integer");
    }
    const Real other = Real(1, work) - frac;
    return {min(frac, other).with_precision(x.precision()), std::move(error)};
}

} // namespace fjprove
