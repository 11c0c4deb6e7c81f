#pragma once

// High-precision reals over MPFR, continued fractions and ||x||.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

namespace fjprove {

inline constexpr long kDefaultPrecisionBits = 768;
inline constexpr long kMinPrecisionBits = 64;

enum class Round { nearest, down, up };

// Binary floating point value at an explicit precision. Results of binary
// operations carry the larger of the two operand precisions; all operations
// round to nearest.
class Real {
public:
    explicit Real(long bits = kDefaultPrecisionBits);
    Real(long value, long bits);
    Real(const mpz_class& value, long bits);
    Real(const mpq_class& value, long bits);

    // Parses a decimal literal ("1.37e12", "-0.5"); throws std::invalid_argument.
    static Real parse(std::string_view text, long bits);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    long precision() const noexcept { return static_cast<long>(mpfr_get_prec(v_)); }
    mpfr_srcptr get() const noexcept { return v_; }
    mpfr_ptr get() noexcept { return v_; }

    // Copy rounded to a new precision.
    Real with_precision(long bits) const;

    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);
    Real operator-() const;

    friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
    friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
    friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
    friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
    friend Real operator+(const Real& lhs, long rhs) { return lhs + Real(rhs, lhs.precision()); }
    friend Real operator-(const Real& lhs, long rhs) { return lhs - Real(rhs, lhs.precision()); }
    friend Real operator*(const Real& lhs, long rhs) { return lhs * Real(rhs, lhs.precision()); }
    friend Real operator/(const Real& lhs, long rhs) { return lhs / Real(rhs, lhs.precision()); }
    friend Real operator*(long lhs, const Real& rhs) { return rhs * lhs; }
    friend Real operator*(const mpz_class& lhs, const Real& rhs) { return Real(lhs, rhs.precision()) * rhs; }

    friend int compare(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator==(const Real& a, const Real& b) { return compare(a, b) == 0; }
    friend bool operator<(const Real& a, const Real& b) { return compare(a, b) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return compare(a, b) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return compare(a, b) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return compare(a, b) >= 0; }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }

    int sign() const noexcept { return mpfr_sgn(v_); }
    bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
    bool is_integer() const noexcept { return mpfr_integer_p(v_) != 0; }
    bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }

    mpz_class floor_int() const;
    mpz_class ceil_int() const;
    // Nearest integer, ties away from zero.
    mpz_class round_int() const;

    // Exact value of the stored binary fraction.
    mpq_class exact() const;

    // Weight of the last significand bit; 2^(emin) for zero.
    Real ulp() const;

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Decimal string with `digits` significant digits, plain notation when
    // the decimal exponent is in [-6, 30), scientific otherwise.
    std::string to_sig(int digits, Round mode = Round::nearest) const;

    // Always scientific: "5.18425e+28".
    std::string to_sci(int digits) const;

    // Fixed-point decimal string with `decimals` digits after the point.
    std::string to_fixed(int decimals, Round mode = Round::nearest) const;

private:
    mpfr_t v_;
};

Real abs(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real sqrt(const Real& x);
Real floor(const Real& x);
Real pow(const Real& base, long exponent);
Real pow(const Real& base, const Real& exponent);
const Real& min(const Real& a, const Real& b);
const Real& max(const Real& a, const Real& b);

// A real number given as a recipe that can be re-evaluated at any precision.
// Used wherever a value must be checked for stability under precision doubling.
using LazyReal = std::function<Real(long bits)>;

LazyReal lazy_integer(long value);
LazyReal lazy_rational(long num, long den);

enum class Const { log2, log_alpha, sqrt5, log_3_over_sqrt5, log_sqrt5_over_3, alpha };

std::string_view to_string(Const c);

// Named constant correctly rounded at `bits` (>= kMinPrecisionBits).
Real constant(Const name, long bits);
LazyReal lazy_constant(Const name);

// Evaluates `x` at `bits` and `2*bits` and returns the `digits`-significant-digit
// string when both agree; throws precision_exhausted otherwise.
std::string certified_digits(const LazyReal& x, long bits, int digits, Round mode = Round::nearest);

struct Convergent {
    mpz_class p;
    mpz_class q;
};

struct ContinuedFraction {
    Real x;
    std::vector<mpz_class> quotients;   // a_0 = floor(x) first
    std::vector<Convergent> convergents;
    bool terminated = false;            // input was detected as rational

    std::optional<std::size_t> index_of_denominator(const mpz_class& q) const;
    // Convergent with the same number of decimal digits closest to `q`.
    std::optional<std::size_t> nearest_denominator(const mpz_class& q) const;
};

// Expands `x` to `count` partial quotients. Each quotient is certified by
// expanding both ends of [x - ulp, x + ulp]; a short exact expansion is
// reported as terminated. Throws precision_exhausted when fewer than `count`
// quotients can be certified.
ContinuedFraction cf_expand(const Real& x, std::size_t count);

// As above, additionally requiring the expansion at `2*bits` to agree;
// doubles precision up to `max_bits` before giving up.
ContinuedFraction cf_expand(const LazyReal& x, std::size_t count, long bits = kDefaultPrecisionBits,
                            long max_bits = 1L << 16);

struct NearestDistance {
    Real value;        // in [0, 1/2]
    Real error_bound;  // 2 ulp(x)
};

// ||x||, the distance to the nearest integer. Throws ambiguous_rounding when
// an inexact x sits within its error bound of a half-integer.
NearestDistance nearest_int_distance(const Real& x);

} // namespace fjprove
