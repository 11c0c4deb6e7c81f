#include "fjprove/pipeline.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "fjprove/errors.hpp"
#include "fjprove/expr.hpp"
#include "fjprove/matveev.hpp"
#include "fjprove/reduction.hpp"

namespace fjprove {

std::string_view to_string(ConstantMode mode) { return mode == ConstantMode::paper ? "paper" : "sharp"; }

EquationKind equation_of(Theorem theorem) {
    return theorem == Theorem::jj_eq_f ? EquationKind::jj_eq_f : EquationKind::ff_eq_j;
}

const std::string* find_field(const Fields& fields, std::string_view key) {
    for (const auto& [k, v] : fields) {
        if (k == key) {
            return &v;
        }
    }
    return nullptr;
}

const StageRecord* ProofCertificate::stage(std::string_view name) const {
    for (const auto& s : stages) {
        if (s.name == name) {
            return &s;
        }
    }
    return nullptr;
}

Fields recipe_constants(Theorem theorem, ConstantMode mode) {
    Fields c{{"search_ceiling", "200"}, {"growth_range", "300"}, {"family_start", "1"}};
    if (mode == ConstantMode::sharp) {
        return c;
    }
    const Fields common{
        {"matveev_C_upper", "9.7e11"}, {"A1", "1.4"}, {"A2", "0.5"}, {"A3", "2.2"}, {"A3_intercept", "4"},
        {"nm_coefficient", "3e12"},    {"form2_coefficient", "1.36e12"}, {"form2_absorbed", "1.37e12"},
    };
    c.insert(c.end(), common.begin(), common.end());
    const Fields specific =
        theorem == Theorem::jj_eq_f
            ? Fields{{"form1_coefficient", "2.99e12"},
                     {"substituted_coefficient", "6e12"},
                     {"first_bound", "1e29"},
                     {"reduction1_A", "15"},
                     {"reduction1_q", "20721505928824926197089563175427"},
                     {"reduction1_eps_lo", "0.333233182722303"},
                     {"reduction1_eps_hi", "0.333233182722304"},
                     {"reduction1_bound", "109.53"},
                     {"second_bound", "1.2e16"},
                     {"reduction2_A", "11"},
                     {"reduction2_q", "1234165504911193651820557190855668171489"},
                     {"reduction2_worst_k", "66"},
                     {"reduction2_eps_lo", "0.00663531736488705"},
                     {"reduction2_eps_hi", "0.00663531736488707"},
                     {"reduction2_bound", "140.56"}}
            : Fields{{"form1_coefficient", "2.987e12"},
                     {"substituted_coefficient", "3e12"},
                     {"first_bound", "3.7e28"},
                     {"reduction1_A", "17"},
                     {"reduction1_q", "506642617666397667695263997821"},
                     {"reduction1_eps_lo", "0.269087312907046"},
                     {"reduction1_eps_hi", "0.269087312907048"},
                     {"reduction1_bound", "150.76"},
                     {"second_bound", "8e15"},
                     {"reduction2_A", "9"},
                     {"reduction2_q", "506642617666397667695263997821"},
                     {"reduction2_worst_k", "52"},
                     {"reduction2_eps_lo", "0.0057323312747131"},
                     {"reduction2_eps_hi", "0.0057323312747133"},
                     {"reduction2_bound", "157.43"}};
    c.insert(c.end(), specific.begin(), specific.end());
    return c;
}

namespace {

constexpr long kCrossoverBits = 256;

// What differs between the two proofs. r is the ratio base of the linear
// forms (2 for the first theorem, alpha for the second): every bound has the
// shape c / r^w and the reduction runs with B = r.
struct Shape {
    Theorem theorem;
    std::string big;          // variable carried as Matveev's B: "a" or "n"
    KnownAlgebraic g3;        // 3/sqrt5 or sqrt5/3
    Const log_r;              // log of the base r
    Const log_other;          // log of the other base
    std::string r_name;       // "2" or "alpha"
    long form1_rhs;           // |Gamma_1| < form1_rhs / r^(n-m)
    mpq_class form2_rhs;      // |Gamma_2| < form2_rhs / r^n
    long d_h_r_over_log_r;    // D h(r) / log r, the factor turning k log r into A3's slope
    std::string exponent_b1;  // exponent labels for form I/II
    std::string exponent_b2;
};

Shape shape_of(Theorem theorem) {
    if (theorem == Theorem::jj_eq_f) {
        return {theorem, "a", KnownAlgebraic::three_over_sqrt5, Const::log2, Const::log_alpha, "2", 5,
                mpq_class(7, 2), 2, "-n", "a"};
    }
    return {theorem, "n", KnownAlgebraic::sqrt5_over_3, Const::log_alpha, Const::log2, "alpha", 4,
            mpq_class(2, 1), 1, "a", "-n"};
}

std::string sig(const Real& x) { return x.to_sig(30); }
std::string str(const mpz_class& z) { return z.get_str(); }

std::string sci(const mpz_class& z) { return Real(z, 64).to_sci(6); }
std::string str(bool b) { return b ? "true" : "false"; }

class Proof {
public:
    Proof(Theorem theorem, const ProofOptions& options)
        : shape_(shape_of(theorem)), bits_(options.precision_bits), consts_(recipe_constants(theorem, options.mode)) {
        if (bits_ < kMinPrecisionBits) {
            throw std::invalid_argument("precision below 64 bits");
        }
        cert_.theorem = theorem;
        cert_.mode = options.mode;
        cert_.precision_bits = bits_;
    }

    ProofCertificate run() {
        stage("search", "brute-force solution table for m <= n <= 200", [this] { search(); });
        stage("index_relations", relations_anchor(), [this] { index_relations(); });
        stage("matveev_form_1", shape_.theorem == Theorem::jj_eq_f ? "(n-m) log 2 < 3 x 10^12 log a"
                                                                     : "(n-m) log alpha < 3 x 10^12 log n",
              [this] { matveev_form_1(); });
        stage("matveev_form_2",
              shape_.theorem == Theorem::jj_eq_f ? "a log 2 < 1.37 x 10^12 log a (4 + 2(n-m) log 2)"
                                                 : "n log alpha < 1.37 x 10^12 log n (4 + (n-m) log alpha)",
              [this] { matveev_form_2(); });
        stage("absolute_bound", shape_.theorem == Theorem::jj_eq_f ? "a < 10^29" : "n < 3.7 x 10^28",
              [this] { absolute_bound(); });
        bool applicable = false;
        stage("reduction_1", shape_.theorem == Theorem::jj_eq_f ? "n - m < 109.53" : "n - m < 150.76",
              [&] { applicable = reduction_1(); });
        if (!applicable) {
            return abort_open("reduction_1");
        }
        stage("resubstitution", shape_.theorem == Theorem::jj_eq_f ? "a < 1.2 x 10^16" : "n < 8 x 10^15",
              [this] { resubstitution(); });
        stage("reduction_2", shape_.theorem == Theorem::jj_eq_f ? "n < 140.56" : "n < 157.43",
              [&] { applicable = reduction_2(); });
        if (!applicable) {
            return abort_open("reduction_2");
        }
        stage("closure", "reduced bound below the search ceiling contradicts n > 200", [this] { closure(); });
        return std::move(cert_);
    }

private:
    using Body = std::function<void()>;

    void stage(std::string name, std::string anchor, const Body& body) {
        StageRecord rec;
        rec.name = name;
        rec.anchor = std::move(anchor);
        rec.provenance = cert_.mode == ConstantMode::paper ? "paper-mode" : "sharp-mode";
        cert_.stages.push_back(std::move(rec));
        current_ = name;
        try {
            body();
        } catch (const stage_failure&) {
            throw;
        } catch (const precision_exhausted&) {
            throw;
        } catch (const std::exception& e) {
            throw stage_failure(name, e.what());
        }
    }

    StageRecord& rec() { return cert_.stages.back(); }
    bool paper() const { return cert_.mode == ConstantMode::paper; }

    void out(std::string key, std::string value) { rec().outputs.emplace_back(std::move(key), std::move(value)); }

    void require(bool cond, const std::string& what) {
        out("check." + what, str(cond));
        if (!cond) {
            throw stage_failure(current_, "check failed: " + what);
        }
    }

    const std::string& constant_value(const std::string& key) const {
        const std::string* v = find_field(consts_, key);
        if (v == nullptr) {
            throw std::logic_error("missing recipe constant " + key);
        }
        return *v;
    }

    std::string in_const(std::string key, const std::string& name) {
        const std::string& v = constant_value(name);
        rec().inputs.push_back({std::move(key), v, "constant:" + name});
        return v;
    }

    std::string in_stage(std::string key, const std::string& from_stage, const std::string& from_key) {
        const StageRecord* s = cert_.stage(from_stage);
        const std::string* v = s ? s->output(from_key) : nullptr;
        if (v == nullptr) {
            throw std::logic_error("missing output " + from_stage + "." + from_key);
        }
        std::string value = *v;
        rec().inputs.push_back({std::move(key), value, "stage:" + from_stage + "." + from_key});
        return value;
    }

    void in_literal(std::string key, std::string value) {
        rec().inputs.push_back({std::move(key), std::move(value), "literal"});
    }

    Real num(const std::string& decimal, long bits) const { return Real::parse(decimal, bits); }
    Real log_r(long bits) const { return constant(shape_.log_r, bits); }
    Real log_other(long bits) const { return constant(shape_.log_other, bits); }
    Real r_value(long bits) const { return shape_.r_name == "2" ? Real(2, bits) : constant(Const::alpha, bits); }

    HeightExpr r_expr() const {
        return shape_.r_name == "2" ? HeightExpr::rational(2) : HeightExpr::known(KnownAlgebraic::alpha);
    }

    // g3 * (1 + r^-k)^-1
    HeightExpr gamma3_family(long k) const {
        return HeightExpr::product(HeightExpr::known(shape_.g3),
                                   HeightExpr::power(HeightExpr::sum(HeightExpr::rational(1),
                                                                     HeightExpr::power(r_expr(), -k)),
                                                     -1));
    }

    std::string gamma_text() const {
        return shape_.r_name == "2" ? "log(alpha)/log(2)" : "log(2)/log(alpha)";
    }

    std::string relations_anchor() const {
        return shape_.theorem == Theorem::jj_eq_f ? "a > n and n < a < 1.6 n for n > 200"
                                                  : "2 F_n < J_n and n > a for n > 200";
    }

    ProofCertificate abort_open(const std::string& where) {
        cert_.closed = false;
        cert_.errata.push_back("chain stopped at " + where + ": reduction hypothesis not met, theorem not closed");
        return std::move(cert_);
    }

    // ---------------------------------------------------------------- stages

    void search() {
        const unsigned ceiling = static_cast<unsigned>(std::stoul(in_const("max_nm", "search_ceiling")));
        const EquationKind eq = equation_of(shape_.theorem);
        in_literal("equation", std::string(to_string(eq)));
        cert_.search_ceiling = ceiling;
        cert_.solutions = brute_search(eq, ceiling);
        out("right_index_bound", std::to_string(right_index_bound(eq, ceiling)));
        out("solution_count", std::to_string(cert_.solutions.size()));
        std::string list;
        for (const auto& s : cert_.solutions) {
            list += (list.empty() ? "" : " ") + std::string("(") + std::to_string(s.n) + "," + std::to_string(s.m) +
                    "," + std::to_string(s.a) + ")";
        }
        out("solutions", list);
        bool sound = std::all_of(cert_.solutions.begin(), cert_.solutions.end(),
                                 [eq](const Solution& s) { return s.n >= s.m && satisfies(eq, s); });
        require(sound, "solutions_verified_exactly");
        if (shape_.theorem == Theorem::jj_eq_f) {
            cert_.errata.push_back("published solution table omits (2,0,1), although J_2 + J_0 = 1 = F_1; it lists "
                                   "(1,0,1) whose value is the same");
        } else {
            cert_.errata.push_back("published solution table lists (8,0,6) twice; 13 distinct triples");
        }
    }

    void index_relations() {
        const unsigned range = static_cast<unsigned>(std::stoul(in_const("growth_range", "growth_range")));
        const GrowthReport g = verify_growth_bounds(range);
        out("growth_bounds_hold_to", std::to_string(range));
        require(g.holds, "growth_bounds");
        out("alpha^(n-1)<=2^(n-2)_from", std::to_string(g.fib_below_pow2_from));
        out("2alpha^(n-1)<2^(n-2)_from", std::to_string(g.twice_fib_below_pow2_from));
        const long bits = 256;
        const Real l2 = constant(Const::log2, bits);
        const Real la = constant(Const::log_alpha, bits);
        const Real s5 = constant(Const::sqrt5, bits);
        const Real beta_abs = (s5 - 1) / 2;

        if (shape_.theorem == Theorem::jj_eq_f) {
            require(g.fib_below_pow2_from <= 201, "F_n<J_n_for_n>200");
            out("relation", "a > n");
            const Real ratio = l2 / la;
            out("log2_over_log_alpha", sig(ratio));
            // ratio n + 2 < 1.6 n  <=>  n > 2 / (1.6 - ratio)
            const Real threshold = Real(2, bits) / (Real(mpq_class(8, 5), bits) - ratio);
            const mpz_class from = threshold.floor_int() + 1;
            out("a<1.6n_from", str(from));
            require(from <= 201, "a<1.6n_for_n>200");
            require(Real(1, bits) / s5 < Real(mpq_class(1, 2), bits), "|beta|^a/sqrt5<1/2");
        } else {
            require(g.twice_fib_below_pow2_from <= 201, "2F_n<J_n_for_n>200");
            out("relation", "n > a");
            std::string pairs;
            for (const auto& [n, a] : pure_equality_solutions(cert_.search_ceiling)) {
                pairs += (pairs.empty() ? "" : " ") + std::string("(") + std::to_string(n) + "," +
                         std::to_string(a) + ")";
            }
            out("F_n=J_a_pairs_to_200", pairs);
            out("m=0_case", "n - m = n, closed by reduction_1 since its bound is below 200");
            const Real small = (pow(beta_abs, 5) + beta_abs) / s5;
            out("(|beta|^5+|beta|)/sqrt5", sig(small));
            require(small < Real(mpq_class(1, 3), bits), "(|beta|^n+|beta|^m)/sqrt5<1/3");
        }
    }

    LinearFormSpec form1_spec(const mpz_class& n, const mpz_class& a, long bits) const {
        LinearFormSpec spec;
        spec.D = 2;
        spec.B = shape_.theorem == Theorem::jj_eq_f ? a : n;
        const bool t1 = shape_.theorem == Theorem::jj_eq_f;
        const std::vector<Real> A =
            paper() ? std::vector<Real>{num("1.4", bits), num("0.5", bits), num("2.2", bits)}
                    : std::vector<Real>{constant(Const::log2, bits) * 2, constant(Const::log_alpha, bits),
                                        log(Real(3, bits)) * 2};
        spec.factors.push_back({"gamma_1 = 2", HeightExpr::rational(2), t1 ? mpz_class(-n) : a, A[0]});
        spec.factors.push_back({"gamma_2 = alpha", HeightExpr::known(KnownAlgebraic::alpha), t1 ? a : mpz_class(-n),
                                A[1]});
        spec.factors.push_back({"gamma_3", HeightExpr::known(shape_.g3), 1, A[2]});
        return spec;
    }

    // Gamma at precision `bits` for form I (k < 0) or form II (k = n - m >= 0).
    Real gamma_value(long n, long a, long k, long bits) const {
        const Real two(2, bits);
        const Real alpha = constant(Const::alpha, bits);
        Real g3 = HeightExpr::known(shape_.g3).value(bits);
        if (k >= 0) {
            g3 = gamma3_family(k).value(bits);
        }
        const bool t1 = shape_.theorem == Theorem::jj_eq_f;
        const Real prod = t1 ? pow(two, -n) * pow(alpha, a) * g3 : pow(two, a) * pow(alpha, -n) * g3;
        return Real(1, bits) - prod;
    }

    // Representative points n <= 200 with a chosen to make Gamma as small as
    // possible; the sign must agree at two precisions.
    void nonzero_samples(bool form2) {
        const long bits = bits_;
        const Real l2 = constant(Const::log2, 128);
        const Real la = constant(Const::log_alpha, 128);
        long checked = 0;
        Real smallest = Real(1, 64);
        for (long n = 1; n <= static_cast<long>(cert_.search_ceiling); ++n) {
            std::vector<long> ks{-1};
            if (form2) {
                ks = {0, n / 2, n - 1};
            }
            for (long k : ks) {
                if (form2 && k > n) {
                    continue;
                }
                // a log alpha ~ n log 2 (first theorem) or a log 2 ~ n log alpha (second)
                const Real target = shape_.theorem == Theorem::jj_eq_f ? Real(n, 128) * l2 / la
                                                                         : Real(n, 128) * la / l2;
                const long a = std::max(0L, target.round_int().get_si());
                const Real lo = gamma_value(n, a, k, bits);
                const Real hi = gamma_value(n, a, k, 2 * bits);
                const Real err = abs(lo.with_precision(2 * bits) - hi) * 2 + pow(Real(2, 2 * bits), -bits / 2);
                if (hi.is_zero() || lo.sign() != hi.sign() || abs(hi) <= err) {
                    throw stage_failure(current_, "linear form not certified nonzero at n = " + std::to_string(n) +
                                                      ", a = " + std::to_string(a));
                }
                smallest = min(smallest, abs(hi).with_precision(64));
                ++checked;
            }
        }
        out("nonzero_samples", std::to_string(checked));
        out("nonzero_smallest_abs", smallest.to_sig(6));
    }

    void matveev_form_1() {
        const long bits = 256;
        const bool t1 = shape_.theorem == Theorem::jj_eq_f;
        in_literal("t", "3");
        in_literal("D", "2");
        in_literal("B", shape_.big);
        in_literal("exponents", shape_.exponent_b1 + ", " + shape_.exponent_b2 + ", 1");
        if (paper()) {
            in_const("A1", "A1");
            in_const("A2", "A2");
            in_const("A3", "A3");
        }
        // Validate against a representative exponent pair beyond the search box.
        const LinearFormSpec spec = form1_spec(201, t1 ? 290 : 139, bits);
        validate(spec, bits);
        out("h(gamma_1)", sig(spec.factors[0].gamma.height_bound(bits)));
        out("h(gamma_2)", sig(spec.factors[1].gamma.height_bound(bits)));
        out("h(gamma_3)", sig(spec.factors[2].gamma.height_bound(bits)));
        for (int i = 0; i < 3; ++i) {
            out("A" + std::to_string(i + 1), spec.factors[static_cast<std::size_t>(i)].A.to_sig(20));
        }
        const Real C = matveev_constant(3, 2, bits);
        out("matveev_C", sig(C));
        // (1 + log B) < 2 log B for B >= 3
        const Real coefficient = matveev_coefficient(spec, bits) * 2;
        out("form1_coefficient_exact", sig(coefficient));
        const Real rhs_log = log(Real(shape_.form1_rhs, bits));
        out("side_condition", shape_.big + " >= 3 so 1 + log " + shape_.big + " < 2 log " + shape_.big);
        if (paper()) {
            const Real c_upper = num(in_const("matveev_C_upper", "matveev_C_upper"), bits);
            require(C < c_upper, "C<published_upper");
            const Real published = num(in_const("form1_coefficient", "form1_coefficient"), bits);
            require(coefficient <= published, "coefficient<=published");
            const Real nm = num(in_const("nm_coefficient", "nm_coefficient"), bits);
            // published * log B + log rhs <= nm * log B for every B >= 3
            require(published * log(Real(3, bits)) + rhs_log <= nm * log(Real(3, bits)), "log_rhs_absorbed");
            out("nm_coefficient", constant_value("nm_coefficient"));
            out("nm_offset", "0");
        } else {
            out("nm_coefficient", sig(coefficient));
            out("nm_offset", sig(rhs_log));
        }
        nonzero_samples(false);
    }

    void matveev_form_2() {
        const long bits = 256;
        in_literal("t", "3");
        in_literal("D", "2");
        in_literal("B", shape_.big);
        in_literal("gamma_3", HeightExpr::known(shape_.g3).describe() + " * (1 + " + shape_.r_name + "^-(n-m))^-1");
        const Real log6 = log(Real(6, bits));
        const Real slope = Real(shape_.d_h_r_over_log_r, bits) * log_r(bits);  // D h(r)
        Real intercept = log6 * 2;
        if (paper()) {
            in_const("A1", "A1");
            in_const("A2", "A2");
            intercept = num(in_const("A3_intercept", "A3_intercept"), bits);
        }
        out("A3_intercept", paper() ? constant_value("A3_intercept") : sig(intercept));
        out("A3_slope_per_(n-m)", sig(slope));
        // The height bound and |log gamma_3| < 1 for every k in the range the
        // proof can reach, and the A3 formula dominating both.
        const std::vector<Real> A12 = paper() ? std::vector<Real>{num("1.4", bits), num("0.5", bits)}
                                              : std::vector<Real>{constant(Const::log2, bits) * 2,
                                                                  constant(Const::log_alpha, bits)};
        for (long k = 1; k <= 400; ++k) {
            const HeightExpr g3 = gamma3_family(k);
            const Real h = g3.height_bound(bits);
            const Real closed = log6 + Real(k, bits) * slope / 2;
            if (abs(h - closed) > pow(Real(2, bits), -200)) {
                throw stage_failure(current_, "height bound differs from log 6 + (n-m) h(r) at k = " +
                                                  std::to_string(k));
            }
            if (!(abs(log(g3.value(bits))) < 1)) {
                throw stage_failure(current_, "|log gamma_3| >= 1 at k = " + std::to_string(k));
            }
            LinearFormSpec spec;
            spec.D = 2;
            spec.B = 1000;
            spec.factors.push_back({"gamma_1", HeightExpr::rational(2), 1, A12[0]});
            spec.factors.push_back({"gamma_2", HeightExpr::known(KnownAlgebraic::alpha), 1, A12[1]});
            spec.factors.push_back({"gamma_3", g3, 1, intercept + Real(k, bits) * slope});
            validate(spec, bits);
        }
        out("A3_validated_for_(n-m)", "1..400");
        out("h(gamma_3)_bound", "log 6 + (n-m) h(" + shape_.r_name + ")");
        const Real C = matveev_constant(3, 2, bits);
        const Real coefficient = C * A12[0] * A12[1] * 2;
        out("form2_coefficient_exact", sig(coefficient));
        const Real rhs_log = log(Real(shape_.form2_rhs, bits));
        if (paper()) {
            const Real published = num(in_const("form2_coefficient", "form2_coefficient"), bits);
            require(coefficient <= published, "coefficient<=published");
            const Real absorbed = num(in_const("form2_absorbed", "form2_absorbed"), bits);
            // published log B A3 + log rhs <= absorbed log B A3 with log B >= log 3, A3 >= 4
            const Real lb = log(Real(3, bits)) * 4;
            require(published * lb + rhs_log <= absorbed * lb, "log_rhs_absorbed");
            out("K", constant_value("form2_absorbed"));
            out("K_offset", "0");
        } else {
            out("K", sig(coefficient));
            out("K_offset", sig(rhs_log));
        }
        nonzero_samples(true);
    }

    // Inequality for the crossover solver from the stage-4 coefficient and an
    // A3 majorant c0 + c1 log(big).
    GrowthInequality growth(const std::string& label, const Real& K, const Real& c0, const Real& c1,
                            const Real& offset, bool sound) const {
        const long bits = kCrossoverBits;
        GrowthInequality f{label, log_r(bits), K, c0, c1, offset};
        if (shape_.theorem == Theorem::jj_eq_f && (sound || !paper())) {
            // n log 2 > (a - 2) log alpha turns "n log 2 < RHS(a)" into a bound on a
            f.slope = constant(Const::log_alpha, bits);
            f.offset = offset + constant(Const::log_alpha, bits) * 2;
        }
        return f;
    }

    void absolute_bound() {
        const long bits = kCrossoverBits;
        const Real K = num(in_stage("K", "matveev_form_2", "K"), bits);
        const Real K_offset = num(in_stage("K_offset", "matveev_form_2", "K_offset"), bits);
        const Real intercept = num(in_stage("A3_intercept", "matveev_form_2", "A3_intercept"), bits);
        const Real factor(shape_.d_h_r_over_log_r, bits);
        Real c0 = intercept;
        Real c1(bits);
        if (paper()) {
            const Real nm = num(in_stage("nm_coefficient", "matveev_form_1", "nm_coefficient"), bits);
            const Real published = num(in_const("substituted_coefficient", "substituted_coefficient"), bits);
            require(nm * factor == published, "substituted_coefficient");
            c1 = published;
        } else {
            const Real nm = num(in_stage("nm_coefficient", "matveev_form_1", "nm_coefficient"), bits);
            const Real nm_offset = num(in_stage("nm_offset", "matveev_form_1", "nm_offset"), bits);
            c0 = intercept + factor * nm_offset;
            c1 = nm * factor;
        }
        const GrowthInequality f = growth("absolute bound on " + shape_.big, K, c0, c1, K_offset, false);
        out("inequality", shape_.big + " * " + f.slope.to_sig(12) + " - " + K.to_sig(12) + " log " + shape_.big +
                              " (" + c0.to_sig(12) + " + " + c1.to_sig(12) + " log " + shape_.big + ") - " +
                              f.offset.to_sig(12) + " > 0");
        const mpz_class X = crossover_solve(f, mpz_class(1000));
        out("crossover", str(X));
        out("crossover_sci", sci(X));
        if (paper()) {
            const mpz_class published = parse_exact_integer(in_const("published_bound", "first_bound"));
            require(X <= published, "crossover<=published");
            out("M", constant_value("first_bound"));
            if (shape_.theorem == Theorem::jj_eq_f) {
                const mpz_class sound = crossover_solve(growth("sound", K, c0, c1, K_offset, true), 1000);
                out("sound_crossover", str(sound));
                require(sound <= published, "sound_crossover<=published");
                cert_.errata.push_back(
                    "from |Gamma_2| < (7/2) 2^-n the published chain concludes a log 2 < ...; only n log 2 < ... "
                    "follows. With n log 2 > (a-2) log alpha the bound on a becomes " +
                    sci(sound) + " (still below 10^29)");
            }
        } else {
            out("M", str(X));
        }
        out("M_bounds", shape_.big);
    }

    ReductionInstance instance(const Real& A, const mpz_class& M) const {
        const Const lr = shape_.log_r;
        const Const lo = shape_.log_other;
        const KnownAlgebraic g3 = shape_.g3;
        ReductionInstance inst;
        inst.gamma = [lr, lo](long b) { return constant(lo, b) / constant(lr, b); };
        inst.mu = [lr, g3](long b) { return log(HeightExpr::known(g3).value(b + 32)).with_precision(b) / constant(lr, b); };
        inst.A = [A](long b) { return A.with_precision(b); };
        const bool two = shape_.r_name == "2";
        inst.B = [two](long b) { return two ? Real(2, b) : constant(Const::alpha, b); };
        inst.M = M;
        return inst;
    }

    // Resolves a published convergent denominator against the actual
    // expansion of gamma.
    mpz_class resolve_q(const ReductionInstance& inst, const std::string& published_key) {
        const mpz_class printed(in_const("q_published", published_key));
        const ContinuedFraction cf = cf_expand(inst.gamma, 120, bits_);
        if (cf.index_of_denominator(printed)) {
            return printed;
        }
        const auto idx = cf.nearest_denominator(printed);
        if (!idx) {
            throw stage_failure(current_, "published q " + printed.get_str() + " is not a convergent denominator");
        }
        const mpz_class actual = cf.convergents[*idx].q;
        const Real rel = abs(Real(mpz_class(actual - printed), 128) / Real(printed, 128));
        if (!(rel < Real::parse("1e-9", 128))) {
            throw stage_failure(current_, "published q " + printed.get_str() + " is not a convergent denominator");
        }
        const std::string note = "published q = " + printed.get_str() + " is not a convergent denominator of " +
                                 gamma_text() + "; the convergent q_" + std::to_string(*idx) + " = " +
                                 actual.get_str() + " differs in a few digits and reproduces the published epsilon";
        if (std::find(cert_.errata.begin(), cert_.errata.end(), note) == cert_.errata.end()) {
            cert_.errata.push_back(note);
        }
        out("q_resolved_from_published", "true");
        return actual;
    }

    void report_result(const ReductionResult& r, const std::string& prefix) {
        out("q", str(r.q));
        out("convergent_index", std::to_string(r.convergent_index));
        out("applicable", str(r.applicable));
        out("eps_lo", r.epsilon.lo.to_sig(30, Round::down));
        out("eps_hi", r.epsilon.hi.to_sig(30, Round::up));
        if (!r.applicable) {
            out("note", r.note);
            return;
        }
        out("bound", sig(r.bound));
        out("bound_truncated_2dp", r.bound.to_fixed(2, Round::down));
        out("bound_ceil_2dp", r.bound.to_fixed(2, Round::up));
        out(prefix, str(r.bound.floor_int()));
    }

    void compare_published(const ReductionResult& r, const std::string& key) {
        if (!paper()) {
            return;
        }
        const long b = 256;
        const Real lo = num(in_const("published_eps_lo", key + "_eps_lo"), b);
        const Real hi = num(in_const("published_eps_hi", key + "_eps_hi"), b);
        out("eps_within_published", str(lo < r.epsilon.lo && r.epsilon.hi < hi));
        const Real pb = num(in_const("published_bound", key + "_bound"), b);
        out("bound_within_published", str(r.applicable && r.bound < pb));
    }

    bool reduction_1() {
        const long bits = bits_;
        in_literal("gamma", gamma_text());
        in_literal("mu", "log(" + HeightExpr::known(shape_.g3).describe() + ")/log(" + shape_.r_name + ")");
        in_literal("B", shape_.r_name);
        const mpz_class M = parse_exact_integer(in_stage("M", "absolute_bound", "M"));
        out("M_majorizes", shape_.theorem == Theorem::jj_eq_f ? "a, the multiplier of gamma"
                                                              : "n, and n > a, the multiplier of gamma");
        // Z > 0: Z < c/r^w. Z < 0 needs n - m >= 20 so that c/r^w < 1/2, then |Z| < 2c/r^w.
        const Real c(shape_.form1_rhs, bits);
        const Real r = r_value(bits);
        require(c / pow(r, 20) < Real(mpq_class(1, 2), bits), "rhs<1/2_for_n-m>=20");
        const Real A_exact = c * 2 / log_r(bits);
        out("A_exact", sig(A_exact));
        out("case_split", "n - m < 20 is below the reduced bound; for n - m >= 20 both signs of Z give |Z| < " +
                              std::to_string(2 * shape_.form1_rhs) + " / " + shape_.r_name + "^(n-m)");
        Real A = A_exact;
        if (paper()) {
            A = num(in_const("A", "reduction1_A"), bits);
            require(A_exact <= A, "A_dominates");
        }
        ReductionInstance inst = instance(A, M);
        ReductionOptions opt;
        opt.precision_bits = bits;
        if (paper()) {
            opt.pinned_q = resolve_q(inst, "reduction1_q");
        }
        out("6M", str(6 * M));
        const ReductionResult res = dp_reduce(inst, opt);
        report_result(res, "n-m_max");
        compare_published(res, "reduction1");
        return res.applicable;
    }

    void resubstitution() {
        const long bits = kCrossoverBits;
        const mpz_class W(in_stage("n-m_max", "reduction_1", "n-m_max"));
        const Real K = num(in_stage("K", "matveev_form_2", "K"), bits);
        const Real K_offset = num(in_stage("K_offset", "matveev_form_2", "K_offset"), bits);
        const Real intercept = num(in_stage("A3_intercept", "matveev_form_2", "A3_intercept"), bits);
        const Real slope = num(in_stage("A3_slope_per_(n-m)", "matveev_form_2", "A3_slope_per_(n-m)"), bits);
        const Real c0 = intercept + Real(W, bits) * slope;
        const Real zero(bits);
        const GrowthInequality f = growth("resubstituted bound on " + shape_.big, K, c0, zero, K_offset, false);
        out("A3_at_(n-m)_max", sig(c0));
        const mpz_class X = crossover_solve(f, mpz_class(1000));
        out("crossover", str(X));
        out("crossover_sci", sci(X));
        if (paper()) {
            const mpz_class published = parse_exact_integer(in_const("published_bound", "second_bound"));
            require(X <= published, "crossover<=published");
            out("M", constant_value("second_bound"));
            if (shape_.theorem == Theorem::jj_eq_f) {
                const mpz_class sound = crossover_solve(growth("sound", K, c0, zero, K_offset, true), 1000);
                out("sound_crossover", str(sound));
                sound_second_bound_ = sound;
                cert_.errata.push_back("with the sound relation the second bound on a is " +
                                       sci(sound) +
                                       ", above 1.2 x 10^16; reduction_2 is re-run with this M (sound_recheck_*)");
            }
        } else {
            out("M", str(X));
        }
        out("M_bounds", shape_.big);
    }

    MuFamily family() const {
        const Const lr = shape_.log_r;
        const KnownAlgebraic g3 = shape_.g3;
        const bool two = shape_.r_name == "2";
        return [lr, g3, two](long k) -> LazyReal {
            return [lr, g3, two, k](long b) {
                const long w = b + 32;
                const Real r = two ? Real(2, w) : constant(Const::alpha, w);
                const Real shift = Real(1, w) + pow(r, -k);
                const Real value = log(HeightExpr::known(g3).value(w) / shift);
                return value.with_precision(b) / constant(lr, b);
            };
        };
    }

    bool reduction_2() {
        const long bits = bits_;
        const long k_lo = std::stol(in_const("k_lo", "family_start"));
        const long k_hi = std::stol(in_stage("k_hi", "reduction_1", "n-m_max"));
        in_literal("gamma", gamma_text());
        in_literal("mu_k", "log(" + HeightExpr::known(shape_.g3).describe() + " (1 + " + shape_.r_name +
                               "^-k)^-1)/log(" + shape_.r_name + ")");
        const mpz_class M = parse_exact_integer(in_stage("M", "resubstitution", "M"));
        // s < 0 needs c/r^n < 1/2 for n > 200, then |s| < 2c/r^n
        const Real r = r_value(bits);
        const Real c(shape_.form2_rhs, bits);
        require(c / pow(r, 201) < Real(mpq_class(1, 2), bits), "rhs<1/2_for_n>200");
        const Real A_exact = c * 2 / log_r(bits);
        out("A_exact", sig(A_exact));
        Real A = A_exact;
        if (paper()) {
            A = num(in_const("A", "reduction2_A"), bits);
            require(A_exact <= A, "A_dominates");
        }
        ReductionInstance inst = instance(A, M);
        ReductionOptions opt;
        opt.precision_bits = bits;
        if (paper()) {
            opt.pinned_q = resolve_q(inst, "reduction2_q");
        }
        out("k_range", std::to_string(k_lo) + ".." + std::to_string(k_hi));
        out("6M", str(6 * M));
        SweepResult sweep;
        try {
            sweep = dp_sweep(inst, family(), k_lo, k_hi, opt);
        } catch (const reduction_exhausted& e) {
            out("applicable", "false");
            out("note", e.what());
            return false;
        }
        out("worst_k", std::to_string(sweep.worst_k));
        report_result(sweep.worst, "n_max");
        if (paper()) {
            out("worst_k_matches_published", str(std::to_string(sweep.worst_k) ==
                                                 in_const("published_worst_k", "reduction2_worst_k")));
        }
        compare_published(sweep.worst, "reduction2");

        // n = m is outside the published family; check it with the same q.
        ReductionInstance same = inst;
        same.mu = family()(0);
        ReductionOptions pin = opt;
        pin.pinned_q = sweep.worst.q;
        const ReductionResult k0 = dp_reduce(same, pin);
        out("k=0_applicable", str(k0.applicable));
        if (k0.applicable) {
            out("k=0_bound", sig(k0.bound));
        }
        require(k0.applicable && k0.bound < Real(static_cast<long>(cert_.search_ceiling), bits), "k=0_below_ceiling");

        if (sound_second_bound_) {
            ReductionInstance sound = instance(A, *sound_second_bound_);
            const SweepResult s = dp_sweep(sound, family(), k_lo, k_hi, opt);
            out("sound_recheck_M", str(*sound_second_bound_));
            out("sound_recheck_worst_k", std::to_string(s.worst_k));
            out("sound_recheck_bound", sig(s.worst.bound));
            require(s.worst.bound.floor_int() == sweep.worst.bound.floor_int(), "sound_recheck_same_floor");
        }
        return true;
    }

    void closure() {
        const unsigned bound = static_cast<unsigned>(std::stoul(in_stage("n_max", "reduction_2", "n_max")));
        const unsigned ceiling = static_cast<unsigned>(std::stoul(in_const("search_ceiling", "search_ceiling")));
        const unsigned nm = static_cast<unsigned>(std::stoul(in_stage("n-m_max", "reduction_1", "n-m_max")));
        cert_.final_bound = bound;
        cert_.closed = bound < ceiling && nm < ceiling;
        out("final_bound", std::to_string(bound));
        out("closed", str(cert_.closed));
        out("conclusion", "assuming n > " + std::to_string(ceiling) + " forces n <= " + std::to_string(bound) +
                              ", a contradiction; the search up to " + std::to_string(ceiling) + " is complete");
        cert_.errata.push_back("the closing sentence of the published proof states a contradiction with n <= 200; "
                               "the assumption being contradicted is n > 200");
        if (shape_.theorem == Theorem::jj_eq_f) {
            cert_.errata.push_back("the Z < 0 case prints 10 / alpha^(n-m); the derivation gives 10 / 2^(n-m)");
            cert_.errata.push_back("the final bound is printed as 140,56 and read as 140.56");
            cert_.errata.push_back("one growth estimate prints 2^(n-m) where 2^(n-2) is meant");
        }
        cert_.errata.push_back("the reduction lemma is stated with u >= M; the hypothesis used is 0 < u <= M");
        require(cert_.closed, "closed");
    }

    Shape shape_;
    long bits_;
    Fields consts_;
    ProofCertificate cert_;
    std::string current_;
    std::optional<mpz_class> sound_second_bound_;
};

} // namespace

ProofCertificate prove_theorem(Theorem theorem, const ProofOptions& options) {
    return Proof(theorem, options).run();
}

ProofCertificate prove_theorem_1(const ProofOptions& options) { return prove_theorem(Theorem::jj_eq_f, options); }
ProofCertificate prove_theorem_2(const ProofOptions& options) { return prove_theorem(Theorem::ff_eq_j, options); }

std::vector<std::string> check_chain(const ProofCertificate& cert) {
    std::vector<std::string> problems;
    const Fields consts = recipe_constants(cert.theorem, cert.mode);
    for (std::size_t i = 0; i < cert.stages.size(); ++i) {
        const StageRecord& s = cert.stages[i];
        for (std::size_t j = 0; j < i; ++j) {
            if (cert.stages[j].name == s.name) {
                problems.push_back("duplicate stage " + s.name);
            }
        }
        for (const auto& in : s.inputs) {
            const std::string where = s.name + "." + in.key;
            if (in.source == "literal") {
                continue;
            }
            if (in.source.rfind("constant:", 0) == 0) {
                const std::string* v = find_field(consts, in.source.substr(9));
                if (v == nullptr || *v != in.value) {
                    problems.push_back(where + ": unknown or mismatched constant " + in.source);
                }
                continue;
            }
            if (in.source.rfind("stage:", 0) == 0) {
                const std::string ref = in.source.substr(6);
                const auto dot = ref.find('.');
                const std::string stage_name = ref.substr(0, dot);
                const std::string key = dot == std::string::npos ? "" : ref.substr(dot + 1);
                bool found = false;
                for (std::size_t j = 0; j < i && !found; ++j) {
                    if (cert.stages[j].name == stage_name) {
                        const std::string* v = cert.stages[j].output(key);
                        found = v != nullptr && *v == in.value;
                    }
                }
                if (!found) {
                    problems.push_back(where + ": no earlier output " + ref + " with value " + in.value);
                }
                continue;
            }
            problems.push_back(where + ": unknown source " + in.source);
        }
    }
    return problems;
}

} // namespace fjprove
