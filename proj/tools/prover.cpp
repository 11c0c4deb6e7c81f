#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "fjprove/errors.hpp"
#include "fjprove/expr.hpp"
#include "fjprove/matveev.hpp"
#include "fjprove/pipeline.hpp"
#include "fjprove/reduction.hpp"
#include "fjprove/search.hpp"

using namespace fjprove;

namespace {

constexpr int kExitStage = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitUsage = 64;

struct Preset {
    std::string description;
    GrowthInequality (*make)();
};

GrowthInequality inequality(std::string label, Const log_base, const char* coeff, const Real& c0, const char* c1) {
    constexpr long b = 256;
    return {std::move(label), constant(log_base, b), Real::parse(coeff, b), c0, Real::parse(c1, b), Real(b)};
}

const std::map<std::string, Preset>& presets() {
    static const std::map<std::string, Preset> table{
        {"thm1-matveev",
         {"a log 2 < 1.37e12 log a (4 + 6e12 log a)",
          [] { return inequality("thm1-matveev", Const::log2, "1.37e12", Real(4, 256), "6e12"); }}},
        {"thm1-resub",
         {"a log 2 < 1.37e12 log a (4 + 218 log 2)",
          [] {
              return inequality("thm1-resub", Const::log2, "1.37e12", constant(Const::log2, 256) * 218 + 4, "0");
          }}},
        {"thm2-matveev",
         {"n log alpha < 1.37e12 log n (4 + 3e12 log n)",
          [] { return inequality("thm2-matveev", Const::log_alpha, "1.37e12", Real(4, 256), "3e12"); }}},
        {"thm2-resub",
         {"n log alpha < 1.37e12 log n (4 + 150 log alpha)",
          [] {
              return inequality("thm2-resub", Const::log_alpha, "1.37e12",
                                constant(Const::log_alpha, 256) * 150 + 4, "0");
          }}},
    };
    return table;
}

long default_precision() {
    if (const char* env = std::getenv("PROVER_PRECISION_BITS")) {
        try {
            std::size_t used = 0;
            const long bits = std::stol(env, &used);
            if (used == std::string(env).size() && bits >= kMinPrecisionBits) {
                return bits;
            }
        } catch (const std::exception&) {
        }
        throw CLI::ValidationError("PROVER_PRECISION_BITS", "must be an integer >= 64");
    }
    return kDefaultPrecisionBits;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path);
    }
    f << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prover for J_n + J_m = F_a and F_n + F_m = J_a"};
    app.require_subcommand(1);

    std::string equation;
    unsigned max_n = 0;
    std::string out_path;
    auto* search = app.add_subcommand("search", "Brute-force search over m <= n <= N");
    search->add_option("--equation", equation, "jf: J_n + J_m = F_a, fj: F_n + F_m = J_a")
        ->required()
        ->check(CLI::IsMember({"jf", "fj"}));
    search->add_option("--max-n", max_n, "Largest n")->required();
    search->add_option("--out", out_path, "Write JSON here instead of stdout");

    int theorem = 1;
    std::string mode = "paper";
    std::optional<long> precision;
    std::string format = "json";
    auto* prove = app.add_subcommand("prove", "Run the staged proof and emit a certificate");
    prove->add_option("--theorem", theorem)->required()->check(CLI::IsMember({1, 2}));
    prove->add_option("--mode", mode)->check(CLI::IsMember({"paper", "sharp"}));
    prove->add_option("--precision-bits", precision)->check(CLI::Range(kMinPrecisionBits, 1L << 20));
    prove->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    prove->add_option("--out", out_path);

    std::string gamma, mu, a_expr, b_expr, m_text;
    std::optional<std::string> q_text;
    auto* reduce = app.add_subcommand("reduce", "Reduction for 0 < |u gamma - v + mu| < A B^-w, u <= M");
    reduce->add_option("--gamma", gamma)->required();
    reduce->add_option("--mu", mu)->required();
    reduce->add_option("-A", a_expr)->required();
    reduce->add_option("-B", b_expr)->required();
    reduce->add_option("-M", m_text)->required();
    reduce->add_option("--q", q_text, "Pin the convergent denominator");
    reduce->add_option("--precision-bits", precision)->check(CLI::Range(kMinPrecisionBits, 1L << 20));

    std::string preset;
    auto* bound = app.add_subcommand("bound", "Solve a growth inequality for its crossover");
    std::vector<std::string> names;
    std::string listing;
    for (const auto& [name, p] : presets()) {
        names.push_back(name);
        listing += "\n  " + name + ": " + p.description;
    }
    bound->add_option("--inequality", preset, "Preset:" + listing)->required()->check(CLI::IsMember(names));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        const long bits = precision ? *precision : default_precision();
        if (*search) {
            const EquationKind eq = equation == "jf" ? EquationKind::jj_eq_f : EquationKind::ff_eq_j;
            write_output(emit_solutions(eq, max_n, brute_search(eq, max_n)), out_path);
            return 0;
        }
        if (*prove) {
            ProofOptions opt;
            opt.mode = mode == "sharp" ? ConstantMode::sharp : ConstantMode::paper;
            opt.precision_bits = bits;
            const ProofCertificate cert = prove_theorem(theorem == 1 ? Theorem::jj_eq_f : Theorem::ff_eq_j, opt);
            write_output(emit_certificate(cert, format == "text" ? CertificateFormat::text : CertificateFormat::json),
                         out_path);
            return cert.closed ? 0 : kExitStage;
        }
        if (*reduce) {
            ReductionInstance inst;
            try {
                inst.gamma = parse_real_expression(gamma);
                inst.mu = parse_real_expression(mu);
                inst.A = parse_real_expression(a_expr);
                inst.B = parse_real_expression(b_expr);
                inst.M = parse_exact_integer(m_text);
            } catch (const std::invalid_argument& e) {
                std::cerr << "usage error: " << e.what() << "\n";
                return kExitUsage;
            }
            ReductionOptions opt;
            opt.precision_bits = bits;
            if (q_text) {
                opt.pinned_q = parse_exact_integer(*q_text);
            }
            const ReductionResult r = dp_reduce(inst, opt);
            std::cout << "q = " << r.q.get_str() << " (convergent " << r.convergent_index << ")\n";
            std::cout << "epsilon in [" << r.epsilon.lo.to_sig(30, Round::down) << ", "
                      << r.epsilon.hi.to_sig(30, Round::up) << "]\n";
            if (!r.applicable) {
                std::cout << "not applicable: " << r.note << "\n";
                return kExitStage;
            }
            std::cout << "w < " << r.bound.to_sig(30) << "\n";
            return 0;
        }
        const GrowthInequality f = presets().at(preset).make();
        const mpz_class x = crossover_solve(f, 1000);
        std::cout << presets().at(preset).description << "\n";
        std::cout << "fails for every integer >= " << x.get_str() << " (" << Real(x, 64).to_sci(6) << ")\n";
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const precision_exhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const stage_failure& e) {
        std::cerr << "stage " << e.stage() << " failed: " << e.what() << "\n";
        return kExitStage;
    } catch (const prover_error& e) {
        std::cerr << "failed: " << e.what() << "\n";
        return kExitStage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStage;
    }
}
