#pragma once

// Staged proofs of the two theorems:
//   J_n + J_m = F_a  and  F_n + F_m = J_a  have no solutions with n > 200,
// so the brute-force search up to 200 is complete.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fjprove/realnum.hpp"
#include "fjprove/search.hpp"

namespace fjprove {

enum class Theorem { jj_eq_f = 1, ff_eq_j = 2 };

// paper: the published rounded constants, so certificates match the text.
// sharp: every constant recomputed unrounded, convergents auto-selected.
enum class ConstantMode { paper, sharp };

std::string_view to_string(ConstantMode mode);
EquationKind equation_of(Theorem theorem);

using Fields = std::vector<std::pair<std::string, std::string>>;

const std::string* find_field(const Fields& fields, std::string_view key);

struct StageInput {
    std::string key;
    std::string value;
    // "stage:<stage name>.<output key>", "constant:<name>" or "literal"
    std::string source;
};

struct StageRecord {
    std::string name;
    std::string anchor;       // the published statement this stage reproduces
    std::string provenance;   // "paper-mode", "sharp-mode" or "exact"
    std::vector<StageInput> inputs;
    Fields outputs;

    const std::string* output(std::string_view key) const { return find_field(outputs, key); }
};

struct ProofCertificate {
    Theorem theorem = Theorem::jj_eq_f;
    ConstantMode mode = ConstantMode::paper;
    long precision_bits = kDefaultPrecisionBits;
    std::vector<StageRecord> stages;
    std::optional<unsigned> final_bound;
    unsigned search_ceiling = 200;
    bool closed = false;
    std::vector<std::string> errata;
    std::vector<Solution> solutions;

    const StageRecord* stage(std::string_view name) const;
};

struct ProofOptions {
    ConstantMode mode = ConstantMode::paper;
    long precision_bits = kDefaultPrecisionBits;
};

// Named constants a recipe may consume: the published figures in paper mode,
// the fixed recipe data (search ceiling, family ranges) in both modes.
Fields recipe_constants(Theorem theorem, ConstantMode mode);

// Runs every stage. Stage errors surface as stage_failure (precision problems
// as precision_exhausted); an inapplicable reduction stops the chain and
// yields closed = false.
ProofCertificate prove_theorem(Theorem theorem, const ProofOptions& options = {});
ProofCertificate prove_theorem_1(const ProofOptions& options = {});
ProofCertificate prove_theorem_2(const ProofOptions& options = {});

// Every input must equal an earlier stage output or a recipe constant.
// Returns one message per broken link; empty when the chain is sound.
std::vector<std::string> check_chain(const ProofCertificate& cert);

enum class CertificateFormat { json, text };

// Deterministic serialization. Throws std::invalid_argument for a
// certificate without stages.
std::string emit_certificate(const ProofCertificate& cert, CertificateFormat format);

// Solutions as a JSON document {equation, max_n, solutions:[{n,m,a}]}.
std::string emit_solutions(EquationKind eq, unsigned max_nm, const std::vector<Solution>& solutions);

} // namespace fjprove
