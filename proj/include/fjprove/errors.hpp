#pragma once

#include <stdexcept>
#include <string>

namespace fjprove {

// Base for every failure the prover reports to its callers.
class prover_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Working precision ran out before a value could be certified.
class precision_exhausted : public prover_error {
public:
    using prover_error::prover_error;
};

// A Binet evaluation left a residual too large to round safely.
class precision_insufficient : public precision_exhausted {
public:
    using precision_exhausted::precision_exhausted;
};

// x lies within its own error bound of a half-integer.
class ambiguous_rounding : public precision_exhausted {
public:
    using precision_exhausted::precision_exhausted;
};

// A linear form specification violates Matveev's hypotheses.
class invalid_spec : public prover_error {
public:
    using prover_error::prover_error;
};

// Exponential bracketing hit the ceiling without finding f > 0.
class no_crossover : public prover_error {
public:
    using prover_error::prover_error;
};

// No convergent in the scanned range gave a certified epsilon > 0.
class reduction_exhausted : public prover_error {
public:
    using prover_error::prover_error;
};

// A pinned denominator does not occur among the convergents.
class not_a_convergent : public prover_error {
public:
    using prover_error::prover_error;
};

// A proof stage could not establish its conclusion.
class stage_failure : public prover_error {
public:
    stage_failure(std::string stage, const std::string& what)
        : prover_error(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

} // namespace fjprove
