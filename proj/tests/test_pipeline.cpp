#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>

#include "json.hpp"

#include "fjprove/errors.hpp"
#include "fjprove/pipeline.hpp"

using namespace fjprove;
using json = nlohmann::json;

namespace {

const ProofCertificate& cert(Theorem t, ConstantMode mode = ConstantMode::paper) {
    static std::map<std::pair<int, int>, ProofCertificate> cache;
    const auto key = std::make_pair(static_cast<int>(t), static_cast<int>(mode));
    auto it = cache.find(key);
    if (it == cache.end()) {
        ProofOptions opt;
        opt.mode = mode;
        it = cache.emplace(key, prove_theorem(t, opt)).first;
    }
    return it->second;
}

std::string out(const ProofCertificate& c, const char* stage, const char* key) {
    const StageRecord* s = c.stage(stage);
    REQUIRE(s != nullptr);
    const std::string* v = s->output(key);
    REQUIRE(v != nullptr);
    return *v;
}

bool only_strings_and_bools(const json& j) {
    if (j.is_object() || j.is_array()) {
        for (const auto& v : j) {
            if (!only_strings_and_bools(v)) {
                return false;
            }
        }
        return true;
    }
    return j.is_string() || j.is_boolean() || j.is_null();
}

} // namespace

TEST_CASE("first theorem closes in paper mode") {
    const ProofCertificate& c = cert(Theorem::jj_eq_f);
    CHECK(c.closed);
    REQUIRE(c.final_bound);
    CHECK(*c.final_bound == 140);
    CHECK(out(c, "reduction_1", "n-m_max") == "109");
    CHECK(out(c, "reduction_2", "worst_k") == "66");
    CHECK(out(c, "reduction_1", "eps_within_published") == "true");
    CHECK(out(c, "reduction_2", "eps_within_published") == "true");
    CHECK(out(c, "reduction_2", "check.sound_recheck_same_floor") == "true");
    CHECK(check_chain(c).empty());
    CHECK(c.solutions.size() == 12);
}

TEST_CASE("second theorem closes in paper mode") {
    const ProofCertificate& c = cert(Theorem::ff_eq_j);
    CHECK(c.closed);
    REQUIRE(c.final_bound);
    CHECK(*c.final_bound == 157);
    CHECK(out(c, "reduction_1", "n-m_max") == "150");
    CHECK(out(c, "reduction_2", "worst_k") == "52");
    CHECK(out(c, "reduction_1", "q") == "506642617699397667695263997821");
    CHECK(check_chain(c).empty());
    CHECK(c.solutions.size() == 13);
    const bool noted = std::any_of(c.errata.begin(), c.errata.end(), [](const std::string& e) {
        return e.find("506642617666397667695263997821") != std::string::npos;
    });
    CHECK(noted);
}

TEST_CASE("sharp mode closes both theorems with smaller bounds") {
    for (Theorem t : {Theorem::jj_eq_f, Theorem::ff_eq_j}) {
        const ProofCertificate& sharp = cert(t, ConstantMode::sharp);
        CHECK(sharp.closed);
        REQUIRE(sharp.final_bound);
        CHECK(*sharp.final_bound <= *cert(t).final_bound);
        CHECK(check_chain(sharp).empty());
    }
}

TEST_CASE("chain check catches a broken link") {
    ProofCertificate c = cert(Theorem::jj_eq_f);
    StageRecord& s = c.stages[6];
    REQUIRE(!s.inputs.empty());
    s.inputs[0].value = "110";
    CHECK_FALSE(check_chain(c).empty());
    ProofCertificate d = cert(Theorem::ff_eq_j);
    d.stages[2].inputs.push_back({"x", "1", "constant:nonexistent"});
    CHECK(check_chain(d).size() == 1);
}

TEST_CASE("certificate JSON layout") {
    const json doc = json::parse(emit_certificate(cert(Theorem::jj_eq_f), CertificateFormat::json));
    for (const char* key : {"theorem", "mode", "precision_bits", "stages", "final_bound", "closed", "errata",
                            "solutions"}) {
        CHECK(doc.contains(key));
    }
    CHECK(doc["theorem"] == "1");
    CHECK(doc["mode"] == "paper");
    CHECK(doc["precision_bits"] == "768");
    CHECK(doc["final_bound"] == "140");
    CHECK(doc["closed"] == true);
    CHECK(doc["stages"].size() == 9);
    for (const auto& s : doc["stages"]) {
        for (const char* key : {"name", "paper_anchor", "inputs", "outputs"}) {
            CHECK(s.contains(key));
        }
    }
    CHECK(doc["solutions"][2] == json({{"n", "2"}, {"m", "0"}, {"a", "1"}}));
    CHECK(only_strings_and_bools(doc));
}

TEST_CASE("certificates are deterministic") {
    for (Theorem t : {Theorem::jj_eq_f, Theorem::ff_eq_j}) {
        const std::string a = emit_certificate(prove_theorem(t), CertificateFormat::json);
        const std::string b = emit_certificate(prove_theorem(t), CertificateFormat::json);
        CHECK(a == b);
        CHECK(emit_certificate(cert(t), CertificateFormat::text) == emit_certificate(cert(t), CertificateFormat::text));
    }
}

TEST_CASE("empty certificate is refused") {
    CHECK_THROWS_AS(emit_certificate(ProofCertificate{}, CertificateFormat::json), std::invalid_argument);
}

TEST_CASE("insufficient precision surfaces as precision_exhausted") {
    ProofOptions opt;
    opt.precision_bits = 64;
    CHECK_THROWS_AS(prove_theorem(Theorem::jj_eq_f, opt), precision_exhausted);
    opt.precision_bits = 32;
    CHECK_THROWS_AS(prove_theorem(Theorem::jj_eq_f, opt), std::invalid_argument);
}

TEST_CASE("solutions document") {
    const json doc = json::parse(emit_solutions(EquationKind::ff_eq_j, 10, brute_search(EquationKind::ff_eq_j, 10)));
    CHECK(doc["max_n"] == "10");
    CHECK(doc["solutions"].size() == 13);
}
