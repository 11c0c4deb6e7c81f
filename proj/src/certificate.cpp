#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "fjprove/pipeline.hpp"

namespace fjprove {

namespace {

using json = nlohmann::ordered_json;

json solutions_json(const std::vector<Solution>& solutions) {
    json arr = json::array();
    for (const auto& s : solutions) {
        arr.push_back({{"n", std::to_string(s.n)}, {"m", std::to_string(s.m)}, {"a", std::to_string(s.a)}});
    }
    return arr;
}

json to_json(const ProofCertificate& cert) {
    json stages = json::array();
    for (const auto& s : cert.stages) {
        json inputs = json::array();
        for (const auto& in : s.inputs) {
            inputs.push_back({{"key", in.key}, {"value", in.value}, {"source", in.source}});
        }
        json outputs = json::object();
        for (const auto& [k, v] : s.outputs) {
            outputs[k] = v;
        }
        stages.push_back({{"name", s.name},
                          {"paper_anchor", s.anchor},
                          {"provenance", s.provenance},
                          {"inputs", std::move(inputs)},
                          {"outputs", std::move(outputs)}});
    }
    json doc;
    doc["theorem"] = std::to_string(static_cast<int>(cert.theorem));
    doc["equation"] = std::string(to_string(equation_of(cert.theorem)));
    doc["mode"] = std::string(to_string(cert.mode));
    doc["precision_bits"] = std::to_string(cert.precision_bits);
    doc["stages"] = std::move(stages);
    doc["final_bound"] = cert.final_bound ? json(std::to_string(*cert.final_bound)) : json(nullptr);
    doc["search_ceiling"] = std::to_string(cert.search_ceiling);
    doc["closed"] = cert.closed;
    doc["errata"] = cert.errata;
    doc["solutions"] = solutions_json(cert.solutions);
    return doc;
}

std::string to_text(const ProofCertificate& cert) {
    std::ostringstream os;
    os << "theorem " << static_cast<int>(cert.theorem) << ": " << to_string(equation_of(cert.theorem)) << "\n";
    os << "mode " << to_string(cert.mode) << ", precision " << cert.precision_bits << " bits\n";
    for (std::size_t i = 0; i < cert.stages.size(); ++i) {
        const auto& s = cert.stages[i];
        os << "\n[" << i + 1 << "] " << s.name << "  (" << s.anchor << ")\n";
        for (const auto& in : s.inputs) {
            os << "    in  " << in.key << " = " << in.value << "  <- " << in.source << "\n";
        }
        for (const auto& [k, v] : s.outputs) {
            os << "    out " << k << " = " << v << "\n";
        }
    }
    os << "\nfinal bound: " << (cert.final_bound ? std::to_string(*cert.final_bound) : "none") << "\n";
    os << "closed: " << (cert.closed ? "yes" : "no") << "\n";
    os << "solutions (n, m, a) with m <= n <= " << cert.search_ceiling << ":";
    for (const auto& s : cert.solutions) {
        os << " (" << s.n << "," << s.m << "," << s.a << ")";
    }
    os << "\n";
    if (!cert.errata.empty()) {
        os << "errata:\n";
        for (const auto& e : cert.errata) {
            os << "  - " << e << "\n";
        }
    }
    return os.str();
}

} // namespace

std::string emit_certificate(const ProofCertificate& cert, CertificateFormat format) {
    if (cert.stages.empty()) {
        throw std::invalid_argument("certificate has no stages");
    }
    if (format == CertificateFormat::text) {
        return to_text(cert);
    }
    return to_json(cert).dump(2) + "\n";
}

std::string emit_solutions(EquationKind eq, unsigned max_nm, const std::vector<Solution>& solutions) {
    json doc;
    doc["equation"] = std::string(to_string(eq));
    doc["max_n"] = std::to_string(max_nm);
    doc["count"] = std::to_string(solutions.size());
    doc["solutions"] = solutions_json(solutions);
    return doc.dump(2) + "\n";
}

} // namespace fjprove
