#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "hopfchern/chern.hpp"
#include "hopfchern/selftest.hpp"

namespace hopfchern {

inline constexpr const char* kReportSchema = "hopfchern-report/1";
inline constexpr const char* kVersion = "1.0.0";

/// One verification run's configuration. Same config => bit-identical numeric
/// report payload (the wall_ms fields are the only nondeterministic entries).
struct RunConfig {
    std::string command = "verify";
    std::string case_selector = "all";  // monopole | graded | instanton | all
    bool transposed = false;
    int s2_order = 32;
    int s4_order = 24;
    double tolerance = 0.0;  // 0: per-case defaults
    int grassmann_L = 2;
    std::uint64_t seed = 12345;
    int samples = 0;  // 0: per-suite defaults
    std::string report_path;
    std::vector<double> family;    // lambda c1 c2 c3 c4
    std::vector<double> g_values;  // flat matrix entries, case-dependent

    void validate() const {
        if (case_selector != "monopole" && case_selector != "graded" &&
            case_selector != "instanton" && case_selector != "all")
            throw std::invalid_argument("config: unknown case selector '" + case_selector + "'");
        if (s2_order < 4 || s4_order < 4)
            throw std::invalid_argument("config: quadrature orders must be >= 4");
        if (grassmann_L < 2 || grassmann_L > 16 || grassmann_L % 2 != 0)
            throw std::invalid_argument("config: grassmann L must be even, 2 <= L <= 16");
        if (tolerance < 0.0) throw std::invalid_argument("config: tolerance must be >= 0");
        if (samples < 0) throw std::invalid_argument("config: samples must be >= 0");
        if (!family.empty() && family.size() != 5)
            throw std::invalid_argument("config: --family needs 5 values (lambda c1 c2 c3 c4)");
    }
};

struct ReportDocument {
    RunConfig config;
    std::vector<ChargeReport> charges;
    std::vector<CheckResult> checks;
    bool overall_pass = true;
    double wall_ms = 0.0;

    void finalize() {
        overall_pass = true;
        for (const auto& c : checks) overall_pass = overall_pass && c.pass;
        for (const auto& c : charges) overall_pass = overall_pass && c.converged;
    }
};

// ---------------------------------------------------------------------------
// JSON serialization: fixed key order, floats with 17 significant digits.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string json_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string json_str(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch);
    }
    out += "\"";
    return out;
}

}  // namespace detail

inline std::string to_json(const ReportDocument& doc) {
    using detail::json_num;
    using detail::json_str;
    std::string j;
    j += "{\n";
    j += "  \"schema\": " + json_str(kReportSchema) + ",\n";
    j += "  \"version\": " + json_str(kVersion) + ",\n";
    j += "  \"config\": {\n";
    j += "    \"command\": " + json_str(doc.config.command) + ",\n";
    j += "    \"case\": " + json_str(doc.config.case_selector) + ",\n";
    j += std::string("    \"transposed\": ") + (doc.config.transposed ? "true" : "false") + ",\n";
    j += "    \"s2_order\": " + std::to_string(doc.config.s2_order) + ",\n";
    j += "    \"s4_order\": " + std::to_string(doc.config.s4_order) + ",\n";
    j += "    \"tol\": " + json_num(doc.config.tolerance) + ",\n";
    j += "    \"grassmann_l\": " + std::to_string(doc.config.grassmann_L) + ",\n";
    j += "    \"seed\": " + std::to_string(doc.config.seed) + ",\n";
    j += "    \"samples\": " + std::to_string(doc.config.samples);
    if (!doc.config.family.empty()) {
        j += ",\n    \"family\": [";
        for (std::size_t i = 0; i < doc.config.family.size(); ++i)
            j += (i ? ", " : "") + json_num(doc.config.family[i]);
        j += "]";
    }
    if (!doc.config.g_values.empty()) {
        j += ",\n    \"g\": [";
        for (std::size_t i = 0; i < doc.config.g_values.size(); ++i)
            j += (i ? ", " : "") + json_num(doc.config.g_values[i]);
        j += "]";
    }
    j += "\n  },\n";
    j += "  \"charges\": [";
    for (std::size_t i = 0; i < doc.charges.size(); ++i) {
        const auto& c = doc.charges[i];
        j += (i ? "," : "");
        j += "\n    {\n";
        j += "      \"case\": " + json_str(to_string(c.bundle_case)) + ",\n";
        j += std::string("      \"transposed\": ") + (c.transposed ? "true" : "false") + ",\n";
        if (c.c1) j += "      \"c1\": " + json_num(*c.c1) + ",\n";
        if (c.c2) j += "      \"c2\": " + json_num(*c.c2) + ",\n";
        j += "      \"chart\": " + json_str(c.chart) + ",\n";
        j += "      \"order\": " + std::to_string(c.order) + ",\n";
        j += "      \"tolerance\": " + json_num(c.tolerance) + ",\n";
        j += "      \"convergence_delta\": " + json_num(c.convergence_delta) + ",\n";
        j += std::string("      \"converged\": ") + (c.converged ? "true" : "false") + ",\n";
        j += "      \"residuals\": {";
        std::size_t k = 0;
        for (const auto& [name, val] : c.residuals)
            j += (k++ ? ", " : "") + json_str(name) + ": " + json_num(val);
        j += "},\n";
        j += "      \"density_samples\": [";
        for (std::size_t d = 0; d < c.density_samples.size(); ++d)
            j += (d ? ", " : "") + json_num(c.density_samples[d]);
        j += "],\n";
        j += "      \"wall_ms\": " + json_num(c.wall_ms) + "\n";
        j += "    }";
    }
    j += doc.charges.empty() ? "],\n" : "\n  ],\n";
    j += "  \"checks\": [";
    for (std::size_t i = 0; i < doc.checks.size(); ++i) {
        const auto& c = doc.checks[i];
        j += (i ? "," : "");
        j += "\n    {\"name\": " + json_str(c.name) + ", \"residual\": " + json_num(c.residual) +
             ", \"threshold\": " + json_num(c.threshold) +
             ", \"pass\": " + (c.pass ? "true" : "false") + "}";
    }
    j += doc.checks.empty() ? "],\n" : "\n  ],\n";
    int failed = 0;
    for (const auto& c : doc.checks)
        if (!c.pass) ++failed;
    j += "  \"summary\": {\"pass\": " + std::string(doc.overall_pass ? "true" : "false") +
         ", \"checks\": " + std::to_string(doc.checks.size()) +
         ", \"failed\": " + std::to_string(failed) + "},\n";
    j += "  \"wall_ms\": " + json_num(doc.wall_ms) + "\n";
    j += "}\n";
    return j;
}

}  // namespace hopfchern
