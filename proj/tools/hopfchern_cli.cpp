// Command-line driver: runs the verification suites, gauge-orbit checks and
// self-tests, and emits a deterministic JSON report (stdout, optionally a
// file). Exit codes: 0 all checks pass, 1 check or numeric failure, 2 usage.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hopfchern/runner.hpp"

namespace {

struct CommandOptions {
    hopfchern::RunConfig cfg;
    std::string config_path;
    CLI::App* cmd = nullptr;
};

void add_common_options(CLI::App* cmd, CommandOptions& o) {
    o.cmd = cmd;
    hopfchern::RunConfig& cfg = o.cfg;
    cmd->add_option("--config", o.config_path, "key=value config file (flags win)");
    cmd->add_option("--case", cfg.case_selector, "monopole|graded|instanton|all")
        ->default_val("all");
    cmd->add_flag("--transposed", cfg.transposed, "use the transposed projector q");
    cmd->add_option("--s2-order", cfg.s2_order, "Gauss-Legendre order per axis on S^2")
        ->default_val(32);
    cmd->add_option("--s4-order", cfg.s4_order, "Gauss-Legendre order per axis on S^4")
        ->default_val(24);
    cmd->add_option("--tol", cfg.tolerance, "override the charge tolerance");
    cmd->add_option("--grassmann-l", cfg.grassmann_L, "number of Grassmann generators (even)")
        ->default_val(2);
    cmd->add_option("--seed", cfg.seed, "RNG seed")->default_val(12345);
    cmd->add_option("--samples", cfg.samples, "sample count override (0 = per-suite defaults)");
    cmd->add_option("--report", cfg.report_path, "write the JSON report to this path");
    cmd->add_option("--family", cfg.family,
                    "conformal family element: lambda c1 c2 c3 c4 (instanton)")
        ->expected(5);
    cmd->add_option("--g", cfg.g_values,
                    "gauge element as flat reals: 8 for GL(2,C) (re,im row-major), 32 for "
                    "GL(2,H) (2x2x4), 8 for the graded case (a, b, eta components)");
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    std::string tok;
    std::stringstream ss(text);
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

/// Applies a key=value config file; command-line flags win.
void apply_config_file(CommandOptions& o) {
    if (o.config_path.empty()) return;
    std::ifstream in(o.config_path);
    if (!in) throw std::invalid_argument("config: cannot read " + o.config_path);
    auto given = [&](const std::string& flag) { return o.cmd->count(flag) > 0; };
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        hopfchern::RunConfig& cfg = o.cfg;
        if (key == "case" && !given("--case")) cfg.case_selector = val;
        else if (key == "transposed" && !given("--transposed"))
            cfg.transposed = (val == "1" || val == "true");
        else if (key == "s2-order" && !given("--s2-order")) cfg.s2_order = std::stoi(val);
        else if (key == "s4-order" && !given("--s4-order")) cfg.s4_order = std::stoi(val);
        else if (key == "tol" && !given("--tol")) cfg.tolerance = std::stod(val);
        else if (key == "grassmann-l" && !given("--grassmann-l")) cfg.grassmann_L = std::stoi(val);
        else if (key == "seed" && !given("--seed")) cfg.seed = std::stoull(val);
        else if (key == "samples" && !given("--samples")) cfg.samples = std::stoi(val);
        else if (key == "report" && !given("--report")) cfg.report_path = val;
        else if (key == "family" && !given("--family")) cfg.family = parse_real_list(val);
        else if (key == "g" && !given("--g")) cfg.g_values = parse_real_list(val);
        else if (key != "case" && key != "transposed" && key != "s2-order" && key != "s4-order" &&
                 key != "tol" && key != "grassmann-l" && key != "seed" && key != "samples" &&
                 key != "report" && key != "family" && key != "g")
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

int emit(const hopfchern::ReportDocument& doc, const hopfchern::RunConfig& cfg) {
    const std::string json = hopfchern::to_json(doc);
    std::cout << json;
    if (!cfg.report_path.empty()) {
        std::ofstream out(cfg.report_path);
        if (!out) {
            std::cerr << "error: cannot write report to " << cfg.report_path << "\n";
            return 1;
        }
        out << json;
    }
    return doc.overall_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gauge-field projectors on S^2, S^{2,2} and S^4: charges and checks"};
    app.require_subcommand(1);

    CommandOptions o_verify, o_gauge, o_selftest;
    CLI::App* verify = app.add_subcommand("verify", "projector, connection and charge suite");
    add_common_options(verify, o_verify);
    CLI::App* gauge = app.add_subcommand("gauge", "gauge-orbit checks and transformed charge");
    add_common_options(gauge, o_gauge);
    CLI::App* selftest = app.add_subcommand("selftest", "algebra, engine and quadrature checks");
    add_common_options(selftest, o_selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) {
            apply_config_file(o_verify);
            o_verify.cfg.command = "verify";
            return emit(hopfchern::cmd_verify(o_verify.cfg), o_verify.cfg);
        }
        if (gauge->parsed()) {
            apply_config_file(o_gauge);
            o_gauge.cfg.command = "gauge";
            return emit(hopfchern::cmd_gauge(o_gauge.cfg), o_gauge.cfg);
        }
        apply_config_file(o_selftest);
        o_selftest.cfg.command = "selftest";
        return emit(hopfchern::cmd_selftest(o_selftest.cfg), o_selftest.cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const hopfchern::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
