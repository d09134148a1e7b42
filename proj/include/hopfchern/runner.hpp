#pragma once

#include "hopfchern/report.hpp"

namespace hopfchern {

namespace detail {

inline std::vector<BundleCase> selected_cases(const RunConfig& cfg) {
    if (cfg.case_selector == "monopole") return {BundleCase::monopole};
    if (cfg.case_selector == "graded") return {BundleCase::graded};
    if (cfg.case_selector == "instanton") return {BundleCase::instanton};
    return {BundleCase::monopole, BundleCase::graded, BundleCase::instanton};
}

inline ChargeOptions charge_options(const RunConfig& cfg) {
    ChargeOptions opt;
    opt.s2_order = cfg.s2_order;
    opt.s4_order = cfg.s4_order;
    opt.grassmann_L = cfg.grassmann_L;
    opt.seed = cfg.seed;
    opt.tolerance = cfg.tolerance;
    if (cfg.samples > 0) opt.samples = cfg.samples;
    return opt;
}

inline double expected_charge(BundleCase, bool transposed) { return transposed ? 1.0 : -1.0; }

}  // namespace detail

/// Runs projector identities, connection anti-hermiticity and the charge
/// computation for the selected case(s).
inline ReportDocument cmd_verify(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    cfg.validate();
    ReportDocument doc;
    doc.config = cfg;
    const ChargeOptions opt = detail::charge_options(cfg);
    const int id_samples = cfg.samples > 0 ? cfg.samples : 1000;
    const int conn_draws = cfg.samples > 0 ? cfg.samples : 300;

    for (BundleCase c : detail::selected_cases(cfg)) {
        const ChargeReport rep = compute_charge(c, cfg.transposed, opt);
        const double want = detail::expected_charge(c, cfg.transposed);
        const double got = (c == BundleCase::instanton) ? *rep.c2 : *rep.c1;
        const std::string tag = std::string(to_string(c)) + (cfg.transposed ? "_q" : "_p");
        doc.checks.push_back(
            make_check(tag + "/charge", std::abs(got - want), rep.tolerance));
        if (c == BundleCase::instanton) {
            doc.checks.push_back(make_check(tag + "/c1_vanishes",
                                            rep.residuals.at("c1_pointwise_max"), 1e-10));
            doc.checks.push_back(make_check(tag + "/c1_symbolic_zero",
                                            rep.residuals.at("c1_symbolic_max_coeff"), 0.0));
        } else {
            const char* key = (c == BundleCase::monopole) ? "density_vs_volume_coeff"
                                                          : "body_vs_volume_coeff";
            doc.checks.push_back(
                make_check(tag + "/chern_form_coefficientwise", rep.residuals.at(key), 1e-12));
        }
        doc.checks.push_back(
            make_check(tag + "/two_path_agreement", rep.residuals.at("path_disagreement"),
                       rep.tolerance));
        doc.charges.push_back(rep);

        auto ids = check_projector_identities(c, cfg.transposed, cfg.grassmann_L, cfg.seed,
                                              id_samples);
        doc.checks.insert(doc.checks.end(), ids.begin(), ids.end());
        auto conns = check_connections(c, cfg.grassmann_L, cfg.seed + 1, conn_draws);
        doc.checks.insert(doc.checks.end(), conns.begin(), conns.end());
    }
    doc.finalize();
    doc.wall_ms = detail::elapsed_ms(t0);
    return doc;
}

namespace detail {

inline GradedMatrix<Cplx> parse_gl2c(const std::vector<double>& v) {
    if (v.size() != 8)
        throw std::invalid_argument("gauge: GL(2,C) element needs 8 reals (re,im row-major)");
    auto g = GradedMatrix<Cplx>::plain(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            g.at(i, j) = Cplx(v[(i * 2 + j) * 2], v[(i * 2 + j) * 2 + 1]);
    return g;
}

inline GradedMatrix<Quaternion> parse_gl2h(const std::vector<double>& v) {
    if (v.size() != 32)
        throw std::invalid_argument("gauge: GL(2,H) element needs 32 reals (2x2x4 row-major)");
    auto g = GradedMatrix<Quaternion>::plain(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const int o = (i * 2 + j) * 4;
            g.at(i, j) = Quaternion(v[o], v[o + 1], v[o + 2], v[o + 3]);
        }
    return g;
}

inline UospElement parse_uosp(const std::vector<double>& v, int L) {
    if (v.size() != 8)
        throw std::invalid_argument(
            "gauge: graded element needs 8 reals (a_re a_im b_re b_im alpha_re alpha_im "
            "beta_re beta_im)");
    const GrassmannNumber a = GrassmannNumber::scalar(Cplx(v[0], v[1]), L);
    const GrassmannNumber b = GrassmannNumber::scalar(Cplx(v[2], v[3]), L);
    const GrassmannNumber eta = GrassmannNumber::generator(0, L) * Cplx(v[4], v[5]) +
                                GrassmannNumber::generator(1, L) * Cplx(v[6], v[7]);
    return uosp_element(a, b, eta, 1e-9);
}

}  // namespace detail

/// Gauge-orbit run: partial isometries, connection invariance (unitary) or
/// transformed-connection checks, transformed charge.
inline ReportDocument cmd_gauge(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    cfg.validate();
    if (cfg.case_selector == "all")
        throw std::invalid_argument("gauge: select one case (monopole|graded|instanton)");
    ReportDocument doc;
    doc.config = cfg;
    const ChargeOptions opt = detail::charge_options(cfg);
    const int draws = cfg.samples > 0 ? cfg.samples : 50;
    Rng rng(cfg.seed);
    const double charge_tol = cfg.tolerance > 0 ? cfg.tolerance : 1e-5;

    if (cfg.case_selector == "monopole") {
        GradedMatrix<Cplx> g = cfg.g_values.empty() ? random_su2(rng)
                                                    : detail::parse_gl2c(cfg.g_values);
        const bool unitary = unitarity_residual(g) < 1e-8;
        if (unitary) {
            const SuTransformReport su = su_transform_monopole(g, draws, cfg.seed);
            doc.checks.push_back(
                make_check("gauge/connection_invariance", su.connection_residual, 1e-11));
            doc.checks.push_back(make_check("gauge/vvdag", su.vvdag_residual, 1e-11));
            doc.checks.push_back(make_check("gauge/vdagv", su.vdagv_residual, 1e-11));
        }
        const GlTransformReport gl = gl_transform_monopole(g, opt);
        doc.checks.push_back(make_check("gauge/ket_normalization", gl.ket_norm_residual, 1e-11));
        doc.checks.push_back(make_check("gauge/gl_vvdag", gl.vvdag_residual, 1e-11));
        doc.checks.push_back(make_check("gauge/gl_vdagv", gl.vdagv_residual, 1e-11));
        doc.checks.push_back(make_check("gauge/transformed_connection", gl.transformed_connection_residual, 1e-11));
        doc.checks.push_back(
            make_check("gauge/charge_preserved", std::abs(gl.charge - (-1.0)), charge_tol));
        ChargeReport cr;
        cr.bundle_case = BundleCase::monopole;
        cr.c1 = gl.charge;
        cr.order = gl.order;
        cr.chart = "s2-polar";
        cr.convergence_delta = gl.convergence_delta;
        cr.tolerance = charge_tol;
        cr.wall_ms = 0.0;
        doc.charges.push_back(cr);
    } else if (cfg.case_selector == "instanton") {
        GradedMatrix<Quaternion> g =
            !cfg.family.empty()
                ? instanton_family({cfg.family[0], cfg.family[1], cfg.family[2], cfg.family[3],
                                    cfg.family[4]})
                : (cfg.g_values.empty() ? random_sp2(rng) : detail::parse_gl2h(cfg.g_values));
        const bool unitary = unitarity_residual(g) < 1e-8;
        if (unitary) {
            const SuTransformReport su = su_transform_instanton(g, draws, cfg.seed);
            doc.checks.push_back(
                make_check("gauge/connection_invariance", su.connection_residual, 1e-11));
            doc.checks.push_back(make_check("gauge/vvdag", su.vvdag_residual, 1e-11));
            doc.checks.push_back(make_check("gauge/vdagv", su.vdagv_residual, 1e-11));
        }
        const GlTransformReport gl = gl_transform_instanton(g, opt);
        doc.checks.push_back(make_check("gauge/ket_normalization", gl.ket_norm_residual, 1e-11));
        doc.checks.push_back(make_check("gauge/gl_vvdag", gl.vvdag_residual, 1e-11));
        doc.checks.push_back(make_check("gauge/gl_vdagv", gl.vdagv_residual, 1e-11));
        doc.checks.push_back(make_check("gauge/transformed_connection", gl.transformed_connection_residual, 1e-11));
        doc.checks.push_back(
            make_check("gauge/charge_preserved", std::abs(gl.charge - (-1.0)), charge_tol));
        ChargeReport cr;
        cr.bundle_case = BundleCase::instanton;
        cr.c2 = gl.charge;
        cr.order = gl.order;
        cr.chart = "s4-hyperspherical";
        cr.convergence_delta = gl.convergence_delta;
        cr.tolerance = charge_tol;
        doc.charges.push_back(cr);
    } else {
        UospElement s = cfg.g_values.empty() ? uosp_random(rng, cfg.grassmann_L)
                                             : detail::parse_uosp(cfg.g_values, cfg.grassmann_L);
        const SuTransformReport su = su_transform_graded(s, draws, cfg.seed);
        doc.checks.push_back(
            make_check("gauge/connection_invariance", su.connection_residual, 1e-11));
        doc.checks.push_back(make_check("gauge/vvdag", su.vvdag_residual, 1e-11));
        doc.checks.push_back(make_check("gauge/vdagv", su.vdagv_residual, 1e-11));
        const GlTransformReport gl = gl_transform_graded(s.matrix, opt);
        doc.checks.push_back(make_check("gauge/ket_normalization", gl.ket_norm_residual, 1e-11));
        doc.checks.push_back(
            make_check("gauge/charge_preserved", std::abs(gl.charge - (-1.0)), charge_tol));
        ChargeReport cr;
        cr.bundle_case = BundleCase::graded;
        cr.c1 = gl.charge;
        cr.order = gl.order;
        cr.chart = "s2-polar";
        cr.convergence_delta = gl.convergence_delta;
        cr.tolerance = charge_tol;
        doc.charges.push_back(cr);
    }
    doc.finalize();
    doc.wall_ms = detail::elapsed_ms(t0);
    return doc;
}

/// Algebra axioms, exterior-engine properties, supergroup suite, quadrature
/// volume checks.
inline ReportDocument cmd_selftest(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    cfg.validate();
    ReportDocument doc;
    doc.config = cfg;
    auto append = [&doc](std::vector<CheckResult> v) {
        doc.checks.insert(doc.checks.end(), v.begin(), v.end());
    };
    append(check_ring_axioms(cfg.grassmann_L, cfg.seed));
    append(check_involution_axioms(cfg.grassmann_L, cfg.seed + 1));
    append(check_exterior_engine(cfg.seed + 2, cfg.samples > 0 ? cfg.samples : 500));
    append(check_supergroup(cfg.grassmann_L, cfg.seed + 3));
    append(check_quadrature(cfg.s2_order, cfg.s4_order));
    doc.finalize();
    doc.wall_ms = detail::elapsed_ms(t0);
    return doc;
}

}  // namespace hopfchern
