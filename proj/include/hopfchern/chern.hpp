#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <string>

#include "hopfchern/projectors.hpp"

namespace hopfchern {


// ---------------------------------------------------------------------------
// Curvature and Chern forms (symbolic route)
// ---------------------------------------------------------------------------

/// Curvature p (dp)^2 of the canonical connection, a degree-2 form matrix.
inline FormMatrix<Cplx> monopole_curvature(const S2System& s, bool transposed = false) {
    const FormMatrix<Cplx> p = monopole_projector(s, transposed);
    const FormMatrix<Cplx> dp = p.d();
    return p * dp * dp;
}

inline FormMatrix<Cplx> graded_curvature(const S22System& s, bool transposed = false) {
    const FormMatrix<Cplx> p = graded_projector(s, transposed);
    const FormMatrix<Cplx> dp = p.d();
    return p * dp * dp;
}

inline FormMatrix<Quaternion> instanton_curvature(const S4System& s, bool transposed = false) {
    const FormMatrix<Quaternion> p = instanton_projector(s, transposed);
    const FormMatrix<Quaternion> dp = p.d();
    return p * dp * dp;
}

/// C1 = -(1/2 pi i) tr(p (dp)^2); equals -(1/4 pi) vol(S^2) coefficientwise.
inline GradedForm<Cplx> monopole_chern_form(const S2System& s, bool transposed = false) {
    const FormMatrix<Cplx> p = monopole_projector(s, transposed);
    const FormMatrix<Cplx> dp = p.d();
    return (p * dp * dp).trace() * Cplx(0.0, 1.0 / (2.0 * kPi));
}

/// C1 = -(1/2 pi i) Str(p (dp)^2) on the supersphere (a mixed even/odd
/// 2-form; the Berezin integral is integrate(body_project(.)) over S^2).
inline GradedForm<Cplx> graded_chern_form(const S22System& s, bool transposed = false) {
    const FormMatrix<Cplx> p = graded_projector(s, transposed);
    const FormMatrix<Cplx> dp = p.d();
    return (p * dp * dp).supertrace() * Cplx(0.0, 1.0 / (2.0 * kPi));
}

/// First Chern form of the instanton: vanishes identically (the curvature is
/// valued in the imaginary quaternions).
inline GradedForm<Cplx> instanton_c1_form(const S4System& s, bool transposed = false) {
    const FormMatrix<Quaternion> p = instanton_projector(s, transposed);
    const FormMatrix<Quaternion> dp = p.d();
    return trace_quaternionic(p * dp * dp) * Cplx(0.0, 1.0 / (2.0 * kPi));
}

/// C2 = -(1/8 pi^2) [ tr(p (dp)^4) - C1 C1 ]; the simpler form without the
/// subtraction must agree since C1 = 0.
inline GradedForm<Cplx> instanton_c2_form(const S4System& s, bool transposed = false,
                                          bool with_c1_subtraction = true) {
    const FormMatrix<Quaternion> p = instanton_projector(s, transposed);
    const FormMatrix<Quaternion> dp = p.d();
    const FormMatrix<Quaternion> dp2 = dp * dp;
    GradedForm<Cplx> c2 =
        trace_quaternionic(p * dp2 * dp2) * Cplx(-1.0 / (8.0 * kPi * kPi), 0.0);
    if (with_c1_subtraction) {
        const GradedForm<Cplx> c1 = instanton_c1_form(s, transposed);
        c2 = c2 + (c1 * c1) * Cplx(1.0 / (8.0 * kPi * kPi), 0.0);
    }
    return c2;
}

// ---------------------------------------------------------------------------
// Pointwise route: affine matrix fields on a chart
// ---------------------------------------------------------------------------

/// Decomposition M(x) = base + sum_k x_k lin[k] of a degree-0 matrix whose
/// entries are affine in the coordinates. Carries the parity signature along.
template <class R>
struct AffineMatrix {
    GradedMatrix<R> base;
    std::vector<GradedMatrix<R>> lin;
    std::vector<int> parities;
};

template <class R>
AffineMatrix<R> affine_parts(const FormMatrix<R>& m, const std::vector<VarId>& coords, R zero = R{}) {
    const auto& sp = *m.space();
    std::vector<int> which(sp.size(), -1);
    for (std::size_t k = 0; k < coords.size(); ++k) which[coords[k]] = static_cast<int>(k);
    AffineMatrix<R> out{GradedMatrix<R>(m.row_parities(), m.col_parities(), zero),
                        {},
                        m.row_parities()};
    out.lin.assign(coords.size(), out.base);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            for (const auto& [mono, c] : m.at(i, j).terms()) {
                if (mono.empty()) {
                    out.base.at(i, j) = out.base.at(i, j) + c;
                } else if (mono.size() == 1 && which[mono[0]] >= 0) {
                    out.lin[which[mono[0]]].at(i, j) = out.lin[which[mono[0]]].at(i, j) + c;
                } else {
                    throw std::domain_error("affine_parts: entry not affine in the coordinates");
                }
            }
    return out;
}

/// Evaluates P(x) and the chart-tangent derivatives D_mu = sum_k J[k][mu] lin_k.
template <class R>
void eval_affine(const AffineMatrix<R>& a, const double* x, const double* J, int dim,
                 GradedMatrix<R>& P, std::vector<GradedMatrix<R>>& D) {
    P = a.base;
    const int ambient = static_cast<int>(a.lin.size());
    for (int k = 0; k < ambient; ++k)
        if (x[k] != 0.0) P = P + a.lin[k].scaled(x[k]);
    D.assign(dim, a.base.scaled(0.0));
    for (int mu = 0; mu < dim; ++mu)
        for (int k = 0; k < ambient; ++k) {
            const double jkm = J[k * dim + mu];
            if (jkm != 0.0) D[mu] = D[mu] + a.lin[k].scaled(jkm);
        }
}

/// -(1/2 pi i) tr(P [D0, D1]); the imaginary remainder is reported.
inline double c1_density(const GradedMatrix<Cplx>& P, const GradedMatrix<Cplx>& D0,
                         const GradedMatrix<Cplx>& D1, bool super, double* imag_out = nullptr) {
    const GradedMatrix<Cplx> F = P * (D0 * D1 - D1 * D0);
    const Cplx t = super ? F.supertrace() : F.trace();
    const Cplx v = t * Cplx(0.0, 1.0 / (2.0 * kPi));
    if (imag_out) *imag_out = std::max(*imag_out, std::abs(v.imag()));
    return v.real();
}

inline const std::array<std::pair<std::array<int, 4>, int>, 24>& s4_permutations() {
    static const auto perms = [] {
        std::array<std::pair<std::array<int, 4>, int>, 24> out{};
        std::array<int, 4> p{0, 1, 2, 3};
        int idx = 0;
        do {
            int inv = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (p[i] > p[j]) ++inv;
            out[idx++] = {p, (inv % 2) ? -1 : 1};
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }();
    return perms;
}

/// -(1/8 pi^2) tr_H tr(P (dp)^4) evaluated on the four chart tangents.
inline double c2_density(const GradedMatrix<Quaternion>& P,
                         const std::vector<GradedMatrix<Quaternion>>& D) {
    GradedMatrix<Quaternion> acc = P.scaled(0.0);
    // Group the 24 permutations through the 12 pairwise products.
    std::vector<GradedMatrix<Quaternion>> pair(16, acc);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (a != b) pair[a * 4 + b] = D[a] * D[b];
    for (const auto& [p, sgn] : s4_permutations()) {
        const GradedMatrix<Quaternion> prod = pair[p[0] * 4 + p[1]] * pair[p[2] * 4 + p[3]];
        acc = (sgn > 0) ? acc + prod : acc - prod;
    }
    const Quaternion t = (P * acc).trace();
    return -t.trace() / (8.0 * kPi * kPi);
}

// ---------------------------------------------------------------------------
// Charge computation: symbolic integration plus the independent pointwise
// quadrature path, with cross-residuals.
// ---------------------------------------------------------------------------

struct ChargeOptions {
    int s2_order = 32;
    int s4_order = 24;
    int grassmann_L = 2;
    std::uint64_t seed = 12345;
    int samples = 100;          // pointwise proportionality / identity samples
    double tolerance = 0.0;     // 0: per-case default
    int density_samples = 16;   // densities recorded in the report
};

/// Structured result of one verification run.
struct ChargeReport {
    BundleCase bundle_case = BundleCase::monopole;
    bool transposed = false;
    std::optional<double> c1, c2;
    std::map<std::string, double> residuals;
    std::string chart;
    int order = 0;
    double convergence_delta = 0.0;
    double tolerance = 0.0;
    bool converged = true;
    double wall_ms = 0.0;
    std::vector<double> density_samples;
};

namespace detail {

struct PointwiseOutcome {
    double value = 0.0;
    std::vector<double> samples;
};

template <class Density>
PointwiseOutcome pointwise_charge(const Chart& chart, int order, int keep_samples,
                                  Density&& density) {
    PointwiseOutcome out;
    int count = 0;
    for_each_quadrature_node(chart, order,
                             [&](const double* u, const double* x, const double* J, double w) {
                                 const double h = density(u, x, J);
                                 out.value += w * h;
                                 if (count < keep_samples) out.samples.push_back(h);
                                 ++count;
                             });
    return out;
}

inline double elapsed_ms(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace detail

/// Monopole charge c1 = -1 (p) or +1 (q).
inline ChargeReport compute_monopole_charge(bool transposed, const ChargeOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    ChargeReport rep;
    rep.bundle_case = BundleCase::monopole;
    rep.transposed = transposed;
    rep.tolerance = opt.tolerance > 0 ? opt.tolerance : 1e-8;
    rep.order = opt.s2_order;

    const S2System s = make_s2_system();
    const GradedForm<Cplx> c1 = monopole_chern_form(s, transposed);
    const double sg = transposed ? 1.0 : -1.0;
    const GradedForm<Cplx> expected = s2_volume_form(s).scaled(sg / (4.0 * kPi));
    rep.residuals["density_vs_volume_coeff"] = max_abs_diff(c1, expected);

    const Chart chart = s2_chart_polar();
    rep.chart = chart.name;
    const std::vector<VarId> xs(s.x.begin(), s.x.end()), dxs(s.dx.begin(), s.dx.end());
    const IntegralResult sym = integrate_form(c1, chart, xs, dxs, opt.s2_order);
    const IntegralResult sym_half = integrate_form(c1, chart, xs, dxs, std::max(2, opt.s2_order / 2));
    rep.residuals["imag_residual"] = sym.imag_residual;

    const auto aff = affine_parts(monopole_projector(s, transposed), xs);
    GradedMatrix<Cplx> P = aff.base;
    std::vector<GradedMatrix<Cplx>> D;
    double imag = 0.0;
    const auto point = detail::pointwise_charge(
        chart, opt.s2_order, opt.density_samples, [&](const double*, const double* x, const double* J) {
            eval_affine(aff, x, J, 2, P, D);
            return c1_density(P, D[0], D[1], false, &imag);
        });
    rep.residuals["pointwise_imag_residual"] = imag;
    rep.residuals["path_disagreement"] = std::abs(sym.value - point.value);
    rep.convergence_delta = std::abs(sym.value - sym_half.value);
    rep.converged = rep.convergence_delta < 1e3 * rep.tolerance;
    if (!rep.converged)
        throw NumericError("monopole charge quadrature did not converge; delta = " +
                           std::to_string(rep.convergence_delta));
    rep.c1 = sym.value;
    rep.density_samples = point.samples;
    rep.wall_ms = detail::elapsed_ms(t0);
    return rep;
}

/// Graded monopole charge via the body map (Berezin integral).
inline ChargeReport compute_graded_charge(bool transposed, const ChargeOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    ChargeReport rep;
    rep.bundle_case = BundleCase::graded;
    rep.transposed = transposed;
    rep.tolerance = opt.tolerance > 0 ? opt.tolerance : 1e-8;
    rep.order = opt.s2_order;

    const S22System s = make_s22_system();
    const GradedForm<Cplx> c1 = graded_chern_form(s, transposed);
    const GradedForm<Cplx> body = c1.body_project();
    const double sg = transposed ? 1.0 : -1.0;
    const GradedForm<Cplx> expected = s22_body_volume_form(s).scaled(sg / (4.0 * kPi));
    rep.residuals["body_vs_volume_coeff"] = max_abs_diff(body, expected);

    const Chart chart = s2_chart_polar();
    rep.chart = chart.name;
    const std::vector<VarId> xs(s.x.begin(), s.x.end()), dxs(s.dx.begin(), s.dx.end());
    const IntegralResult sym = integrate_form(body, chart, xs, dxs, opt.s2_order);
    const IntegralResult sym_half =
        integrate_form(body, chart, xs, dxs, std::max(2, opt.s2_order / 2));
    rep.residuals["imag_residual"] = sym.imag_residual;

    const auto aff = affine_parts(graded_projector(s, transposed).body_project(), xs);
    GradedMatrix<Cplx> P = aff.base;
    std::vector<GradedMatrix<Cplx>> D;
    double imag = 0.0;
    const auto point = detail::pointwise_charge(
        chart, opt.s2_order, opt.density_samples, [&](const double*, const double* x, const double* J) {
            eval_affine(aff, x, J, 2, P, D);
            return c1_density(P, D[0], D[1], true, &imag);
        });
    rep.residuals["pointwise_imag_residual"] = imag;
    rep.residuals["path_disagreement"] = std::abs(sym.value - point.value);
    rep.convergence_delta = std::abs(sym.value - sym_half.value);
    rep.converged = rep.convergence_delta < 1e3 * rep.tolerance;
    if (!rep.converged)
        throw NumericError("graded charge quadrature did not converge; delta = " +
                           std::to_string(rep.convergence_delta));
    rep.c1 = sym.value;
    rep.density_samples = point.samples;
    rep.wall_ms = detail::elapsed_ms(t0);
    return rep;
}

/// Instanton charges: C1 vanishes identically, c2 = -1 (p) or +1 (q).
inline ChargeReport compute_instanton_charge(bool transposed, const ChargeOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    ChargeReport rep;
    rep.bundle_case = BundleCase::instanton;
    rep.transposed = transposed;
    rep.tolerance = opt.tolerance > 0 ? opt.tolerance : 1e-6;
    rep.order = opt.s4_order;

    const S4System s = make_s4_system();
    const GradedForm<Cplx> c1 = instanton_c1_form(s, transposed);
    rep.residuals["c1_symbolic_max_coeff"] = c1.max_abs();

    const GradedForm<Cplx> c2 = instanton_c2_form(s, transposed, true);
    const GradedForm<Cplx> c2_direct = instanton_c2_form(s, transposed, false);
    rep.residuals["c2_two_formulas"] = max_abs_diff(c2, c2_direct);

    const Chart chart = s4_chart_hyperspherical();
    rep.chart = chart.name;
    const std::vector<VarId> xs(s.x.begin(), s.x.end()), dxs(s.dx.begin(), s.dx.end());

    // Pointwise proportionality against the volume form at sample nodes, and
    // the pointwise C1 density bound, at a coarse sample grid.
    {
        const GradedForm<Cplx> vol = s4_volume_form(s);
        const double want = (transposed ? 3.0 : -3.0) / (8.0 * kPi * kPi);
        double prop_resid = 0.0, c1_pointwise = 0.0;
        int seen = 0;
        const int sample_order = std::max(3, static_cast<int>(std::round(
                                                  std::pow(opt.samples, 0.25)))) + 1;
        for_each_quadrature_node(chart, sample_order,
                                 [&](const double*, const double* x, const double* J, double) {
                                     if (seen >= opt.samples) return;
                                     ++seen;
                                     std::vector<double> xv(s.space->size(), 0.0);
                                     for (int k = 0; k < 5; ++k) xv[s.x[k]] = x[k];
                                     std::map<VarId, int> rows;
                                     for (int k = 0; k < 5; ++k) rows[s.dx[k]] = k;
                                     std::vector<std::vector<double>> tangents(4);
                                     for (int mu = 0; mu < 4; ++mu) {
                                         tangents[mu].resize(5);
                                         for (int k = 0; k < 5; ++k)
                                             tangents[mu][k] = J[k * 4 + mu];
                                     }
                                     const Cplx c2v = eval_on_tangents(c2, xv, rows, tangents);
                                     const Cplx volv = eval_on_tangents(vol, xv, rows, tangents);
                                     prop_resid = std::max(prop_resid,
                                                           std::abs(c2v - want * volv));
                                     const Cplx c1v = eval_on_tangents(c1, xv, rows, tangents);
                                     c1_pointwise = std::max(c1_pointwise, std::abs(c1v));
                                 });
        rep.residuals["c2_vs_volume_pointwise"] = prop_resid;
        rep.residuals["c1_pointwise_max"] = c1_pointwise;
    }

    const IntegralResult sym = integrate_form(c2, chart, xs, dxs, opt.s4_order);
    const IntegralResult sym_half = integrate_form(c2, chart, xs, dxs, std::max(2, opt.s4_order / 2));
    rep.residuals["imag_residual"] = sym.imag_residual;

    const auto aff = affine_parts(instanton_projector(s, transposed), xs);
    GradedMatrix<Quaternion> P = aff.base;
    std::vector<GradedMatrix<Quaternion>> D;
    const auto point = detail::pointwise_charge(
        chart, opt.s4_order, opt.density_samples, [&](const double*, const double* x, const double* J) {
            eval_affine(aff, x, J, 4, P, D);
            return c2_density(P, D);
        });
    rep.residuals["path_disagreement"] = std::abs(sym.value - point.value);
    rep.convergence_delta = std::abs(sym.value - sym_half.value);
    rep.converged = rep.convergence_delta < 1e3 * rep.tolerance;
    if (!rep.converged)
        throw NumericError("instanton charge quadrature did not converge; delta = " +
                           std::to_string(rep.convergence_delta));
    rep.c1 = 0.0;
    rep.c2 = sym.value;
    rep.density_samples = point.samples;
    rep.wall_ms = detail::elapsed_ms(t0);
    return rep;
}

inline ChargeReport compute_charge(BundleCase c, bool transposed, const ChargeOptions& opt) {
    switch (c) {
        case BundleCase::monopole: return compute_monopole_charge(transposed, opt);
        case BundleCase::graded: return compute_graded_charge(transposed, opt);
        case BundleCase::instanton: return compute_instanton_charge(transposed, opt);
    }
    throw std::domain_error("compute_charge: unknown case");
}

/// Both projectors of one case. Distinct charges witness that p and its
/// transpose are inequivalent bundles.
struct ChargePair {
    ChargeReport p, q;
    bool inequivalent = false;
};

inline ChargePair compute_charge_pair(BundleCase c, const ChargeOptions& opt) {
    ChargePair pair{compute_charge(c, false, opt), compute_charge(c, true, opt)};
    const double cp = (c == BundleCase::instanton) ? *pair.p.c2 : *pair.p.c1;
    const double cq = (c == BundleCase::instanton) ? *pair.q.c2 : *pair.q.c1;
    pair.inequivalent = std::abs(cp - cq) > 0.5;
    return pair;
}

}  // namespace hopfchern
