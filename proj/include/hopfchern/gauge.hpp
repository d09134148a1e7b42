#pragma once

#include "hopfchern/chern.hpp"

namespace hopfchern {

template <class R>
double unitarity_residual(const GradedMatrix<R>& s) {
    const auto I = GradedMatrix<R>::identity(s.row_parities(), s.zero_element());
    return std::max(max_abs_diff(s.dagger() * s, I), max_abs_diff(s * s.dagger(), I));
}

// ---------------------------------------------------------------------------
// Unitary (SU-type) transforms: p^s = s p s^dag, partial isometry v = s p,
// and the invariance of the connection 1-form.
// ---------------------------------------------------------------------------

struct SuTransformReport {
    double connection_residual = 0.0;
    double vvdag_residual = 0.0;
    double vdagv_residual = 0.0;
};

namespace detail {

template <class R, class Scalar>
void su_checks(SuTransformReport& r, const GradedMatrix<R>& s, const GradedMatrix<R>& ket,
               const GradedMatrix<R>& dket, const Scalar&) {
    const auto P = ket * ket.dagger();
    const auto Ps = s * P * s.dagger();
    const auto v = s * P;
    r.vvdag_residual = std::max(r.vvdag_residual, max_abs_diff(v * v.dagger(), Ps));
    r.vdagv_residual = std::max(r.vdagv_residual, max_abs_diff(v.dagger() * v, P));
    const R A = (ket.dagger() * dket).at(0, 0);
    const auto kets = s * ket;
    const auto dkets = s * dket;
    const R As = (kets.dagger() * dkets).at(0, 0);
    r.connection_residual =
        std::max(r.connection_residual, RingOps<R>::max_abs(As - A));
}

}  // namespace detail

inline SuTransformReport su_transform_monopole(const GradedMatrix<Cplx>& s, int nsamples,
                                               std::uint64_t seed) {
    if (unitarity_residual(s) > 1e-10)
        throw std::domain_error("su_transform: group element is not unitary");
    Rng rng(seed);
    SuTransformReport r;
    for (int i = 0; i < nsamples; ++i) {
        const MonopolePoint t = sample_monopole(rng);
        const auto ket = standard_ket(t);
        const MonopoleTangent tan = random_tangent(rng, t);
        auto dket = GradedMatrix<Cplx>::plain(2, 1);
        dket.at(0, 0) = tan.da;
        dket.at(1, 0) = tan.db;
        detail::su_checks(r, s, ket, dket, Cplx{});
    }
    return r;
}

inline SuTransformReport su_transform_instanton(const GradedMatrix<Quaternion>& s, int nsamples,
                                                std::uint64_t seed) {
    if (unitarity_residual(s) > 1e-10)
        throw std::domain_error("su_transform: group element is not unitary");
    Rng rng(seed);
    SuTransformReport r;
    for (int i = 0; i < nsamples; ++i) {
        const InstantonPoint t = sample_instanton(rng);
        const auto ket = standard_ket(t);
        const InstantonTangent tan = random_tangent(rng, t);
        auto dket = GradedMatrix<Quaternion>::plain(2, 1);
        dket.at(0, 0) = tan.da;
        dket.at(1, 0) = tan.db;
        detail::su_checks(r, s, ket, dket, Quaternion{});
    }
    return r;
}

inline SuTransformReport su_transform_graded(const UospElement& s, int nsamples,
                                             std::uint64_t seed) {
    const int L = s.a.generators();
    if (unitarity_residual(s.matrix) > 1e-10)
        throw std::domain_error("su_transform: group element is not unitary");
    Rng rng(seed);
    SuTransformReport r;
    for (int i = 0; i < nsamples; ++i) {
        const GradedPoint t = sample_graded(rng, L);
        const GMat ket = standard_ket(t);
        const GradedTangent tan = random_tangent(rng, t);
        const GrassmannNumber one = GrassmannNumber::scalar(1.0, L);
        const GrassmannNumber etao = t.eta.involution();
        const GrassmannNumber f8 = one - t.eta * etao * 0.125;
        const GrassmannNumber df8 = (tan.deta * etao + t.eta * tan.deta.involution()) * (-0.125);
        GMat dket(uosp_signature(), {0}, GrassmannNumber(L));
        dket.at(0, 0) = tan.deta * (-0.5);
        dket.at(1, 0) = tan.da * f8 + t.a * df8;
        dket.at(2, 0) = tan.db * f8 + t.b * df8;
        detail::su_checks(r, s.matrix, ket, dket, GrassmannNumber(L));
    }
    return r;
}

// ---------------------------------------------------------------------------
// GL transforms: |psi^g> = g|psi> / <psi|g^dag g|psi>^{1/2}, the partial
// isometry, the transformed connection, and charge preservation.
// ---------------------------------------------------------------------------

struct GlTransformReport {
    double ket_norm_residual = 0.0;
    double vvdag_residual = 0.0;
    double vdagv_residual = 0.0;
    double transformed_connection_residual = 0.0;
    double charge = 0.0;
    double convergence_delta = 0.0;
    int order = 0;
};

/// Pointwise checks at one sample: transformed ket normalization, partial
/// isometry, and the transformed connection evaluated two ways. Throws
/// SingularMatrixError when <psi|g^dag g|psi> has non-positive body.
template <class R>
void gl_transform_checks_at(GlTransformReport& r, const GradedMatrix<R>& g,
                            const GradedMatrix<R>& ket, const GradedMatrix<R>& dket) {
    const auto M = g.dagger() * g;
    const R n = (ket.dagger() * M * ket).at(0, 0);
    if (!(RingOps<R>::real_part(n) > 0.0))
        throw SingularMatrixError("gl_transform: normalization factor not positive");
    const R rn = RingOps<R>::sqrt_positive(n);
    const R rn_inv = RingOps<R>::inverse(rn);
    const R n_inv = RingOps<R>::inverse(n);

    const auto ketg = (g * ket).left_scaled(rn_inv);
    const auto one = RingOps<R>::one_like(n);
    r.ket_norm_residual = std::max(
        r.ket_norm_residual, RingOps<R>::max_abs((ketg.dagger() * ketg).at(0, 0) - one));

    const auto P = ket * ket.dagger();
    const auto Pg = ketg * ketg.dagger();
    const auto v = (g * P).left_scaled(rn_inv);
    r.vvdag_residual = std::max(r.vvdag_residual, max_abs_diff(v * v.dagger(), Pg));
    r.vdagv_residual = std::max(r.vdagv_residual, max_abs_diff(v.dagger() * v, P));

    // d(psi^g) along the tangent, with dn = <dpsi|M|psi> + <psi|M|dpsi>.
    const R dn = (dket.dagger() * M * ket).at(0, 0) + (ket.dagger() * M * dket).at(0, 0);
    const R half_dn_n = RingOps<R>::scale(dn * n_inv, 0.5);
    const auto dketg =
        (g * dket).left_scaled(rn_inv) - (g * ket).left_scaled(half_dn_n * rn_inv);
    const R A_direct = (ketg.dagger() * dketg).at(0, 0);
    const R A_formula = RingOps<R>::scale(
        ((ket.dagger() * M * dket).at(0, 0) - (dket.dagger() * M * ket).at(0, 0)) * n_inv, 0.5);
    r.transformed_connection_residual =
        std::max(r.transformed_connection_residual, RingOps<R>::max_abs(A_direct - A_formula));
}

namespace detail {

/// Transformed charge of an affine projector field: pointwise quadrature of
/// the density built from P^g = g P g^dag / n, n = Re tr(g^dag g P).
template <class R, class Density>
double gl_charge(const AffineMatrix<R>& aff, const GradedMatrix<R>& g, const Chart& chart,
                 int order, int dim, Density&& density) {
    const auto M = g.dagger() * g;
    const auto gd = g.dagger();
    double acc = 0.0;
    GradedMatrix<R> P = aff.base;
    std::vector<GradedMatrix<R>> D;
    for_each_quadrature_node(
        chart, order, [&](const double*, const double* x, const double* J, double w) {
            eval_affine(aff, x, J, dim, P, D);
            const double n = RingOps<R>::real_part((M * P).trace());
            const auto gPg = g * P * gd;
            GradedMatrix<R> Pg = gPg.scaled(1.0 / n);
            std::vector<GradedMatrix<R>> Dg;
            Dg.reserve(dim);
            for (int mu = 0; mu < dim; ++mu) {
                const double dn = RingOps<R>::real_part((M * D[mu]).trace());
                Dg.push_back((g * D[mu] * gd).scaled(1.0 / n) - gPg.scaled(dn / (n * n)));
            }
            acc += w * density(Pg, Dg);
        });
    return acc;
}

}  // namespace detail

inline GlTransformReport gl_transform_monopole(const GradedMatrix<Cplx>& g,
                                               const ChargeOptions& opt) {
    GlTransformReport r;
    Rng rng(opt.seed);
    for (int i = 0; i < std::max(1, opt.samples); ++i) {
        const MonopolePoint t = sample_monopole(rng);
        const auto ket = standard_ket(t);
        const MonopoleTangent tan = random_tangent(rng, t);
        auto dket = GradedMatrix<Cplx>::plain(2, 1);
        dket.at(0, 0) = tan.da;
        dket.at(1, 0) = tan.db;
        gl_transform_checks_at(r, g, ket, dket);
    }
    const S2System s = make_s2_system();
    const std::vector<VarId> xs(s.x.begin(), s.x.end());
    const auto aff = affine_parts(monopole_projector(s, false), xs);
    const Chart chart = s2_chart_polar();
    auto density = [](const GradedMatrix<Cplx>& P, const std::vector<GradedMatrix<Cplx>>& D) {
        return c1_density(P, D[0], D[1], false);
    };
    r.order = opt.s2_order;
    r.charge = detail::gl_charge(aff, g, chart, opt.s2_order, 2, density);
    const double coarse = detail::gl_charge(aff, g, chart, std::max(2, opt.s2_order / 2), 2, density);
    r.convergence_delta = std::abs(r.charge - coarse);
    return r;
}

inline GlTransformReport gl_transform_instanton(const GradedMatrix<Quaternion>& g,
                                                const ChargeOptions& opt) {
    GlTransformReport r;
    Rng rng(opt.seed);
    for (int i = 0; i < std::max(1, opt.samples); ++i) {
        const InstantonPoint t = sample_instanton(rng);
        const auto ket = standard_ket(t);
        const InstantonTangent tan = random_tangent(rng, t);
        auto dket = GradedMatrix<Quaternion>::plain(2, 1);
        dket.at(0, 0) = tan.da;
        dket.at(1, 0) = tan.db;
        gl_transform_checks_at(r, g, ket, dket);
    }
    const S4System s = make_s4_system();
    const std::vector<VarId> xs(s.x.begin(), s.x.end());
    const auto aff = affine_parts(instanton_projector(s, false), xs);
    const Chart chart = s4_chart_hyperspherical();
    auto density = [](const GradedMatrix<Quaternion>& P,
                      const std::vector<GradedMatrix<Quaternion>>& D) {
        return c2_density(P, D);
    };
    r.order = opt.s4_order;
    r.charge = detail::gl_charge(aff, g, chart, opt.s4_order, 4, density);
    const double coarse =
        detail::gl_charge(aff, g, chart, std::max(2, opt.s4_order * 2 / 3), 4, density);
    r.convergence_delta = std::abs(r.charge - coarse);
    return r;
}

/// Extracts the body of a Grassmann supermatrix (odd entries drop out).
inline GradedMatrix<Cplx> body_matrix(const GMat& m) {
    GradedMatrix<Cplx> out(m.row_parities(), m.col_parities());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j).body();
    return out;
}

/// GL(1,2) transform of the graded monopole. The pointwise checks run in the
/// full Grassmann arithmetic; the transformed charge goes through the body
/// map, where only the body of g acts.
inline GlTransformReport gl_transform_graded(const GMat& g, const ChargeOptions& opt) {
    GlTransformReport r;
    const int L = g.zero_element().generators();
    Rng rng(opt.seed);
    for (int i = 0; i < std::max(1, opt.samples); ++i) {
        const GradedPoint t = sample_graded(rng, L);
        const GMat ket = standard_ket(t);
        const GradedTangent tan = random_tangent(rng, t);
        const GrassmannNumber one = GrassmannNumber::scalar(1.0, L);
        const GrassmannNumber etao = t.eta.involution();
        const GrassmannNumber f8 = one - t.eta * etao * 0.125;
        const GrassmannNumber df8 = (tan.deta * etao + t.eta * tan.deta.involution()) * (-0.125);
        GMat dket(uosp_signature(), {0}, GrassmannNumber(L));
        dket.at(0, 0) = tan.deta * (-0.5);
        dket.at(1, 0) = tan.da * f8 + t.a * df8;
        dket.at(2, 0) = tan.db * f8 + t.b * df8;
        gl_transform_checks_at(r, g, ket, dket);
    }
    const S22System s = make_s22_system();
    const std::vector<VarId> xs(s.x.begin(), s.x.end());
    const auto aff = affine_parts(graded_projector(s, false).body_project(), xs);
    const Chart chart = s2_chart_polar();
    auto density = [](const GradedMatrix<Cplx>& P, const std::vector<GradedMatrix<Cplx>>& D) {
        return c1_density(P, D[0], D[1], true);
    };
    r.order = opt.s2_order;
    const auto gb = body_matrix(g);
    r.charge = detail::gl_charge(aff, gb, chart, opt.s2_order, 2, density);
    const double coarse = detail::gl_charge(aff, gb, chart, std::max(2, opt.s2_order / 2), 2, density);
    r.convergence_delta = std::abs(r.charge - coarse);
    return r;
}

/// Representative of an SL(2,H)/Sp(2) coset: scale lambda > 0 and center
/// c in H, acting as the conformal dilation-translation of HP^1.
inline GradedMatrix<Quaternion> instanton_family(double lambda, const Quaternion& c) {
    if (!(lambda > 0.0)) throw std::domain_error("instanton_family: scale must be positive");
    const double rl = std::sqrt(lambda);
    auto g = GradedMatrix<Quaternion>::plain(2, 2);
    g.at(0, 0) = Quaternion(rl);
    g.at(0, 1) = c * (1.0 / rl);
    g.at(1, 1) = Quaternion(1.0 / rl);
    return g;
}

inline GradedMatrix<Quaternion> instanton_family(const std::array<double, 5>& params) {
    return instanton_family(params[0],
                            Quaternion(params[1], params[2], params[3], params[4]));
}

}  // namespace hopfchern
