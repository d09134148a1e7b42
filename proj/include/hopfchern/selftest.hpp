#pragma once

#include <string>
#include <vector>

#include "hopfchern/gauge.hpp"

namespace hopfchern {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

inline CheckResult make_check(std::string name, double residual, double threshold) {
    CheckResult c{std::move(name), residual, threshold, residual <= threshold};
    return c;
}

// ---------------------------------------------------------------------------
// Ring axioms
// ---------------------------------------------------------------------------

inline GrassmannNumber random_grassmann(Rng& rng, int L, int max_terms = 4) {
    GrassmannNumber g(L);
    const int n = 1 + static_cast<int>(rng.uniform() * max_terms);
    for (int i = 0; i < n; ++i) {
        const std::uint32_t mask =
            static_cast<std::uint32_t>(rng.uniform() * (1u << L)) & ((1u << L) - 1);
        g.set_coefficient(mask, g.coefficient(mask) + rng.normal_complex());
    }
    return g;
}

inline std::vector<CheckResult> check_ring_axioms(int L, std::uint64_t seed, int trials = 200) {
    Rng rng(seed);
    double assoc_c = 0, assoc_q = 0, assoc_g = 0, dist_g = 0, body_mul = 0, tr_cyc = 0;
    for (int i = 0; i < trials; ++i) {
        const Cplx a = rng.normal_complex(), b = rng.normal_complex(), c = rng.normal_complex();
        assoc_c = std::max(assoc_c, std::abs((a * b) * c - a * (b * c)));
        auto rq = [&] { return Quaternion{rng.normal(), rng.normal(), rng.normal(), rng.normal()}; };
        const Quaternion qa = rq(), qb = rq(), qc = rq();
        assoc_q = std::max(assoc_q, ((qa * qb) * qc - qa * (qb * qc)).max_abs());
        tr_cyc = std::max(tr_cyc, std::abs((qa * qb).trace() - (qb * qa).trace()));
        const GrassmannNumber ga = random_grassmann(rng, L), gb = random_grassmann(rng, L),
                              gc = random_grassmann(rng, L);
        assoc_g = std::max(assoc_g, max_abs_diff((ga * gb) * gc, ga * (gb * gc)));
        dist_g = std::max(dist_g, max_abs_diff(ga * (gb + gc), ga * gb + ga * gc));
        body_mul = std::max(body_mul, std::abs((ga * gb).body() - ga.body() * gb.body()));
    }
    return {make_check("ring/complex_associativity", assoc_c, 1e-14),
            make_check("ring/quaternion_associativity", assoc_q, 1e-12),
            make_check("ring/grassmann_associativity", assoc_g, 1e-12),
            make_check("ring/grassmann_distributivity", dist_g, 1e-12),
            make_check("ring/grassmann_body_multiplicative", body_mul, 1e-12),
            make_check("ring/quaternion_trace_cyclic", tr_cyc, 1e-12)};
}

inline std::vector<CheckResult> check_involution_axioms(int L, std::uint64_t seed) {
    Rng rng(seed);
    double dbl = 0, hom = 0, antilinear = 0;
    const std::uint32_t n_masks = 1u << L;
    for (std::uint32_t m = 0; m < n_masks; ++m) {
        GrassmannNumber x(L);
        x.set_coefficient(m, 1.0);
        const int par = x.parity();
        const GrassmannNumber xoo = x.involution().involution();
        dbl = std::max(dbl, max_abs_diff(xoo, par ? -x : x));
        const Cplx c = rng.normal_complex();
        antilinear =
            std::max(antilinear, max_abs_diff((x * c).involution(), x.involution() * std::conj(c)));
    }
    const int pair_trials = (L <= 4) ? 0 : 2000;
    if (pair_trials == 0) {
        for (std::uint32_t m1 = 0; m1 < n_masks; ++m1)
            for (std::uint32_t m2 = 0; m2 < n_masks; ++m2) {
                GrassmannNumber x(L), y(L);
                x.set_coefficient(m1, 1.0);
                y.set_coefficient(m2, 1.0);
                hom = std::max(hom, max_abs_diff((x * y).involution(),
                                                 x.involution() * y.involution()));
            }
    } else {
        for (int i = 0; i < pair_trials; ++i) {
            const GrassmannNumber x = random_grassmann(rng, L), y = random_grassmann(rng, L);
            hom = std::max(hom,
                           max_abs_diff((x * y).involution(), x.involution() * y.involution()));
        }
    }
    return {make_check("involution/double", dbl, 1e-14),
            make_check("involution/homomorphism", hom, 1e-12),
            make_check("involution/antilinear", antilinear, 1e-14)};
}

// ---------------------------------------------------------------------------
// Exterior engine properties
// ---------------------------------------------------------------------------

inline GradedForm<Cplx> random_form(Rng& rng, const S22System& s, int terms = 4,
                                    int max_len = 3) {
    std::vector<VarId> pool = {s.x[0], s.x[1],  s.x[2],  s.xi_m,  s.xi_p,
                               s.dx[0], s.dx[1], s.dx[2], s.dxi_m, s.dxi_p};
    GradedForm<Cplx> f(s.space);
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        const int len = static_cast<int>(rng.uniform() * (max_len + 1));
        for (int i = 0; i < len; ++i)
            m.push_back(pool[static_cast<std::size_t>(rng.uniform() * pool.size())]);
        f.add_term(std::move(m), rng.normal_complex());
    }
    return f;
}

/// Degree-homogeneous random form (needed for the graded Leibniz rule).
inline GradedForm<Cplx> random_form_homogeneous(Rng& rng, const S22System& s, int degree,
                                                int terms = 3) {
    std::vector<VarId> deg0 = {s.x[0], s.x[1], s.x[2], s.xi_m, s.xi_p};
    std::vector<VarId> deg1 = {s.dx[0], s.dx[1], s.dx[2], s.dxi_m, s.dxi_p};
    GradedForm<Cplx> f(s.space);
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        for (int i = 0; i < degree; ++i)
            m.push_back(deg1[static_cast<std::size_t>(rng.uniform() * deg1.size())]);
        const int extra = static_cast<int>(rng.uniform() * 3);
        for (int i = 0; i < extra; ++i)
            m.push_back(deg0[static_cast<std::size_t>(rng.uniform() * deg0.size())]);
        f.add_term(std::move(m), rng.normal_complex());
    }
    return f;
}

inline std::vector<CheckResult> check_exterior_engine(std::uint64_t seed, int trials = 500) {
    Rng rng(seed);
    const S22System s = make_s22_system();
    double dd = 0, leibniz = 0, assoc = 0;
    for (int i = 0; i < trials; ++i) {
        const GradedForm<Cplx> f = random_form(rng, s);
        dd = std::max(dd, f.d().d().max_abs());
        const int dega = static_cast<int>(rng.uniform() * 3);
        const GradedForm<Cplx> a = random_form_homogeneous(rng, s, dega);
        const GradedForm<Cplx> b = random_form(rng, s);
        const GradedForm<Cplx> lhs = (a * b).d();
        GradedForm<Cplx> rhs = a.d() * b;
        rhs = (dega % 2) ? rhs - a * b.d() : rhs + a * b.d();
        leibniz = std::max(leibniz, max_abs_diff(lhs, rhs));
    }
    for (int i = 0; i < 40; ++i) {
        auto rm = [&](int r, int c) {
            FormMatrix<Cplx> m = FormMatrix<Cplx>::plain(s.space, r, c);
            for (int ii = 0; ii < r; ++ii)
                for (int jj = 0; jj < c; ++jj) m.at(ii, jj) = random_form(rng, s, 2, 2);
            return m;
        };
        const auto A = rm(2, 2), B = rm(2, 2), C = rm(2, 2);
        assoc = std::max(assoc, max_abs_diff((A * B) * C, A * (B * C)));
    }
    return {make_check("forms/d_squared_zero", dd, 1e-13),
            make_check("forms/graded_leibniz", leibniz, 1e-13),
            make_check("forms/wedge_associativity", assoc, 1e-12)};
}

// ---------------------------------------------------------------------------
// Supergroup suite
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> check_supergroup(int L, std::uint64_t seed, int trials = 100) {
    Rng rng(seed);
    double unit = 0, sdet = 0, closed = 0, u1 = 0;
    const GMat id = GradedMatrix<GrassmannNumber>::identity(uosp_signature(), GrassmannNumber(L));
    const GrassmannNumber one = GrassmannNumber::scalar(1.0, L);
    for (int i = 0; i < trials; ++i) {
        const UospElement s = uosp_random(rng, L);
        unit = std::max(unit, std::max(max_abs_diff(s.matrix.dagger() * s.matrix, id),
                                       max_abs_diff(s.matrix * s.matrix.dagger(), id)));
        sdet = std::max(sdet, max_abs_diff(s.matrix.superdeterminant(), one));
        // One-parameter product vs the closed form: u(a0) u(a1) u(a2) xi(eta)
        // with the induced even parameters read from the complex SU(2) factor.
        const double a0 = rng.uniform(-3, 3), a1 = rng.uniform(-3, 3), a2 = rng.uniform(-3, 3);
        const GrassmannNumber eta = GrassmannNumber::generator(0, L) * rng.normal_complex() +
                                    GrassmannNumber::generator(1, L) * rng.normal_complex();
        auto sc = [L](double v) { return GrassmannNumber::scalar(v, L); };
        const GrassmannNumber z(L);
        const GMat prod = uosp_algebra_element(sc(a0), z, z, GrassmannNumber(L)).exponential() *
                          uosp_algebra_element(z, sc(a1), z, GrassmannNumber(L)).exponential() *
                          uosp_algebra_element(z, z, sc(a2), GrassmannNumber(L)).exponential() *
                          uosp_algebra_element(z, z, z, eta).exponential();
        // Independent complex-2x2 oracle for the even part.
        const Cplx I(0.0, 1.0);
        auto su2 = [&](int k, double ang) {
            std::array<std::array<Cplx, 2>, 2> m{};
            const double cs = std::cos(0.5 * ang), sn = std::sin(0.5 * ang);
            if (k == 0) {
                m = {{{cs + I * sn, 0.0}, {0.0, cs - I * sn}}};
            } else if (k == 1) {
                m = {{{cs, I * sn}, {I * sn, cs}}};
            } else {
                m = {{{cs, sn}, {-sn, cs}}};
            }
            return m;
        };
        auto mul2 = [](const auto& A, const auto& B) {
            std::array<std::array<Cplx, 2>, 2> C{};
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    C[r][c] = A[r][0] * B[0][c] + A[r][1] * B[1][c];
            return C;
        };
        const auto U = mul2(mul2(su2(0, a0), su2(1, a1)), su2(2, a2));
        const UospElement cf = uosp_element(GrassmannNumber::scalar(U[0][0], L),
                                            GrassmannNumber::scalar(U[1][0], L), eta);
        closed = std::max(closed, max_abs_diff(prod, cf.matrix));
        // U(1) action keeps the superdeterminant.
        const SuperU1Element w = super_u1_element(
            GrassmannNumber::scalar(rng.uniform(-3, 3), L) +
            GrassmannNumber::generator(0, L) * GrassmannNumber::generator(1, L) *
                rng.uniform(-0.5, 0.5));
        const UospElement sw = super_u1_act(uosp_random(rng, L), w);
        u1 = std::max(u1, max_abs_diff(sw.a * sw.a.involution() + sw.b * sw.b.involution(), one));
    }
    // Symbolic adjoint against the worked matrix.
    const UospSymbols u = make_uosp_symbols();
    const double adj = max_abs_diff(symbolic_dagger(uosp_group_matrix(u), u.involution),
                                    uosp_group_adjoint_printed(u));
    return {make_check("supergroup/unitarity", unit, 1e-12),
            make_check("supergroup/superdeterminant", sdet, 1e-12),
            make_check("supergroup/one_parameter_product", closed, 1e-10),
            make_check("supergroup/u1_action_sdet", u1, 1e-12),
            make_check("supergroup/adjoint_symbolic", adj, 0.0)};
}

// ---------------------------------------------------------------------------
// Quadrature suite
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> check_quadrature(int s2_order, int s4_order) {
    const S2System s2 = make_s2_system();
    const std::vector<VarId> xs(s2.x.begin(), s2.x.end()), dxs(s2.dx.begin(), s2.dx.end());
    const GradedForm<Cplx> vol2 = s2_volume_form(s2);
    const Chart a = s2_chart_polar(), b = s2_chart_cyclic();
    const double va = integrate_form(vol2, a, xs, dxs, s2_order).value;
    const double vb = integrate_form(vol2, b, xs, dxs, s2_order).value;
    GradedForm<Cplx> x0sq_vol(s2.space);
    for (const auto& [m, c] : vol2.terms()) {
        Monomial mm = m;
        mm.push_back(s2.x[0]);
        mm.push_back(s2.x[0]);
        x0sq_vol.add_term(mm, c);
    }
    const double moment = integrate_form(x0sq_vol, a, xs, dxs, s2_order).value;

    const S4System s4 = make_s4_system();
    const std::vector<VarId> xs4(s4.x.begin(), s4.x.end()), dxs4(s4.dx.begin(), s4.dx.end());
    const Chart c4 = s4_chart_hyperspherical();
    const double v4 = integrate_form(s4_volume_form(s4), c4, xs4, dxs4, s4_order).value;

    return {make_check("quadrature/vol_s2", std::abs(va - 4.0 * kPi), 1e-9),
            make_check("quadrature/vol_s4", std::abs(v4 - 8.0 * kPi * kPi / 3.0), 1e-7),
            make_check("quadrature/chart_independence", std::abs(va - vb), 1e-8),
            make_check("quadrature/x0sq_moment", std::abs(moment - 4.0 * kPi / 3.0), 1e-8)};
}

// ---------------------------------------------------------------------------
// Projector and connection suites (shared by verify and the acceptance gate)
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> check_projector_identities(BundleCase c, bool transposed, int L,
                                                           std::uint64_t seed, int npoints) {
    Rng rng(seed);
    double idem = 0, dag = 0, tr1 = 0, inv = 0, construct = 0;
    const std::string tag = std::string(to_string(c)) + (transposed ? "_q" : "_p");
    if (c == BundleCase::monopole) {
        const S2System s = make_s2_system();
        const FormMatrix<Cplx> psym = monopole_projector(s, transposed);
        for (int i = 0; i < npoints; ++i) {
            const MonopolePoint t = sample_monopole(rng);
            const auto x = hopf_project(t);
            std::vector<Cplx> vals(s.space->size(), 0.0);
            for (int k = 0; k < 3; ++k) vals[s.x[k]] = x[k];
            auto P = GradedMatrix<Cplx>::plain(2, 2);
            for (int r = 0; r < 2; ++r)
                for (int cc = 0; cc < 2; ++cc) P.at(r, cc) = eval_complex(psym.at(r, cc), vals);
            idem = std::max(idem, max_abs_diff(P * P, P));
            dag = std::max(dag, max_abs_diff(P.dagger(), P));
            tr1 = std::max(tr1, std::abs(P.trace() - Cplx(1.0)));
            const auto ket = transposed ? standard_ket(MonopolePoint{std::conj(t.a), std::conj(t.b)})
                                        : standard_ket(t);
            construct = std::max(construct, max_abs_diff(ket * ket.dagger(), P));
            const Cplx w = std::exp(Cplx(0.0, rng.uniform(0.0, 2.0 * kPi)));
            const auto ket2 = transposed
                                  ? standard_ket(MonopolePoint{std::conj(t.a * w), std::conj(t.b * w)})
                                  : standard_ket(right_action(t, w));
            inv = std::max(inv, max_abs_diff(ket2 * ket2.dagger(), P));
        }
    } else if (c == BundleCase::instanton) {
        const S4System s = make_s4_system();
        const FormMatrix<Quaternion> psym = instanton_projector(s, transposed);
        for (int i = 0; i < npoints; ++i) {
            const InstantonPoint t = sample_instanton(rng);
            const auto x = hopf_project(t);
            std::vector<double> vals(s.space->size(), 0.0);
            for (int k = 0; k < 5; ++k) vals[s.x[k]] = x[k];
            auto P = GradedMatrix<Quaternion>::plain(2, 2);
            for (int r = 0; r < 2; ++r)
                for (int cc = 0; cc < 2; ++cc) P.at(r, cc) = eval_quaternion(psym.at(r, cc), vals);
            idem = std::max(idem, max_abs_diff(P * P, P));
            dag = std::max(dag, max_abs_diff(P.dagger(), P));
            tr1 = std::max(tr1, (P.trace() - Quaternion::one()).max_abs());
            if (!transposed) {
                const auto ket = standard_ket(t);
                construct = std::max(construct, max_abs_diff(ket * ket.dagger(), P));
                Quaternion w{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
                w = w * (1.0 / w.norm());
                const auto ket2 = standard_ket(right_action(t, w));
                inv = std::max(inv, max_abs_diff(ket2 * ket2.dagger(), P));
            } else {
                const auto Q = transposed_right_ket_projector(t);
                construct = std::max(construct, max_abs_diff(Q, P));
                Quaternion w{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
                w = w * (1.0 / w.norm());
                const auto Q2 = transposed_right_ket_projector(right_action(t, w));
                inv = std::max(inv, max_abs_diff(Q2, P));
            }
        }
    } else {
        const S22System s = make_s22_system();
        const FormMatrix<Cplx> psym = graded_projector(s, transposed);
        for (int i = 0; i < npoints; ++i) {
            const GradedPoint t = sample_graded(rng, L);
            const GradedBase base = hopf_project(t);
            std::vector<GrassmannNumber> vals(s.space->size(), GrassmannNumber(L));
            for (int k = 0; k < 3; ++k) vals[s.x[k]] = base.x[k];
            vals[s.xi_m] = base.xi_minus;
            vals[s.xi_p] = base.xi_plus;
            GMat P(uosp_signature(), uosp_signature(), GrassmannNumber(L));
            for (int r = 0; r < 3; ++r)
                for (int cc = 0; cc < 3; ++cc)
                    P.at(r, cc) = eval_grassmann(psym.at(r, cc), vals, L);
            idem = std::max(idem, max_abs_diff(P * P, P));
            dag = std::max(dag, max_abs_diff(P.dagger(), P));
            tr1 = std::max(tr1, max_abs_diff(P.supertrace(), GrassmannNumber::scalar(1.0, L)));
            const GMat ket = transposed ? standard_ket(t).dagger().supertranspose()
                                        : standard_ket(t);
            const GMat bra = transposed ? standard_ket(t).supertranspose() : ket.dagger();
            construct = std::max(construct, max_abs_diff(ket * bra, P));
            const SuperU1Element w = super_u1_element(
                GrassmannNumber::scalar(rng.uniform(-3, 3), L));
            const GradedPoint tw = right_action(t, w.w());
            const GMat ket2 = transposed ? standard_ket(tw).dagger().supertranspose()
                                         : standard_ket(tw);
            const GMat bra2 = transposed ? standard_ket(tw).supertranspose() : ket2.dagger();
            inv = std::max(inv, max_abs_diff(ket2 * bra2, P));
        }
    }
    return {make_check(tag + "/idempotent", idem, 1e-12),
            make_check(tag + "/self_adjoint", dag, 1e-12),
            make_check(tag + "/unit_trace", tr1, 1e-12),
            make_check(tag + "/ket_bra_construction", construct, 1e-12),
            make_check(tag + "/right_action_invariance", inv, 1e-12)};
}

inline std::vector<CheckResult> check_connections(BundleCase c, int L, std::uint64_t seed,
                                                  int ndraws) {
    Rng rng(seed);
    double anti = 0, extra = 0, closed = 0;
    std::vector<CheckResult> out;
    const std::string tag = to_string(c);
    if (c == BundleCase::monopole) {
        for (int i = 0; i < ndraws; ++i) {
            const MonopolePoint t = sample_monopole(rng);
            const MonopoleTangent v = random_tangent(rng, t);
            const Cplx A = connection_form(t, v);
            anti = std::max(anti, std::abs(A + std::conj(A)));
        }
        out.push_back(make_check(tag + "/connection_antihermitian", anti, 1e-11));
    } else if (c == BundleCase::instanton) {
        for (int i = 0; i < ndraws; ++i) {
            const InstantonPoint t = sample_instanton(rng);
            const InstantonTangent v = random_tangent(rng, t);
            const Quaternion A = connection_form(t, v);
            anti = std::max(anti, (A + A.conj()).max_abs());
            extra = std::max(extra, std::abs(A.r0));
        }
        out.push_back(make_check(tag + "/connection_antihermitian", anti, 1e-11));
        out.push_back(make_check(tag + "/connection_imaginary_valued", extra, 1e-11));
    } else {
        for (int i = 0; i < ndraws; ++i) {
            const GradedPoint t = sample_graded(rng, L);
            const GradedTangent v = random_tangent(rng, t);
            const GrassmannNumber A = connection_form(t, v);
            anti = std::max(anti, (A + A.involution()).max_abs());
            closed = std::max(closed, max_abs_diff(A, graded_connection_closed_form(t, v)));
        }
        out.push_back(make_check(tag + "/connection_antihermitian", anti, 1e-11));
        out.push_back(make_check(tag + "/connection_closed_form", closed, 1e-12));
    }
    return out;
}

}  // namespace hopfchern
