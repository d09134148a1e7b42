#include <catch2/catch_amalgamated.hpp>

#include "hopfchern/gauge.hpp"

using namespace hopfchern;

namespace {
const Cplx I(0.0, 1.0);

/// The super 2-form of the first Chern class printed in base coordinates,
/// entered termwise. One sign is fixed relative to the printed display: the
/// bracket term reads +2 x0 dxi- dxi+ (not -2). The + sign is what
/// -(1/2 pi i) <d psi | d psi> gives at the north-pole fiber, and with it the
/// display agrees with Str p (dp)^2 identically on the supersphere (checked
/// below modulo the constraint); the body projection and the charge are
/// insensitive to it either way.
GradedForm<Cplx> graded_c1_display(const S22System& s) {
    GradedForm<Cplx> disp(s.space);
    const double f = -1.0 / (4.0 * kPi);
    for (auto [a, b, c] : std::vector<std::array<int, 3>>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}) {
        disp.add_term({s.x[a], s.dx[b], s.dx[c]}, f);
        disp.add_term({s.x[a], s.dx[b], s.dx[c], s.xi_m, s.xi_p}, 3.0 * f);
    }
    const Cplx g4 = Cplx(0.0, 1.0 / (4.0 * kPi));  // -1/(4 pi i)
    disp.add_term({s.dx[1], s.xi_p, s.dxi_p}, g4);
    disp.add_term({s.dx[2], s.xi_p, s.dxi_p}, -I * g4);
    disp.add_term({s.dx[1], s.xi_m, s.dxi_m}, -g4);
    disp.add_term({s.dx[2], s.xi_m, s.dxi_m}, -I * g4);
    disp.add_term({s.dx[0], s.xi_m, s.dxi_p}, g4);
    disp.add_term({s.dx[0], s.xi_p, s.dxi_m}, g4);
    disp.add_term({s.x[1], s.dxi_p, s.dxi_p}, g4);
    disp.add_term({s.x[2], s.dxi_p, s.dxi_p}, -I * g4);
    disp.add_term({s.x[1], s.dxi_m, s.dxi_m}, -g4);
    disp.add_term({s.x[2], s.dxi_m, s.dxi_m}, -I * g4);
    disp.add_term({s.x[0], s.dxi_m, s.dxi_p}, 2.0 * g4);
    return disp;
}

}  // namespace

TEST_CASE("monopole Chern form equals its closed form coefficientwise") {
    const S2System s = make_s2_system();
    CHECK(max_abs_diff(monopole_chern_form(s, false),
                       s2_volume_form(s).scaled(-1.0 / (4.0 * kPi))) == 0.0);
    CHECK(max_abs_diff(monopole_chern_form(s, true),
                       s2_volume_form(s).scaled(1.0 / (4.0 * kPi))) == 0.0);
}

TEST_CASE("graded Chern form: body projection and full display") {
    const S22System s = make_s22_system();
    const auto c1 = graded_chern_form(s, false);
    CHECK(max_abs_diff(c1.body_project(),
                       s22_body_volume_form(s).scaled(-1.0 / (4.0 * kPi))) == 0.0);
    CHECK(max_abs_diff(graded_chern_form(s, true).body_project(),
                       s22_body_volume_form(s).scaled(1.0 / (4.0 * kPi))) == 0.0);

    // Full display, compared on the supersphere: evaluate both superforms at
    // random constrained points keeping the differentials symbolic, then
    // eliminate dx0 through the differentiated constraint
    //   sum_k x_k dx_k + d(xi-) xi+ + xi- d(xi+) = 0.
    const auto disp = graded_c1_display(s);
    Rng rng(91);
    const int L = 2;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        GradedPoint t = sample_graded(rng, L);
        if (std::abs(t.a.body().real()) < 0.15 && std::abs(t.a.body().imag()) < 0.15) continue;
        const GradedBase base = hopf_project(t);
        if (std::abs(base.x[0].body()) < 0.2) continue;  // need invertible x0
        std::vector<GrassmannNumber> vals(s.space->size(), GrassmannNumber(L));
        for (int k = 0; k < 3; ++k) vals[s.x[k]] = base.x[k];
        vals[s.xi_m] = base.xi_minus;
        vals[s.xi_p] = base.xi_plus;
        const auto A = partial_eval_grassmann(c1, vals, L);
        const auto B = partial_eval_grassmann(disp, vals, L);
        GradedForm<GrassmannNumber> repl(s.space, GrassmannNumber(L));
        const GrassmannNumber x0inv = base.x[0].inverse();
        repl.add_term({s.dx[1]}, -(x0inv * base.x[1]));
        repl.add_term({s.dx[2]}, -(x0inv * base.x[2]));
        repl.add_term({s.dxi_m}, x0inv * base.xi_plus);     // d(xi-) xi+ = -xi+ d(xi-)
        repl.add_term({s.dxi_p}, -(x0inv * base.xi_minus));
        worst = std::max(worst, max_abs_diff(A.substitute_form(s.dx[0], repl),
                                             B.substitute_form(s.dx[0], repl)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("instanton Chern forms") {
    const S4System s = make_s4_system();
    CHECK(instanton_c1_form(s, false).is_zero());
    CHECK(instanton_c1_form(s, true).is_zero());
    const auto c2 = instanton_c2_form(s, false, true);
    CHECK(max_abs_diff(c2, s4_volume_form(s).scaled(-3.0 / (8.0 * kPi * kPi))) < 1e-16);
    CHECK(max_abs_diff(instanton_c2_form(s, true, true),
                       s4_volume_form(s).scaled(3.0 / (8.0 * kPi * kPi))) < 1e-16);
    // The subtracted and the plain formula agree (C1 vanishes).
    CHECK(max_abs_diff(c2, instanton_c2_form(s, false, false)) == 0.0);
}

TEST_CASE("curvature is a 2-form") {
    const S2System s = make_s2_system();
    const auto p = monopole_projector(s, false);
    const auto dp = p.d();
    const auto F = p * dp * dp;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!F.at(i, j).empty()) CHECK(F.at(i, j).degree() == 2);
}

TEST_CASE("monopole curvature identity: tr p(dp)^2 = <d psi | d psi> pointwise") {
    const S2System s = make_s2_system();
    const auto F = (monopole_projector(s, false).d() * monopole_projector(s, false).d());
    const auto tr = (monopole_projector(s, false) * F).trace();
    const Chart chart = s2_chart_polar();
    Rng rng(92);
    std::map<VarId, int> rows;
    for (int k = 0; k < 3; ++k) rows[s.dx[k]] = k;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        double u[2] = {rng.uniform(0.1, kPi - 0.1), rng.uniform(0.0, 2.0 * kPi)};
        double x[3], J[6];
        chart.eval(u, x);
        chart.jacobian(u, J);
        std::vector<Cplx> tau1(2), tau2(2);
        for (auto* t : {&tau1, &tau2}) {
            (*t)[0] = rng.normal();
            (*t)[1] = rng.normal();
        }
        // Ambient tangents.
        std::vector<std::vector<double>> tang(2, std::vector<double>(3));
        for (int k = 0; k < 3; ++k) {
            tang[0][k] = J[k * 2] * tau1[0].real() + J[k * 2 + 1] * tau1[1].real();
            tang[1][k] = J[k * 2] * tau2[0].real() + J[k * 2 + 1] * tau2[1].real();
        }
        std::vector<double> xv(s.space->size(), 0.0);
        for (int k = 0; k < 3; ++k) xv[s.x[k]] = x[k];
        const Cplx lhs = eval_on_tangents(tr, xv, rows, tang);
        // <d psi | d psi> on the same tangent pair, through the section.
        const auto sec = monopole_section(u);
        const Cplx da1 = sec.da[0] * tau1[0].real() + sec.da[1] * tau1[1].real();
        const Cplx db1 = sec.db[0] * tau1[0].real() + sec.db[1] * tau1[1].real();
        const Cplx da2 = sec.da[0] * tau2[0].real() + sec.da[1] * tau2[1].real();
        const Cplx db2 = sec.db[0] * tau2[0].real() + sec.db[1] * tau2[1].real();
        const Cplx rhs = (std::conj(da1) * da2 + std::conj(db1) * db2) -
                         (std::conj(da2) * da1 + std::conj(db2) * db1);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("instanton curvature identity (both terms) pointwise") {
    // p(dp)^2 = |psi> ( <psi|d psi><psi|d psi> + <d psi|d psi> ) <psi|; the
    // first term does not vanish over the quaternions.
    const S4System s = make_s4_system();
    const auto p = instanton_projector(s, false);
    const auto dp = p.d();
    const auto F = p * dp * dp;
    const Chart chart = s4_chart_hyperspherical();
    Rng rng(93);
    std::map<VarId, int> rows;
    for (int k = 0; k < 5; ++k) rows[s.dx[k]] = k;
    double worst = 0.0, first_term = 0.0;
    for (int i = 0; i < 100; ++i) {
        double u[4] = {rng.uniform(0.15, kPi - 0.15), rng.uniform(0.15, kPi - 0.15),
                       rng.uniform(0.15, kPi - 0.15), rng.uniform(0.1, 2.0 * kPi - 0.1)};
        double x[5], J[20];
        chart.eval(u, x);
        chart.jacobian(u, J);
        double tau1[4], tau2[4];
        for (int k = 0; k < 4; ++k) {
            tau1[k] = rng.normal();
            tau2[k] = rng.normal();
        }
        std::vector<std::vector<double>> tang(2, std::vector<double>(5));
        for (int k = 0; k < 5; ++k)
            for (int m = 0; m < 4; ++m) {
                tang[0][k] += J[k * 4 + m] * tau1[m];
                tang[1][k] += J[k * 4 + m] * tau2[m];
            }
        std::vector<double> xv(s.space->size(), 0.0);
        for (int k = 0; k < 5; ++k) xv[s.x[k]] = x[k];
        const auto sec = instanton_section(u);
        auto along = [&](const double* tau) {
            Quaternion da{}, db{};
            for (int m = 0; m < 4; ++m) {
                da = da + sec.da[m] * tau[m];
                db = db + sec.db[m] * tau[m];
            }
            return std::pair{da, db};
        };
        const auto [da1, db1] = along(tau1);
        const auto [da2, db2] = along(tau2);
        const Quaternion A1 = sec.point.a.conj() * da1 + sec.point.b.conj() * db1;
        const Quaternion A2 = sec.point.a.conj() * da2 + sec.point.b.conj() * db2;
        const Quaternion AA = A1 * A2 - A2 * A1;
        first_term = std::max(first_term, AA.max_abs());
        const Quaternion DD = (da1.conj() * da2 + db1.conj() * db2) -
                              (da2.conj() * da1 + db2.conj() * db1);
        const Quaternion S = AA + DD;
        const Quaternion psi[2] = {sec.point.a, sec.point.b};
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                const Quaternion rhs = psi[r] * S * psi[c].conj();
                const Quaternion lhs = eval_on_tangents(F.at(r, c), xv, rows, tang);
                worst = std::max(worst, (lhs - rhs).max_abs());
            }
    }
    CHECK(worst < 1e-10);
    CHECK(first_term > 1e-3);  // the <psi|d psi>^2 term genuinely contributes
}

TEST_CASE("charges of all six projectors") {
    ChargeOptions opt;
    const auto mp = compute_charge(BundleCase::monopole, false, opt);
    const auto mq = compute_charge(BundleCase::monopole, true, opt);
    CHECK(std::abs(*mp.c1 + 1.0) < 1e-8);
    CHECK(std::abs(*mq.c1 - 1.0) < 1e-8);
    const auto gp = compute_charge(BundleCase::graded, false, opt);
    const auto gq = compute_charge(BundleCase::graded, true, opt);
    CHECK(std::abs(*gp.c1 + 1.0) < 1e-8);
    CHECK(std::abs(*gq.c1 - 1.0) < 1e-8);
    const auto ip = compute_charge(BundleCase::instanton, false, opt);
    const auto iq = compute_charge(BundleCase::instanton, true, opt);
    CHECK(std::abs(*ip.c2 + 1.0) < 1e-6);
    CHECK(std::abs(*iq.c2 - 1.0) < 1e-6);
    // Distinct charges witness inequivalence of p and q.
    CHECK(std::abs(*mp.c1 - *mq.c1) > 1.0);
    // Cross-path residuals.
    CHECK(mp.residuals.at("path_disagreement") < 1e-8);
    CHECK(ip.residuals.at("path_disagreement") < 1e-6);
    CHECK(ip.residuals.at("c1_pointwise_max") < 1e-10);
    CHECK(ip.residuals.at("c2_vs_volume_pointwise") < 1e-10);
}

TEST_CASE("transposition flips every charge; the pairs are inequivalent") {
    ChargeOptions opt;
    opt.s4_order = 16;
    for (BundleCase c : {BundleCase::monopole, BundleCase::graded, BundleCase::instanton}) {
        const ChargePair pair = compute_charge_pair(c, opt);
        CHECK(pair.inequivalent);
        const double cp = (c == BundleCase::instanton) ? *pair.p.c2 : *pair.p.c1;
        const double cq = (c == BundleCase::instanton) ? *pair.q.c2 : *pair.q.c1;
        CHECK(std::abs(cp + cq) < 1e-6);
    }
}

TEST_CASE("quadrature non-convergence raises a numeric error") {
    ChargeOptions opt;
    opt.s2_order = 4;  // deliberately coarse
    CHECK_THROWS_AS(compute_charge(BundleCase::monopole, false, opt), NumericError);
}

TEST_CASE("charge computation is deterministic") {
    ChargeOptions opt;
    const auto a = compute_charge(BundleCase::monopole, false, opt);
    const auto b = compute_charge(BundleCase::monopole, false, opt);
    CHECK(*a.c1 == *b.c1);
    CHECK(a.density_samples == b.density_samples);
    CHECK(a.residuals == b.residuals);
}
