#include <catch2/catch_amalgamated.hpp>

#include "hopfchern/bundles.hpp"
#include "hopfchern/projectors.hpp"

using namespace hopfchern;

namespace {
const Cplx I(0.0, 1.0);
GrassmannNumber theta(int i, int L = 2) { return GrassmannNumber::generator(i, L); }
}  // namespace

TEST_CASE("Hopf projection at simple points") {
    const auto xm = hopf_project(MonopolePoint{1.0, 0.0});
    CHECK(xm == std::array<double, 3>{1.0, 0.0, 0.0});

    const double r = 1.0 / std::sqrt(2.0);
    const auto xi = hopf_project(InstantonPoint{Quaternion(r), Quaternion(r)});
    CHECK(std::abs(xi[0]) < 1e-15);
    CHECK(std::abs(xi[1]) < 1e-15);
    CHECK(std::abs(xi[2]) < 1e-15);
    CHECK(std::abs(xi[3]) < 1e-15);
    CHECK(std::abs(xi[4] - 1.0) < 1e-15);
}

TEST_CASE("graded projection at eta = 0 reduces to the monopole formulas") {
    Rng rng(71);
    for (int i = 0; i < 20; ++i) {
        MonopolePoint m = sample_monopole(rng);
        GradedPoint g{GrassmannNumber::scalar(m.a), GrassmannNumber::scalar(m.b),
                      GrassmannNumber(2)};
        const auto xm = hopf_project(m);
        const auto xg = hopf_project(g);
        for (int k = 0; k < 3; ++k)
            CHECK(max_abs_diff(xg.x[k], GrassmannNumber::scalar(xm[k])) < 1e-15);
        CHECK(xg.xi_minus.is_zero());
        CHECK(xg.xi_plus.is_zero());
    }
}

TEST_CASE("projections preserve the sphere constraints") {
    Rng rng(72);
    for (int i = 0; i < 100; ++i) {
        const auto xm = hopf_project(sample_monopole(rng));
        CHECK(std::abs(xm[0] * xm[0] + xm[1] * xm[1] + xm[2] * xm[2] - 1.0) < 1e-12);
        const auto xi = hopf_project(sample_instanton(rng));
        double n = 0;
        for (double v : xi) n += v * v;
        CHECK(std::abs(n - 1.0) < 1e-12);
        const auto xg = hopf_project(sample_graded(rng));
        GrassmannNumber c = xg.xi_minus * xg.xi_plus * 2.0;
        for (int k = 0; k < 3; ++k) c = c + xg.x[k] * xg.x[k];
        CHECK(max_abs_diff(c, GrassmannNumber::scalar(1.0)) < 1e-13);
        // xi_-^o = xi_+ and the x_k are involution-real.
        CHECK(max_abs_diff(xg.xi_minus.involution(), xg.xi_plus) < 1e-14);
        for (int k = 0; k < 3; ++k) CHECK(max_abs_diff(xg.x[k].involution(), xg.x[k]) < 1e-14);
    }
}

TEST_CASE("off-constraint points are rejected") {
    CHECK_THROWS_AS(hopf_project(MonopolePoint{1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(standard_ket(InstantonPoint{Quaternion(2.0), Quaternion(0.0)}),
                    std::domain_error);
}

TEST_CASE("invariant functions at the poles and round trips") {
    const auto inv_north = invariants_from_base(std::array<double, 3>{1.0, 0.0, 0.0});
    CHECK(inv_north.a2 == 1.0);
    CHECK(inv_north.b2 == 0.0);

    Rng rng(73);
    for (int i = 0; i < 500; ++i) {
        const MonopolePoint t = sample_monopole(rng);
        const auto inv = invariants_from_base(hopf_project(t));
        CHECK(std::abs(inv.a2 - std::norm(t.a)) < 1e-12);
        CHECK(std::abs(inv.b2 - std::norm(t.b)) < 1e-12);
        CHECK(std::abs(inv.ab_bar - t.a * std::conj(t.b)) < 1e-12);

        const InstantonPoint ti = sample_instanton(rng);
        const auto invi = invariants_from_base(hopf_project(ti));
        CHECK(std::abs(invi.a2 - ti.a.norm2()) < 1e-12);
        CHECK((invi.ab_bar - ti.a * ti.b.conj()).max_abs() < 1e-12);

        const GradedPoint tg = sample_graded(rng);
        const auto invg = invariants_from_base(hopf_project(tg));
        const GrassmannNumber ao = tg.a.involution(), bo = tg.b.involution();
        const GrassmannNumber etao = tg.eta.involution();
        CHECK(max_abs_diff(invg.xi_prod, tg.eta * etao * 0.25) < 1e-13);
        CHECK(max_abs_diff(invg.aao, tg.a * ao) < 1e-13);
        CHECK(max_abs_diff(invg.bbo, tg.b * bo) < 1e-13);
        CHECK(max_abs_diff(invg.abo, tg.a * bo) < 1e-13);
        CHECK(max_abs_diff(invg.eta_ao, tg.eta * ao) < 1e-13);
        CHECK(max_abs_diff(invg.eta_bo, tg.eta * bo) < 1e-13);
    }
}

TEST_CASE("kets are normalized") {
    const auto km = standard_ket(MonopolePoint{0.0, 1.0});
    CHECK(km.at(0, 0) == Cplx(0.0));
    CHECK(km.at(1, 0) == Cplx(1.0));

    Rng rng(74);
    for (int i = 0; i < 200; ++i) {
        const InstantonPoint t = sample_instanton(rng);
        const auto k = standard_ket(t);
        CHECK((ket_inner(k, k) - Quaternion::one()).max_abs() < 1e-12);
    }
    // Graded normalization is exact in the algebra:
    // <psi|psi> = -eta^o eta / 4 + (a a^o + b b^o)(1 - eta eta^o / 4) = 1.
    for (int i = 0; i < 50; ++i) {
        const GradedPoint t = sample_graded(rng);
        const GMat k = standard_ket(t);
        CHECK(max_abs_diff(ket_inner(k, k), GrassmannNumber::scalar(1.0)) < 1e-15);
    }
}

TEST_CASE("right action preserves fibers and constraints") {
    Rng rng(75);
    // w = 1 acts trivially.
    const MonopolePoint t0 = sample_monopole(rng);
    const auto t0w = right_action(t0, Cplx(1.0));
    CHECK(t0w.a == t0.a);
    for (int i = 0; i < 100; ++i) {
        const MonopolePoint t = sample_monopole(rng);
        const Cplx w = std::exp(I * rng.uniform(0.0, 2.0 * kPi));
        const auto x1 = hopf_project(t), x2 = hopf_project(right_action(t, w));
        for (int k = 0; k < 3; ++k) CHECK(std::abs(x1[k] - x2[k]) < 1e-12);

        const InstantonPoint ti = sample_instanton(rng);
        Quaternion wq{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
        wq = wq * (1.0 / wq.norm());
        const auto y1 = hopf_project(ti), y2 = hopf_project(right_action(ti, wq));
        for (int k = 0; k < 5; ++k) CHECK(std::abs(y1[k] - y2[k]) < 1e-12);

        const GradedPoint tg = sample_graded(rng);
        const GrassmannNumber w2 =
            grassmann_exp(GrassmannNumber::scalar(Cplx(0.0, rng.uniform(-3.0, 3.0))));
        const auto z1 = hopf_project(tg), z2 = hopf_project(right_action(tg, w2));
        for (int k = 0; k < 3; ++k) CHECK(max_abs_diff(z1.x[k], z2.x[k]) < 1e-12);
        CHECK(max_abs_diff(z1.xi_minus, z2.xi_minus) < 1e-12);
    }
    // Instanton with w = j: component norms are preserved.
    const InstantonPoint ti = sample_instanton(rng);
    const auto tj = right_action(ti, Quaternion::j());
    CHECK(std::abs(tj.a.norm2() - ti.a.norm2()) < 1e-14);
    CHECK(std::abs(tj.b.norm2() - ti.b.norm2()) < 1e-14);
    // Non-unit group elements are rejected.
    CHECK_THROWS_AS(right_action(ti, Quaternion(2.0)), std::domain_error);
    CHECK_THROWS_AS(right_action(t0, Cplx(0.5)), std::domain_error);
}

TEST_CASE("ket transforms by componentwise right multiplication") {
    Rng rng(76);
    for (int i = 0; i < 50; ++i) {
        const GradedPoint t = sample_graded(rng);
        const GrassmannNumber w =
            grassmann_exp(GrassmannNumber::scalar(Cplx(0.0, rng.uniform(-3.0, 3.0))));
        const GMat k1 = standard_ket(right_action(t, w));
        const GMat k2 = standard_ket(t);
        for (int r = 0; r < 3; ++r)
            CHECK(max_abs_diff(k1.at(r, 0), k2.at(r, 0) * w) < 1e-13);
    }
}

TEST_CASE("equivariant maps") {
    Rng rng(77);
    using MF = std::function<Cplx(const std::array<double, 3>&)>;
    const MF one = [](const auto&) { return Cplx(1.0); };
    const MF zero = [](const auto&) { return Cplx(0.0); };
    const MF invariant = [](const auto& x) { return Cplx(x[0] + 0.5 * x[1] * x[2], x[2]); };

    // f = (1, 0) gives phi = conj(a).
    const MonopolePoint t = sample_monopole(rng);
    CHECK(std::abs(equivariant_from_sections({one, zero}, t) - std::conj(t.a)) < 1e-14);
    CHECK_THROWS_AS(equivariant_from_sections({one}, t), std::domain_error);

    // Equivariance phi(t w) = w^{-1} phi(t) over 200 draws.
    for (int i = 0; i < 200; ++i) {
        const MonopolePoint tt = sample_monopole(rng);
        const Cplx w = std::exp(I * rng.uniform(0.0, 2.0 * kPi));
        const Cplx lhs = equivariant_from_sections({invariant, one}, right_action(tt, w));
        const Cplx rhs = equivariant_from_sections({invariant, one}, tt) / w;
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
    for (int i = 0; i < 200; ++i) {
        using QF = std::function<Quaternion(const std::array<double, 5>&)>;
        const QF f = [](const auto& x) { return Quaternion(x[0], x[1], 0.0, x[4]); };
        const QF g = [](const auto&) { return Quaternion::one(); };
        const InstantonPoint tt = sample_instanton(rng);
        Quaternion w{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
        w = w * (1.0 / w.norm());
        const Quaternion lhs = equivariant_from_sections({f, g}, right_action(tt, w));
        const Quaternion rhs = w.conj() * equivariant_from_sections({f, g}, tt);
        CHECK((lhs - rhs).max_abs() < 1e-12);
    }
    // Graded case with (h, f, g) = (1, 0, 0): phi = eta^o / 2.
    using GF = std::function<GrassmannNumber(const GradedBase&)>;
    const GF gone = [](const GradedBase&) { return GrassmannNumber::scalar(1.0); };
    const GF gzero = [](const GradedBase&) { return GrassmannNumber(2); };
    const GradedPoint tg = sample_graded(rng);
    CHECK(max_abs_diff(equivariant_from_sections({gone, gzero, gzero}, tg),
                       tg.eta.involution() * 0.5) < 1e-14);
    for (int i = 0; i < 100; ++i) {
        const GF ginv = [](const GradedBase& b) {
            return b.x[0] * b.x[1] + b.xi_minus * b.xi_plus * Cplx(0.0, 2.0);
        };
        const GradedPoint t2 = sample_graded(rng);
        const GrassmannNumber w =
            grassmann_exp(GrassmannNumber::scalar(Cplx(0.0, rng.uniform(-3.0, 3.0))));
        const GrassmannNumber lhs =
            equivariant_from_sections({gone, ginv, gone}, right_action(t2, w));
        const GrassmannNumber rhs =
            w.involution() * equivariant_from_sections({gone, ginv, gone}, t2);
        CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("chart lookup by name") {
    CHECK(chart_for(BundleCase::monopole, "spherical").ambient == 3);
    CHECK(chart_for(BundleCase::graded, "cyclic").ambient == 3);
    CHECK(chart_for(BundleCase::monopole, "hopf").ambient == 4);
    CHECK(chart_for(BundleCase::instanton, "hyperspherical").ambient == 5);
    CHECK(chart_for(BundleCase::instanton, "hopf").ambient == 8);
    CHECK_THROWS_AS(chart_for(BundleCase::monopole, "mercator"), std::out_of_range);
    CHECK_THROWS_AS(chart_for(BundleCase::graded, "hopf"), std::out_of_range);
}

TEST_CASE("batch sampler is deterministic and on-constraint") {
    const auto a = sample(BundleCase::instanton, 99, 50);
    const auto b = sample(BundleCase::instanton, 99, 50);
    REQUIRE(a.size() == 50);
    for (int i = 0; i < 50; ++i) {
        const auto& ta = std::get<InstantonPoint>(a[i]);
        const auto& tb = std::get<InstantonPoint>(b[i]);
        CHECK((ta.a - tb.a).max_abs() == 0.0);
        CHECK(constraint_residual(ta) < 1e-12);
    }
    const auto g = sample(BundleCase::graded, 5, 10);
    for (const auto& t : g) CHECK(constraint_residual(std::get<GradedPoint>(t)) < 1e-13);
}

TEST_CASE("chart sections lift the charts") {
    const Chart c2 = s2_chart_polar();
    const Chart c4 = s4_chart_hyperspherical();
    Rng rng(78);
    for (int i = 0; i < 100; ++i) {
        double u2[2] = {rng.uniform(0.05, kPi - 0.05), rng.uniform(0.0, 2.0 * kPi)};
        double x2[3];
        c2.eval(u2, x2);
        const auto sec = monopole_section(u2);
        const auto xs = hopf_project(sec.point);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(xs[k] - x2[k]) < 1e-13);

        double u4[4] = {rng.uniform(0.05, kPi - 0.05), rng.uniform(0.05, kPi - 0.05),
                        rng.uniform(0.05, kPi - 0.05), rng.uniform(0.0, 2.0 * kPi)};
        double x4[5];
        c4.eval(u4, x4);
        const auto sec4 = instanton_section(u4);
        const auto xs4 = hopf_project(sec4.point);
        for (int k = 0; k < 5; ++k) CHECK(std::abs(xs4[k] - x4[k]) < 1e-13);
    }
}

TEST_CASE("section derivatives match finite differences") {
    Rng rng(79);
    const double h = 1e-6;
    for (int i = 0; i < 30; ++i) {
        double u[4] = {rng.uniform(0.1, kPi - 0.1), rng.uniform(0.1, kPi - 0.1),
                       rng.uniform(0.1, kPi - 0.1), rng.uniform(0.1, 2.0 * kPi - 0.1)};
        const auto s = instanton_section(u);
        for (int k = 0; k < 4; ++k) {
            double up[4], um[4];
            std::copy(u, u + 4, up);
            std::copy(u, u + 4, um);
            up[k] += h;
            um[k] -= h;
            const auto sp = instanton_section(up), sm = instanton_section(um);
            CHECK(((sp.point.a - sm.point.a) * (0.5 / h) - s.da[k]).max_abs() < 1e-6);
            CHECK(((sp.point.b - sm.point.b) * (0.5 / h) - s.db[k]).max_abs() < 1e-6);
        }
    }
}
