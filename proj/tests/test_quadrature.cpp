#include <catch2/catch_amalgamated.hpp>

#include "hopfchern/bundles.hpp"
#include "hopfchern/projectors.hpp"
#include "hopfchern/selftest.hpp"

using namespace hopfchern;

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
    const auto g = gauss_legendre(8);
    double s0 = 0, s2 = 0, s14 = 0;
    for (int i = 0; i < 8; ++i) {
        s0 += g.weights[i];
        s2 += g.weights[i] * g.nodes[i] * g.nodes[i];
        s14 += g.weights[i] * std::pow(g.nodes[i], 14);
    }
    CHECK(std::abs(s0 - 2.0) < 1e-14);
    CHECK(std::abs(s2 - 2.0 / 3.0) < 1e-14);
    CHECK(std::abs(s14 - 2.0 / 15.0) < 1e-13);  // degree 14 < 2*8
}

TEST_CASE("chart conventions") {
    const Chart c = s2_chart_polar();
    double u[2] = {kPi / 2.0, 0.0};
    double x[3];
    c.eval(u, x);
    CHECK(std::abs(x[0] - 0.0) < 1e-15);
    CHECK(std::abs(x[1] - 1.0) < 1e-15);
    CHECK(std::abs(x[2] - 0.0) < 1e-15);
}

TEST_CASE("chart images stay on the sphere") {
    for (const Chart& c : {s2_chart_polar(), s2_chart_cyclic(), s4_chart_hyperspherical(),
                           s3_chart_hopf(), s7_chart_hopf()}) {
        Rng rng(61);
        for (int i = 0; i < 200; ++i) {
            std::vector<double> u(c.dim), x(c.ambient);
            for (int k = 0; k < c.dim; ++k) u[k] = rng.uniform(c.box[k].first, c.box[k].second);
            c.eval(u.data(), x.data());
            double n = 0;
            for (double v : x) n += v * v;
            CHECK(std::abs(n - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("analytic Jacobians match central finite differences") {
    for (const Chart& c : {s2_chart_polar(), s2_chart_cyclic(), s4_chart_hyperspherical(),
                           s3_chart_hopf(), s7_chart_hopf()}) {
        Rng rng(62);
        const double h = 1e-6;
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> u(c.dim);
            for (int k = 0; k < c.dim; ++k)
                u[k] = rng.uniform(c.box[k].first + 0.1, c.box[k].second - 0.1);
            std::vector<double> J(c.ambient * c.dim);
            c.jacobian(u.data(), J.data());
            for (int k = 0; k < c.dim; ++k) {
                std::vector<double> up = u, um = u, xp(c.ambient), xm(c.ambient);
                up[k] += h;
                um[k] -= h;
                c.eval(up.data(), xp.data());
                c.eval(um.data(), xm.data());
                for (int r = 0; r < c.ambient; ++r)
                    worst = std::max(worst,
                                     std::abs((xp[r] - xm[r]) / (2.0 * h) - J[r * c.dim + k]));
            }
        }
        INFO(c.name);
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("sphere volumes, moment and chart independence") {
    for (const auto& check : check_quadrature(32, 24)) {
        INFO(check.name << " residual " << check.residual);
        CHECK(check.pass);
    }
}

TEST_CASE("quadrature converges: doubling the S4 order is stable") {
    const S4System s = make_s4_system();
    const std::vector<VarId> xs(s.x.begin(), s.x.end()), dxs(s.dx.begin(), s.dx.end());
    const Chart c = s4_chart_hyperspherical();
    const double v24 = integrate_form(s4_volume_form(s), c, xs, dxs, 24).value;
    const double v48 = integrate_form(s4_volume_form(s), c, xs, dxs, 48).value;
    CHECK(std::abs(v24 - v48) < 1e-9);
}

TEST_CASE("integration rejects malformed input") {
    const S22System s = make_s22_system();
    const std::vector<VarId> xs(s.x.begin(), s.x.end()), dxs(s.dx.begin(), s.dx.end());
    const Chart c = s2_chart_polar();
    GradedForm<Cplx> odd(s.space);
    odd.add_term({s.xi_m, s.dx[0], s.dx[1]}, 1.0);
    CHECK_THROWS_AS(integrate_form(odd, c, xs, dxs, 8), std::domain_error);
    GradedForm<Cplx> wrong_degree(s.space);
    wrong_degree.add_term({s.dx[0]}, 1.0);
    CHECK_THROWS_AS(integrate_form(wrong_degree, c, xs, dxs, 8), std::domain_error);
}

TEST_CASE("sampler statistics: mean of x0 over 1e5 points") {
    Rng rng(63);
    double mean = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) mean += hopf_project(sample_monopole(rng))[0];
    mean /= n;
    CHECK(std::abs(mean) < 0.02);
}
