#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hopfchern/forms.hpp"

namespace hopfchern {

inline constexpr double kPi = std::numbers::pi;

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
struct GaussLegendre {
    std::vector<double> nodes, weights;
};

inline GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw std::domain_error("gauss_legendre: order must be >= 1");
    GaussLegendre g;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        g.nodes[i] = -x;
        g.weights[i] = w;
        g.nodes[n - 1 - i] = x;
        g.weights[n - 1 - i] = w;
    }
    return g;
}

/// Parametrization of one sphere chart: a box of angles mapped onto the
/// sphere minus a measure-zero set, with analytic Jacobian. Angle
/// conventions are fixed constants; integrals are chart-independent.
struct Chart {
    std::string name;
    int dim = 0;
    int ambient = 0;
    std::vector<std::pair<double, double>> box;
    std::function<void(const double*, double*)> eval;          // u -> x
    std::function<void(const double*, double*)> jacobian;      // row-major ambient x dim
};

/// S^2, convention x0 = cos(theta), x1 = sin(theta) cos(phi),
/// x2 = sin(theta) sin(phi).
inline Chart s2_chart_polar() {
    Chart c;
    c.name = "s2-polar";
    c.dim = 2;
    c.ambient = 3;
    c.box = {{0.0, std::numbers::pi}, {0.0, 2.0 * std::numbers::pi}};
    c.eval = [](const double* u, double* x) {
        x[0] = std::cos(u[0]);
        x[1] = std::sin(u[0]) * std::cos(u[1]);
        x[2] = std::sin(u[0]) * std::sin(u[1]);
    };
    c.jacobian = [](const double* u, double* J) {
        const double st = std::sin(u[0]), ct = std::cos(u[0]);
        const double sp = std::sin(u[1]), cp = std::cos(u[1]);
        J[0 * 2 + 0] = -st;
        J[0 * 2 + 1] = 0.0;
        J[1 * 2 + 0] = ct * cp;
        J[1 * 2 + 1] = -st * sp;
        J[2 * 2 + 0] = ct * sp;
        J[2 * 2 + 1] = st * cp;
    };
    return c;
}

/// Second S^2 chart: the polar chart composed with the cyclic axis rotation
/// (x0, x1, x2) -> (x1, x2, x0), an orientation-preserving isometry.
inline Chart s2_chart_cyclic() {
    Chart c = s2_chart_polar();
    c.name = "s2-cyclic";
    auto base_eval = c.eval;
    auto base_jac = c.jacobian;
    c.eval = [base_eval](const double* u, double* x) {
        double y[3];
        base_eval(u, y);
        x[1] = y[0];
        x[2] = y[1];
        x[0] = y[2];
    };
    c.jacobian = [base_jac](const double* u, double* J) {
        double Jy[6];
        base_jac(u, Jy);
        for (int k = 0; k < 2; ++k) {
            J[1 * 2 + k] = Jy[0 * 2 + k];
            J[2 * 2 + k] = Jy[1 * 2 + k];
            J[0 * 2 + k] = Jy[2 * 2 + k];
        }
    };
    return c;
}

/// S^4 hyperspherical chart: x0 = cos(t1), x1 = sin(t1) cos(t2),
/// x2 = sin(t1) sin(t2) cos(t3), x3 = sin(t1) sin(t2) sin(t3) cos(phi),
/// x4 = sin(t1) sin(t2) sin(t3) sin(phi).
inline Chart s4_chart_hyperspherical() {
    Chart c;
    c.name = "s4-hyperspherical";
    c.dim = 4;
    c.ambient = 5;
    c.box = {{0.0, std::numbers::pi},
             {0.0, std::numbers::pi},
             {0.0, std::numbers::pi},
             {0.0, 2.0 * std::numbers::pi}};
    c.eval = [](const double* u, double* x) {
        const double s1 = std::sin(u[0]), c1 = std::cos(u[0]);
        const double s2 = std::sin(u[1]), c2 = std::cos(u[1]);
        const double s3 = std::sin(u[2]), c3 = std::cos(u[2]);
        const double s4 = std::sin(u[3]), c4 = std::cos(u[3]);
        x[0] = c1;
        x[1] = s1 * c2;
        x[2] = s1 * s2 * c3;
        x[3] = s1 * s2 * s3 * c4;
        x[4] = s1 * s2 * s3 * s4;
    };
    c.jacobian = [](const double* u, double* J) {
        const double s1 = std::sin(u[0]), c1 = std::cos(u[0]);
        const double s2 = std::sin(u[1]), c2 = std::cos(u[1]);
        const double s3 = std::sin(u[2]), c3 = std::cos(u[2]);
        const double s4 = std::sin(u[3]), c4 = std::cos(u[3]);
        auto put = [&](int r, double d0, double d1, double d2, double d3) {
            J[r * 4 + 0] = d0;
            J[r * 4 + 1] = d1;
            J[r * 4 + 2] = d2;
            J[r * 4 + 3] = d3;
        };
        put(0, -s1, 0, 0, 0);
        put(1, c1 * c2, -s1 * s2, 0, 0);
        put(2, c1 * s2 * c3, s1 * c2 * c3, -s1 * s2 * s3, 0);
        put(3, c1 * s2 * s3 * c4, s1 * c2 * s3 * c4, s1 * s2 * c3 * c4, -s1 * s2 * s3 * s4);
        put(4, c1 * s2 * s3 * s4, s1 * c2 * s3 * s4, s1 * s2 * c3 * s4, s1 * s2 * s3 * c4);
    };
    return c;
}

namespace detail {

/// Spherical coordinates on S^{n-1}: x0 = cos(u0), x1 = sin(u0) cos(u1), ...
/// with the last coordinate sin...sin(u_{n-2}). Fills x (size n) and the
/// row-major Jacobian (n x (n-1)).
inline void nsphere_eval(int n, const double* u, double* x) {
    double s = 1.0;
    for (int k = 0; k < n - 1; ++k) {
        x[k] = s * std::cos(u[k]);
        s *= std::sin(u[k]);
    }
    x[n - 1] = s;
}

inline void nsphere_jacobian(int n, const double* u, double* J) {
    const int d = n - 1;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < d; ++c) {
            // x_r = cos(u_r) prod_{k<r} sin(u_k)   (cos factor absent for r = n-1)
            if (c > r) {
                J[r * d + c] = 0.0;
                continue;
            }
            double v = 1.0;
            for (int k = 0; k < std::min(r, d); ++k) {
                if (k == c)
                    v *= std::cos(u[k]);
                else
                    v *= std::sin(u[k]);
            }
            if (r < d) {
                if (c == r)
                    v *= -std::sin(u[r]);
                else
                    v *= std::cos(u[r]);
            }
            J[r * d + c] = v;
        }
}

}  // namespace detail

/// Hopf-angle chart of the total space S^3 in C^2 ~ R^4:
/// a = cos(t/2) e^{i p1}, b = sin(t/2) e^{i p2}; ambient order
/// (Re a, Im a, Re b, Im b).
inline Chart s3_chart_hopf() {
    Chart c;
    c.name = "s3-hopf";
    c.dim = 3;
    c.ambient = 4;
    c.box = {{0.0, std::numbers::pi},
             {0.0, 2.0 * std::numbers::pi},
             {0.0, 2.0 * std::numbers::pi}};
    c.eval = [](const double* u, double* x) {
        const double ch = std::cos(0.5 * u[0]), sh = std::sin(0.5 * u[0]);
        x[0] = ch * std::cos(u[1]);
        x[1] = ch * std::sin(u[1]);
        x[2] = sh * std::cos(u[2]);
        x[3] = sh * std::sin(u[2]);
    };
    c.jacobian = [](const double* u, double* J) {
        const double ch = std::cos(0.5 * u[0]), sh = std::sin(0.5 * u[0]);
        const double c1 = std::cos(u[1]), s1 = std::sin(u[1]);
        const double c2 = std::cos(u[2]), s2 = std::sin(u[2]);
        const double row[4][3] = {{-0.5 * sh * c1, -ch * s1, 0.0},
                                  {-0.5 * sh * s1, ch * c1, 0.0},
                                  {0.5 * ch * c2, 0.0, -sh * s2},
                                  {0.5 * ch * s2, 0.0, sh * c2}};
        for (int r = 0; r < 4; ++r)
            for (int k = 0; k < 3; ++k) J[r * 3 + k] = row[r][k];
    };
    return c;
}

/// Hopf-angle chart of the total space S^7 in H^2 ~ R^8:
/// a = cos(t/2) u_a, b = sin(t/2) u_b with u_a, u_b unit quaternions in
/// spherical coordinates; ambient order (a.r0..a.r3, b.r0..b.r3).
inline Chart s7_chart_hopf() {
    Chart c;
    c.name = "s7-hopf";
    c.dim = 7;
    c.ambient = 8;
    c.box = {{0.0, std::numbers::pi},       {0.0, std::numbers::pi},
             {0.0, std::numbers::pi},       {0.0, 2.0 * std::numbers::pi},
             {0.0, std::numbers::pi},       {0.0, std::numbers::pi},
             {0.0, 2.0 * std::numbers::pi}};
    c.eval = [](const double* u, double* x) {
        const double ch = std::cos(0.5 * u[0]), sh = std::sin(0.5 * u[0]);
        double qa[4], qb[4];
        detail::nsphere_eval(4, u + 1, qa);
        detail::nsphere_eval(4, u + 4, qb);
        for (int k = 0; k < 4; ++k) {
            x[k] = ch * qa[k];
            x[4 + k] = sh * qb[k];
        }
    };
    c.jacobian = [](const double* u, double* J) {
        const double ch = std::cos(0.5 * u[0]), sh = std::sin(0.5 * u[0]);
        double qa[4], qb[4], Ja[12], Jb[12];
        detail::nsphere_eval(4, u + 1, qa);
        detail::nsphere_eval(4, u + 4, qb);
        detail::nsphere_jacobian(4, u + 1, Ja);
        detail::nsphere_jacobian(4, u + 4, Jb);
        for (int r = 0; r < 8; ++r)
            for (int k = 0; k < 7; ++k) J[r * 7 + k] = 0.0;
        for (int k = 0; k < 4; ++k) {
            J[k * 7 + 0] = -0.5 * sh * qa[k];
            J[(4 + k) * 7 + 0] = 0.5 * ch * qb[k];
            for (int m = 0; m < 3; ++m) {
                J[k * 7 + 1 + m] = ch * Ja[k * 3 + m];
                J[(4 + k) * 7 + 4 + m] = sh * Jb[k * 3 + m];
            }
        }
    };
    return c;
}

/// Visits every tensor-product Gauss-Legendre node of the chart box. The
/// callback receives (u, x, J, weight); iteration order is fixed, so sums
/// accumulated in visit order are reproducible.
inline void for_each_quadrature_node(
    const Chart& chart, int order,
    const std::function<void(const double*, const double*, const double*, double)>& fn) {
    if (order < 2) throw std::domain_error("quadrature: order must be >= 2");
    const GaussLegendre gl = gauss_legendre(order);
    const int d = chart.dim;
    std::vector<std::vector<double>> nodes(d), weights(d);
    for (int k = 0; k < d; ++k) {
        const auto [lo, hi] = chart.box[k];
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int i = 0; i < order; ++i) {
            nodes[k].push_back(mid + half * gl.nodes[i]);
            weights[k].push_back(half * gl.weights[i]);
        }
    }
    std::vector<int> idx(d, 0);
    std::vector<double> u(d), x(chart.ambient), J(chart.ambient * d);
    while (true) {
        double w = 1.0;
        for (int k = 0; k < d; ++k) {
            u[k] = nodes[k][idx[k]];
            w *= weights[k][idx[k]];
        }
        chart.eval(u.data(), x.data());
        chart.jacobian(u.data(), J.data());
        fn(u.data(), x.data(), J.data(), w);
        int k = d - 1;
        while (k >= 0 && ++idx[k] == order) idx[k--] = 0;
        if (k < 0) break;
    }
}

struct IntegralResult {
    double value = 0.0;
    double imag_residual = 0.0;
    int order = 0;
};

/// Pulls a top-degree form (even variables only) back through the chart and
/// integrates it: for every term, coefficient(x(u)) times the Jacobian minor
/// of its differential rows, then tensor Gauss-Legendre over the box.
inline IntegralResult integrate_form(const GradedForm<Cplx>& f, const Chart& chart,
                                     const std::vector<VarId>& coords,
                                     const std::vector<VarId>& diffs, int order) {
    const auto& sp = *f.space();
    const int d = chart.dim;
    std::vector<int> coord_of(sp.size(), -1), row_of(sp.size(), -1);
    for (std::size_t i = 0; i < coords.size(); ++i) coord_of[coords[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < diffs.size(); ++i) row_of[diffs[i]] = static_cast<int>(i);

    struct Term {
        Cplx coeff;
        std::vector<int> exp;   // per ambient coordinate
        std::vector<int> rows;  // ambient rows of the differential minor, in monomial order
    };
    std::vector<Term> terms;
    for (const auto& [m, c] : f.terms()) {
        Term t;
        t.coeff = c;
        t.exp.assign(chart.ambient, 0);
        for (VarId v : m) {
            if (sp.parity(v))
                throw std::domain_error("integrate_form: odd variables present; body-project first");
            if (sp.degree(v) == 0) {
                if (coord_of[v] < 0) throw std::domain_error("integrate_form: unknown coordinate");
                ++t.exp[coord_of[v]];
            } else {
                if (row_of[v] < 0) throw std::domain_error("integrate_form: unknown differential");
                t.rows.push_back(row_of[v]);
            }
        }
        if (static_cast<int>(t.rows.size()) != d)
            throw std::domain_error("integrate_form: form degree does not match chart dimension");
        terms.push_back(std::move(t));
    }

    Cplx acc = 0.0;
    for_each_quadrature_node(chart, order, [&](const double*, const double* x, const double* J,
                                               double w) {
        Cplx h = 0.0;
        std::vector<double> minor(static_cast<std::size_t>(d) * d);
        for (const auto& t : terms) {
            double mono = 1.0;
            for (int k = 0; k < chart.ambient; ++k)
                for (int e = 0; e < t.exp[k]; ++e) mono *= x[k];
            for (int r = 0; r < d; ++r)
                for (int s = 0; s < d; ++s) minor[r * d + s] = J[t.rows[r] * d + s];
            h += t.coeff * (mono * det_small(minor, d));
        }
        acc += w * h;
    });

    IntegralResult res;
    res.value = acc.real();
    res.imag_residual = std::abs(acc.imag());
    res.order = order;
    return res;
}

}  // namespace hopfchern
