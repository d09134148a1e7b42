#pragma once

#include <cmath>
#include <stdexcept>

#include "hopfchern/graded_matrix.hpp"
#include "hopfchern/rng.hpp"

namespace hopfchern {

using GMat = GradedMatrix<GrassmannNumber>;

inline std::vector<int> uosp_signature() { return {1, 0, 0}; }

inline GMat uosp_zero_matrix(int L) {
    return GMat(uosp_signature(), uosp_signature(), GrassmannNumber(L));
}

/// The five generators of osp(1,2) in the defining 3x3 representation,
/// signature (1|2) with index 0 odd.
struct Osp12Generators {
    GMat A0, A1, A2, Rp, Rm;
};

inline Osp12Generators osp12_generators(int L = 2) {
    const Cplx I(0.0, 1.0);
    auto sc = [L](const Cplx& c) { return GrassmannNumber::scalar(c, L); };
    Osp12Generators g{uosp_zero_matrix(L), uosp_zero_matrix(L), uosp_zero_matrix(L),
                      uosp_zero_matrix(L), uosp_zero_matrix(L)};
    g.A0.at(1, 1) = sc(0.5 * I);
    g.A0.at(2, 2) = sc(-0.5 * I);
    g.A1.at(1, 2) = sc(0.5 * I);
    g.A1.at(2, 1) = sc(0.5 * I);
    g.A2.at(1, 2) = sc(0.5);
    g.A2.at(2, 1) = sc(-0.5);
    g.Rp.at(0, 1) = sc(-0.5);
    g.Rp.at(2, 0) = sc(-0.5);
    g.Rm.at(0, 2) = sc(0.5);
    g.Rm.at(1, 0) = sc(-0.5);
    return g;
}

/// exp of an even Grassmann scalar: exp(body) times the finite soul series.
inline GrassmannNumber grassmann_exp(const GrassmannNumber& x) {
    if (x.parity() != 0) throw std::domain_error("grassmann_exp: even argument required");
    const Cplx eb = std::exp(x.body());
    const GrassmannNumber s = x.soul();
    const int L = x.generators();
    GrassmannNumber acc = GrassmannNumber::scalar(1.0, L);
    GrassmannNumber pw = GrassmannNumber::scalar(1.0, L);
    double fact = 1.0;
    for (int k = 1; k <= L; ++k) {
        pw = pw * s;
        if (pw.is_zero()) break;
        fact *= k;
        acc = acc + pw * (1.0 / fact);
    }
    return acc * eb;
}

/// Element X = a0 A0 + a1 A1 + a2 A2 + eta R+ + eta^o R- of uosp(1,2).
/// The a_k must be even and real under the involution, eta odd.
inline GMat uosp_algebra_element(const GrassmannNumber& a0, const GrassmannNumber& a1,
                                 const GrassmannNumber& a2, const GrassmannNumber& eta) {
    for (const auto* c : {&a0, &a1, &a2}) {
        if (c->parity() != 0 || max_abs_diff(c->involution(), *c) > 1e-12)
            throw std::domain_error("uosp: even coefficients must satisfy a^o = a");
    }
    if (!eta.is_zero() && eta.parity() != 1)
        throw std::domain_error("uosp: eta must be odd");
    const auto g = osp12_generators(a0.generators());
    return g.A0.left_scaled(a0) + g.A1.left_scaled(a1) + g.A2.left_scaled(a2) +
           g.Rp.left_scaled(eta) + g.Rm.left_scaled(eta.involution());
}

/// Group element in the (a, b, eta) parametrization; the matrix is the
/// cached closed form. Constraint: a a^o + b b^o = 1.
struct UospElement {
    GrassmannNumber a, b, eta;
    GMat matrix;
};

inline GMat uosp_closed_form(const GrassmannNumber& a, const GrassmannNumber& b,
                             const GrassmannNumber& eta) {
    const int L = a.generators();
    const GrassmannNumber one = GrassmannNumber::scalar(1.0, L);
    const GrassmannNumber etao = eta.involution();
    const GrassmannNumber ee = eta * etao;
    const GrassmannNumber f8 = one - ee * 0.125;
    const GrassmannNumber ao = a.involution();
    const GrassmannNumber bo = b.involution();
    GMat s = uosp_zero_matrix(L);
    s.at(0, 0) = one + ee * 0.25;
    s.at(0, 1) = eta * (-0.5);
    s.at(0, 2) = etao * 0.5;
    s.at(1, 0) = (a * etao - bo * eta) * (-0.5);
    s.at(1, 1) = a * f8;
    s.at(1, 2) = -(bo * f8);
    s.at(2, 0) = (b * etao + ao * eta) * (-0.5);
    s.at(2, 1) = b * f8;
    s.at(2, 2) = ao * f8;
    return s;
}

inline UospElement uosp_element(const GrassmannNumber& a, const GrassmannNumber& b,
                                const GrassmannNumber& eta, double tol = 1e-12) {
    if (a.parity() != 0 || b.parity() != 0)
        throw std::domain_error("uosp: a, b must be even");
    if (!eta.is_zero() && eta.parity() != 1)
        throw std::domain_error("uosp: eta must be odd");
    const GrassmannNumber one = GrassmannNumber::scalar(1.0, a.generators());
    const GrassmannNumber sdet = a * a.involution() + b * b.involution();
    if (max_abs_diff(sdet, one) > tol)
        throw std::domain_error("uosp: a a^o + b b^o = 1 violated");
    return {a, b, eta, uosp_closed_form(a, b, eta)};
}

/// Grassmann extension of U(1): w = exp(i lambda / 2) with lambda even and
/// real under the involution, so w w^o = 1.
struct SuperU1Element {
    GrassmannNumber lambda;

    GrassmannNumber w() const {
        return grassmann_exp(lambda * Cplx(0.0, 0.5));
    }

    GMat matrix() const {
        const int L = lambda.generators();
        const GrassmannNumber ww = w();
        GMat m = uosp_zero_matrix(L);
        m.at(0, 0) = GrassmannNumber::scalar(1.0, L);
        m.at(1, 1) = ww;
        m.at(2, 2) = ww.involution();
        return m;
    }
};

inline SuperU1Element super_u1_element(const GrassmannNumber& lambda, double tol = 1e-12) {
    if (lambda.parity() != 0 || max_abs_diff(lambda.involution(), lambda) > tol)
        throw std::domain_error("super_u1: lambda must be even with lambda^o = lambda");
    return {lambda};
}

/// Right action s(a, b, eta) . w = s(a w, b w, eta w).
inline UospElement super_u1_act(const UospElement& s, const SuperU1Element& u) {
    const GrassmannNumber w = u.w();
    return uosp_element(s.a * w, s.b * w, s.eta * w);
}

/// Random group element via the exponential map. Bodies of the even
/// parameters are uniform angles; eta has complex Gaussian components on the
/// first two generators; optional even soul on the a_k.
inline UospElement uosp_random(Rng& rng, int L = 2, bool with_even_soul = true) {
    GrassmannNumber a0 = GrassmannNumber::scalar(rng.uniform(-3.0, 3.0), L);
    GrassmannNumber a1 = GrassmannNumber::scalar(rng.uniform(-3.0, 3.0), L);
    GrassmannNumber a2 = GrassmannNumber::scalar(rng.uniform(-3.0, 3.0), L);
    if (with_even_soul) {
        GrassmannNumber tt = GrassmannNumber::generator(0, L) * GrassmannNumber::generator(1, L);
        a0 = a0 + tt * rng.uniform(-0.5, 0.5);
    }
    const GrassmannNumber eta = GrassmannNumber::generator(0, L) * rng.normal_complex() +
                                GrassmannNumber::generator(1, L) * rng.normal_complex();
    const GMat s = uosp_algebra_element(a0, a1, a2, eta).exponential();
    // Read the parameters back off the closed form.
    const GrassmannNumber one = GrassmannNumber::scalar(1.0, L);
    GrassmannNumber eta_out = s.at(0, 1) * (-2.0);
    const GrassmannNumber ee = eta_out * eta_out.involution();
    const GrassmannNumber f8inv = (one - ee * 0.125).inverse();
    GrassmannNumber a = s.at(1, 1) * f8inv;
    GrassmannNumber b = s.at(2, 1) * f8inv;
    return uosp_element(a, b, eta_out, 1e-9);
}

}  // namespace hopfchern
