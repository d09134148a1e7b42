#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "hopfchern/graded_matrix.hpp"
#include "hopfchern/quadrature.hpp"
#include "hopfchern/rng.hpp"
#include "hopfchern/uosp.hpp"

namespace hopfchern {

enum class BundleCase { monopole, graded, instanton };

inline const char* to_string(BundleCase c) {
    switch (c) {
        case BundleCase::monopole: return "monopole";
        case BundleCase::graded: return "graded";
        case BundleCase::instanton: return "instanton";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Total-space points
// ---------------------------------------------------------------------------

/// Point of S^3 in C^2, |a|^2 + |b|^2 = 1.
struct MonopolePoint {
    Cplx a, b;
};

/// Point of S^7 in H^2, |a|^2 + |b|^2 = 1.
struct InstantonPoint {
    Quaternion a, b;
};

/// Point of the graded total space: a, b even, eta odd, a a^o + b b^o = 1.
struct GradedPoint {
    GrassmannNumber a, b, eta;
};

using TotalPoint = std::variant<MonopolePoint, GradedPoint, InstantonPoint>;

inline double constraint_residual(const MonopolePoint& t) {
    return std::abs(std::norm(t.a) + std::norm(t.b) - 1.0);
}
inline double constraint_residual(const InstantonPoint& t) {
    return std::abs(t.a.norm2() + t.b.norm2() - 1.0);
}
inline double constraint_residual(const GradedPoint& t) {
    const GrassmannNumber s = t.a * t.a.involution() + t.b * t.b.involution();
    return max_abs_diff(s, GrassmannNumber::scalar(1.0, t.a.generators()));
}

template <class P>
void require_on_constraint(const P& t, double tol = 1e-9) {
    if (constraint_residual(t) > tol)
        throw std::domain_error("bundle: point violates the sphere constraint");
}

// ---------------------------------------------------------------------------
// Hopf projections and invariant functions
// ---------------------------------------------------------------------------

inline std::array<double, 3> hopf_project(const MonopolePoint& t) {
    require_on_constraint(t);
    const Cplx ab = t.a * std::conj(t.b);
    return {std::norm(t.a) - std::norm(t.b), 2.0 * ab.real(), -2.0 * ab.imag()};
}

inline std::array<double, 5> hopf_project(const InstantonPoint& t) {
    require_on_constraint(t);
    const Quaternion ab = t.a * t.b.conj();  // = (x4 + xi)/2
    return {t.a.norm2() - t.b.norm2(), 2.0 * ab.r1, 2.0 * ab.r2, 2.0 * ab.r3, 2.0 * ab.r0};
}

/// Base point of the supersphere: three even coordinates and two odd ones
/// with xi_-^o = xi_+ and sum x^2 + 2 xi_- xi_+ = 1.
struct GradedBase {
    std::array<GrassmannNumber, 3> x;
    GrassmannNumber xi_minus, xi_plus;
};

inline GradedBase hopf_project(const GradedPoint& t) {
    require_on_constraint(t);
    const GrassmannNumber ao = t.a.involution(), bo = t.b.involution();
    const GrassmannNumber etao = t.eta.involution();
    const int L = t.a.generators();
    const GrassmannNumber one = GrassmannNumber::scalar(1.0, L);
    const GrassmannNumber f = one - t.eta * etao * 0.25;
    GradedBase base{{GrassmannNumber(L), GrassmannNumber(L), GrassmannNumber(L)},
                    GrassmannNumber(L), GrassmannNumber(L)};
    base.x[0] = (t.a * ao - t.b * bo) * f;
    base.x[1] = (t.a * bo + t.b * ao) * f;
    base.x[2] = (t.a * bo - t.b * ao) * f * Cplx(0.0, 1.0);
    base.xi_minus = (t.a * etao + t.eta * bo) * (-0.5);
    base.xi_plus = (t.eta * ao - t.b * etao) * 0.5;
    return base;
}

struct MonopoleInvariants {
    double a2, b2;
    Cplx ab_bar;  // a conj(b) = (x1 - i x2)/2
};

inline MonopoleInvariants invariants_from_base(const std::array<double, 3>& x) {
    return {0.5 * (1.0 + x[0]), 0.5 * (1.0 - x[0]), 0.5 * Cplx(x[1], -x[2])};
}

struct InstantonInvariants {
    double a2, b2;
    Quaternion ab_bar;  // a conj(b) = (x4 + xi)/2
};

inline InstantonInvariants invariants_from_base(const std::array<double, 5>& x) {
    return {0.5 * (1.0 + x[0]), 0.5 * (1.0 - x[0]),
            Quaternion(0.5 * x[4], 0.5 * x[1], 0.5 * x[2], 0.5 * x[3])};
}

struct GradedInvariants {
    GrassmannNumber xi_prod;  // xi_- xi_+ = eta eta^o / 4
    GrassmannNumber aao, bbo, abo, eta_ao, eta_bo;
};

inline GradedInvariants invariants_from_base(const GradedBase& base) {
    const int L = base.x[0].generators();
    const GrassmannNumber one = GrassmannNumber::scalar(1.0, L);
    const GrassmannNumber xx = base.xi_minus * base.xi_plus;
    const GrassmannNumber g = one + xx;
    GradedInvariants inv{xx, GrassmannNumber(L), GrassmannNumber(L), GrassmannNumber(L),
                         GrassmannNumber(L), GrassmannNumber(L)};
    inv.aao = (one + base.x[0] * g) * 0.5;
    inv.bbo = (one - base.x[0] * g) * 0.5;
    inv.abo = (base.x[1] - base.x[2] * Cplx(0.0, 1.0)) * g * 0.5;
    inv.eta_ao = -(base.x[1] + base.x[2] * Cplx(0.0, 1.0)) * base.xi_minus +
                 (one + base.x[0]) * base.xi_plus;
    inv.eta_bo = (base.x[1] - base.x[2] * Cplx(0.0, 1.0)) * base.xi_plus -
                 (one - base.x[0]) * base.xi_minus;
    return inv;
}

// ---------------------------------------------------------------------------
// Kets
// ---------------------------------------------------------------------------

inline GradedMatrix<Cplx> standard_ket(const MonopolePoint& t) {
    require_on_constraint(t);
    GradedMatrix<Cplx> k = GradedMatrix<Cplx>::plain(2, 1);
    k.at(0, 0) = t.a;
    k.at(1, 0) = t.b;
    return k;
}

inline GradedMatrix<Quaternion> standard_ket(const InstantonPoint& t) {
    require_on_constraint(t);
    GradedMatrix<Quaternion> k = GradedMatrix<Quaternion>::plain(2, 1);
    k.at(0, 0) = t.a;
    k.at(1, 0) = t.b;
    return k;
}

/// Graded ket (-eta/2, a(1 - eta eta^o/8), b(1 - eta eta^o/8)); its dagger is
/// the bra (eta^o/2, a^o(1 - eta eta^o/8), b^o(1 - eta eta^o/8)).
inline GMat standard_ket(const GradedPoint& t) {
    require_on_constraint(t);
    const int L = t.a.generators();
    const GrassmannNumber one = GrassmannNumber::scalar(1.0, L);
    const GrassmannNumber f8 = one - t.eta * t.eta.involution() * 0.125;
    GMat k(uosp_signature(), {0}, GrassmannNumber(L));
    k.at(0, 0) = t.eta * (-0.5);
    k.at(1, 0) = t.a * f8;
    k.at(2, 0) = t.b * f8;
    return k;
}

template <class R>
R ket_inner(const GradedMatrix<R>& u, const GradedMatrix<R>& v) {
    return (u.dagger() * v).at(0, 0);
}

/// Transposed instanton projector from the right ket-bra convention: the row
/// (a, b) multiplied right-to-left against the column (conj a, conj b),
/// q_ij = psi_j conj(psi_i). Quaternions do not commute, so this is not the
/// same as conj(psi_i) psi_j; the convention is fixed by requiring q = p^t
/// entrywise.
inline GradedMatrix<Quaternion> transposed_right_ket_projector(const InstantonPoint& t) {
    require_on_constraint(t);
    const Quaternion psi[2] = {t.a, t.b};
    auto q = GradedMatrix<Quaternion>::plain(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) q.at(i, j) = psi[j] * psi[i].conj();
    return q;
}

// ---------------------------------------------------------------------------
// Structure group actions
// ---------------------------------------------------------------------------

inline MonopolePoint right_action(const MonopolePoint& t, const Cplx& w) {
    if (std::abs(std::norm(w) - 1.0) > 1e-9)
        throw std::domain_error("right_action: group element must be unit modulus");
    return {t.a * w, t.b * w};
}

inline InstantonPoint right_action(const InstantonPoint& t, const Quaternion& w) {
    if (std::abs(w.norm2() - 1.0) > 1e-9)
        throw std::domain_error("right_action: group element must be a unit quaternion");
    return {t.a * w, t.b * w};
}

inline GradedPoint right_action(const GradedPoint& t, const GrassmannNumber& w) {
    const GrassmannNumber one = GrassmannNumber::scalar(1.0, w.generators());
    if (max_abs_diff(w * w.involution(), one) > 1e-9)
        throw std::domain_error("right_action: group element must satisfy w w^o = 1");
    return {t.a * w, t.b * w, t.eta * w};
}

// ---------------------------------------------------------------------------
// Equivariant maps from sections
// ---------------------------------------------------------------------------

/// phi = <psi | (f_1, ..., f_N)^T> with the f_i invariant functions evaluated
/// at the projected base point; satisfies phi(t w) = w^{-1} phi(t).
inline Cplx equivariant_from_sections(
    const std::vector<std::function<Cplx(const std::array<double, 3>&)>>& fs,
    const MonopolePoint& t) {
    if (fs.size() != 2) throw std::domain_error("equivariant: monopole case needs 2 sections");
    const auto x = hopf_project(t);
    return std::conj(t.a) * fs[0](x) + std::conj(t.b) * fs[1](x);
}

inline Quaternion equivariant_from_sections(
    const std::vector<std::function<Quaternion(const std::array<double, 5>&)>>& fs,
    const InstantonPoint& t) {
    if (fs.size() != 2) throw std::domain_error("equivariant: instanton case needs 2 sections");
    const auto x = hopf_project(t);
    return t.a.conj() * fs[0](x) + t.b.conj() * fs[1](x);
}

/// Graded case, sections ordered (h, f, g).
inline GrassmannNumber equivariant_from_sections(
    const std::vector<std::function<GrassmannNumber(const GradedBase&)>>& fs,
    const GradedPoint& t) {
    if (fs.size() != 3) throw std::domain_error("equivariant: graded case needs 3 sections");
    const auto base = hopf_project(t);
    const GMat bra = standard_ket(t).dagger();
    return bra.at(0, 0) * fs[0](base) + bra.at(0, 1) * fs[1](base) + bra.at(0, 2) * fs[2](base);
}

// ---------------------------------------------------------------------------
// Tangents and connection forms
// ---------------------------------------------------------------------------

struct MonopoleTangent {
    Cplx da, db;
};
struct InstantonTangent {
    Quaternion da, db;
};
struct GradedTangent {
    GrassmannNumber da, db, deta;
};

inline MonopoleTangent random_tangent(Rng& rng, const MonopolePoint& t) {
    Cplx u = rng.normal_complex(), v = rng.normal_complex();
    const double c = (std::conj(t.a) * u + std::conj(t.b) * v).real();
    u -= c * t.a;
    v -= c * t.b;
    return {u, v};
}

inline InstantonTangent random_tangent(Rng& rng, const InstantonPoint& t) {
    Quaternion u{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    Quaternion v{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    const double c = (t.a.conj() * u + t.b.conj() * v).r0;
    u = u - t.a * c;
    v = v - t.b * c;
    return {u, v};
}

inline GradedTangent random_tangent(Rng& rng, const GradedPoint& t) {
    const int L = t.a.generators();
    GrassmannNumber u = GrassmannNumber::scalar(rng.normal_complex(), L);
    GrassmannNumber v = GrassmannNumber::scalar(rng.normal_complex(), L);
    GrassmannNumber de = GrassmannNumber::generator(0, L) * rng.normal_complex() +
                         GrassmannNumber::generator(1, L) * rng.normal_complex();
    // Project onto the linearized constraint d(a a^o + b b^o) = 0.
    const GrassmannNumber c = u * t.a.involution() + t.a * u.involution() +
                              v * t.b.involution() + t.b * v.involution();
    u = u - c * t.a * 0.5;
    v = v - c * t.b * 0.5;
    return {u, v, de};
}

/// Connection 1-form <psi | d psi> evaluated on a tangent.
inline Cplx connection_form(const MonopolePoint& t, const MonopoleTangent& v) {
    return std::conj(t.a) * v.da + std::conj(t.b) * v.db;
}

inline Quaternion connection_form(const InstantonPoint& t, const InstantonTangent& v) {
    return t.a.conj() * v.da + t.b.conj() * v.db;
}

inline GrassmannNumber connection_form(const GradedPoint& t, const GradedTangent& v) {
    const int L = t.a.generators();
    const GrassmannNumber one = GrassmannNumber::scalar(1.0, L);
    const GrassmannNumber etao = t.eta.involution();
    const GrassmannNumber detao = v.deta.involution();
    const GrassmannNumber f8 = one - t.eta * etao * 0.125;
    const GrassmannNumber df8 = (v.deta * etao + t.eta * detao) * (-0.125);
    const GMat ket = standard_ket(t);
    GMat dket(uosp_signature(), {0}, GrassmannNumber(L));
    dket.at(0, 0) = v.deta * (-0.5);
    dket.at(1, 0) = v.da * f8 + t.a * df8;
    dket.at(2, 0) = v.db * f8 + t.b * df8;
    return (ket.dagger() * dket).at(0, 0);
}

/// Closed-form graded connection (a^o da + b^o db)(1 - eta eta^o/4)
/// - (eta^o d eta + eta d eta^o)/8, used as a cross-check.
inline GrassmannNumber graded_connection_closed_form(const GradedPoint& t,
                                                     const GradedTangent& v) {
    const int L = t.a.generators();
    const GrassmannNumber one = GrassmannNumber::scalar(1.0, L);
    const GrassmannNumber etao = t.eta.involution();
    return (t.a.involution() * v.da + t.b.involution() * v.db) * (one - t.eta * etao * 0.25) -
           (etao * v.deta + t.eta * v.deta.involution()) * 0.125;
}

// ---------------------------------------------------------------------------
// Random sampling (uniform via normalized Gaussians; deterministic seed)
// ---------------------------------------------------------------------------

inline MonopolePoint sample_monopole(Rng& rng) {
    Cplx a = rng.normal_complex(), b = rng.normal_complex();
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
}

inline InstantonPoint sample_instanton(Rng& rng) {
    Quaternion a{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    Quaternion b{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    const double n = std::sqrt(a.norm2() + b.norm2());
    return {a * (1.0 / n), b * (1.0 / n)};
}

/// Pure-body (a, b) on the 3-sphere plus eta on the first two generators;
/// the normalization constraint is then exact in the algebra.
inline GradedPoint sample_graded(Rng& rng, int L = 2, double eta_scale = 1.0) {
    Cplx a = rng.normal_complex(), b = rng.normal_complex();
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    a /= n;
    b /= n;
    const GrassmannNumber eta = GrassmannNumber::generator(0, L) * (rng.normal_complex() * eta_scale) +
                                GrassmannNumber::generator(1, L) * (rng.normal_complex() * eta_scale);
    return {GrassmannNumber::scalar(a, L), GrassmannNumber::scalar(b, L), eta};
}

/// Named chart lookup per case. Base charts: "spherical" (polar S^2, also for
/// the supersphere body), "cyclic" (rotated S^2 cross-check chart),
/// "hyperspherical" (S^4). Total-space charts: "hopf" (Hopf angles on S^3 or
/// S^7). Unknown names raise a lookup error.
inline Chart chart_for(BundleCase c, const std::string& name) {
    switch (c) {
        case BundleCase::monopole:
        case BundleCase::graded:
            if (name == "spherical") return s2_chart_polar();
            if (name == "cyclic") return s2_chart_cyclic();
            if (name == "hopf" && c == BundleCase::monopole) return s3_chart_hopf();
            break;
        case BundleCase::instanton:
            if (name == "hyperspherical") return s4_chart_hyperspherical();
            if (name == "hopf") return s7_chart_hopf();
            break;
    }
    throw std::out_of_range("chart_for: unknown chart '" + name + "' for case " +
                            to_string(c));
}

/// Deterministic batch sampler of total-space points.
inline std::vector<TotalPoint> sample(BundleCase c, std::uint64_t seed, int n, int L = 2) {
    Rng rng(seed);
    std::vector<TotalPoint> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        switch (c) {
            case BundleCase::monopole: out.emplace_back(sample_monopole(rng)); break;
            case BundleCase::graded: out.emplace_back(sample_graded(rng, L)); break;
            case BundleCase::instanton: out.emplace_back(sample_instanton(rng)); break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Chart-adapted local sections with analytic parameter derivatives
// ---------------------------------------------------------------------------

/// Section over the polar S^2 chart: a = cos(t/2), b = sin(t/2) e^{i phi};
/// hopf_project(section(u)) reproduces the chart point.
struct MonopoleSection {
    MonopolePoint point;
    std::array<Cplx, 2> da, db;  // derivative per chart parameter
};

inline MonopoleSection monopole_section(const double* u) {
    const double th = u[0], ph = u[1];
    const Cplx eip = std::exp(Cplx(0.0, ph));
    MonopoleSection s;
    s.point = {std::cos(0.5 * th), std::sin(0.5 * th) * eip};
    s.da = {-0.5 * std::sin(0.5 * th), 0.0};
    s.db = {0.5 * std::cos(0.5 * th) * eip, Cplx(0.0, 1.0) * s.point.b};
    return s;
}

/// Section over the hyperspherical S^4 chart: a = cos(t1/2),
/// b = sin(t1/2) (n4 - n1 i - n2 j - n3 k) with n the unit 4-vector of the
/// chart's angular part.
struct InstantonSection {
    InstantonPoint point;
    std::array<Quaternion, 4> da, db;
};

inline InstantonSection instanton_section(const double* u) {
    const double t1 = u[0], t2 = u[1], t3 = u[2], ph = u[3];
    const double s2 = std::sin(t2), c2 = std::cos(t2);
    const double s3 = std::sin(t3), c3 = std::cos(t3);
    const double sp = std::sin(ph), cp = std::cos(ph);
    const auto uq = [&](double n1, double n2, double n3, double n4) {
        return Quaternion(n4, -n1, -n2, -n3);
    };
    const Quaternion q = uq(c2, s2 * c3, s2 * s3 * cp, s2 * s3 * sp);
    const Quaternion dq_t2 = uq(-s2, c2 * c3, c2 * s3 * cp, c2 * s3 * sp);
    const Quaternion dq_t3 = uq(0.0, -s2 * s3, s2 * c3 * cp, s2 * c3 * sp);
    const Quaternion dq_ph = uq(0.0, 0.0, -s2 * s3 * sp, s2 * s3 * cp);
    const double ch = std::cos(0.5 * t1), sh = std::sin(0.5 * t1);
    InstantonSection s;
    s.point = {Quaternion(ch), q * sh};
    s.da = {Quaternion(-0.5 * sh), Quaternion{}, Quaternion{}, Quaternion{}};
    s.db = {q * (0.5 * ch), dq_t2 * sh, dq_t3 * sh, dq_ph * sh};
    return s;
}

/// Section over the body S^2 chart with constant odd parameter eta.
struct GradedSection {
    GradedPoint point;
    std::array<GrassmannNumber, 2> da, db;
};

inline GradedSection graded_section(const double* u, const GrassmannNumber& eta) {
    const int L = eta.generators();
    const double th = u[0], ph = u[1];
    const Cplx eip = std::exp(Cplx(0.0, ph));
    GradedSection s{{GrassmannNumber(L), GrassmannNumber(L), eta},
                    {GrassmannNumber(L), GrassmannNumber(L)},
                    {GrassmannNumber(L), GrassmannNumber(L)}};
    s.point.a = GrassmannNumber::scalar(std::cos(0.5 * th), L);
    s.point.b = GrassmannNumber::scalar(std::sin(0.5 * th) * eip, L);
    s.da[0] = GrassmannNumber::scalar(-0.5 * std::sin(0.5 * th), L);
    s.da[1] = GrassmannNumber(L);
    s.db[0] = GrassmannNumber::scalar(0.5 * std::cos(0.5 * th) * eip, L);
    s.db[1] = GrassmannNumber::scalar(Cplx(0.0, 1.0) * std::sin(0.5 * th) * eip, L);
    return s;
}

// ---------------------------------------------------------------------------
// Random group elements
// ---------------------------------------------------------------------------

inline GradedMatrix<Cplx> random_su2(Rng& rng) {
    Cplx a = rng.normal_complex(), b = rng.normal_complex();
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    a /= n;
    b /= n;
    GradedMatrix<Cplx> s = GradedMatrix<Cplx>::plain(2, 2);
    s.at(0, 0) = a;
    s.at(0, 1) = -std::conj(b);
    s.at(1, 0) = b;
    s.at(1, 1) = std::conj(a);
    return s;
}

inline GradedMatrix<Quaternion> random_sp2(Rng& rng) {
    auto rv = [&rng] { return Quaternion{rng.normal(), rng.normal(), rng.normal(), rng.normal()}; };
    Quaternion u0 = rv(), u1 = rv(), v0 = rv(), v1 = rv();
    double n = std::sqrt(u0.norm2() + u1.norm2());
    u0 = u0 * (1.0 / n);
    u1 = u1 * (1.0 / n);
    const Quaternion ip = u0.conj() * v0 + u1.conj() * v1;
    v0 = v0 - u0 * ip;
    v1 = v1 - u1 * ip;
    n = std::sqrt(v0.norm2() + v1.norm2());
    v0 = v0 * (1.0 / n);
    v1 = v1 * (1.0 / n);
    GradedMatrix<Quaternion> s = GradedMatrix<Quaternion>::plain(2, 2);
    s.at(0, 0) = u0;
    s.at(1, 0) = u1;
    s.at(0, 1) = v0;
    s.at(1, 1) = v1;
    return s;
}

}  // namespace hopfchern
