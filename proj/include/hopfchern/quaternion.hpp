#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <utility>

namespace hopfchern {

using Cplx = std::complex<double>;

/// Quaternion q = r0 + r1 i + r2 j + r3 k with i^2 = -1, ij = k and cyclic
/// relations. Value type, all operations pure.
struct Quaternion {
    double r0 = 0.0, r1 = 0.0, r2 = 0.0, r3 = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double a, double b, double c, double d) : r0(a), r1(b), r2(c), r3(d) {}
    constexpr explicit Quaternion(double a) : r0(a) {}

    static constexpr Quaternion one() { return {1, 0, 0, 0}; }
    static constexpr Quaternion i() { return {0, 1, 0, 0}; }
    static constexpr Quaternion j() { return {0, 0, 1, 0}; }
    static constexpr Quaternion k() { return {0, 0, 0, 1}; }

    constexpr Quaternion conj() const { return {r0, -r1, -r2, -r3}; }

    constexpr double norm2() const { return r0 * r0 + r1 * r1 + r2 * r2 + r3 * r3; }
    double norm() const { return std::sqrt(norm2()); }

    /// Normalized trace: tr(1) = 2, tr vanishes on i, j, k.
    constexpr double trace() const { return 2.0 * r0; }

    constexpr Quaternion operator-() const { return {-r0, -r1, -r2, -r3}; }

    friend constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        return {a.r0 + b.r0, a.r1 + b.r1, a.r2 + b.r2, a.r3 + b.r3};
    }
    friend constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        return {a.r0 - b.r0, a.r1 - b.r1, a.r2 - b.r2, a.r3 - b.r3};
    }
    friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.r0 * b.r0 - a.r1 * b.r1 - a.r2 * b.r2 - a.r3 * b.r3,
                a.r0 * b.r1 + a.r1 * b.r0 + a.r2 * b.r3 - a.r3 * b.r2,
                a.r0 * b.r2 - a.r1 * b.r3 + a.r2 * b.r0 + a.r3 * b.r1,
                a.r0 * b.r3 + a.r1 * b.r2 - a.r2 * b.r1 + a.r3 * b.r0};
    }
    friend constexpr Quaternion operator*(const Quaternion& a, double s) {
        return {a.r0 * s, a.r1 * s, a.r2 * s, a.r3 * s};
    }
    friend constexpr Quaternion operator*(double s, const Quaternion& a) { return a * s; }

    Quaternion inverse() const {
        const double n2 = norm2();
        return conj() * (1.0 / n2);
    }

    double max_abs() const {
        return std::max(std::max(std::abs(r0), std::abs(r1)), std::max(std::abs(r2), std::abs(r3)));
    }

    friend constexpr bool operator==(const Quaternion& a, const Quaternion& b) = default;
};

/// Right identification H ~ C^2: q = v1 + v2 j.
inline std::pair<Cplx, Cplx> quat_to_c2_right(const Quaternion& q) {
    return {Cplx(q.r0, q.r1), Cplx(q.r2, q.r3)};
}

inline Quaternion quat_from_c2_right(const Cplx& v1, const Cplx& v2) {
    return {v1.real(), v1.imag(), v2.real(), v2.imag()};
}

/// Left identification H ~ C^2: lambda = lambda1 - j lambda2.
inline std::pair<Cplx, Cplx> quat_to_c2_left(const Quaternion& q) {
    return {Cplx(q.r0, q.r1), Cplx(-q.r2, q.r3)};
}

inline Quaternion quat_from_c2_left(const Cplx& l1, const Cplx& l2) {
    return {l1.real(), l1.imag(), -l2.real(), l2.imag()};
}

/// 2x2 complex matrix of right multiplication by w in the right identification:
/// (v1', v2') = (v1, v2) * M. For unit w this is the Sp(1) ~ SU(2) isomorphism.
inline std::array<std::array<Cplx, 2>, 2> right_mul_matrix(const Quaternion& w) {
    const auto [w1, w2] = quat_to_c2_right(w);
    return {{{w1, w2}, {-std::conj(w2), std::conj(w1)}}};
}

/// 2x2 complex matrix of left multiplication by w in the left identification:
/// (l1', l2')^T = M * (l1, l2)^T.
inline std::array<std::array<Cplx, 2>, 2> left_mul_matrix(const Quaternion& w) {
    const auto [w1, w2] = quat_to_c2_right(w);
    return {{{w1, w2}, {-std::conj(w2), std::conj(w1)}}};
}

}  // namespace hopfchern
