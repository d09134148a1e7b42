#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "hopfchern/grassmann.hpp"
#include "hopfchern/quaternion.hpp"

namespace hopfchern {

/// Uniform interface over the three coefficient rings (complex numbers,
/// quaternions, complexified Grassmann algebra). All rings expose the
/// arithmetic operators directly; the traits add what generic code needs:
/// the adjoint-conjugation, a Grassmann parity, and a max-abs seminorm.
template <class R>
struct RingOps;

template <>
struct RingOps<Cplx> {
    static Cplx zero_like(const Cplx&) { return {0.0, 0.0}; }
    static Cplx one_like(const Cplx&) { return {1.0, 0.0}; }
    static Cplx conj_adjoint(const Cplx& x) { return std::conj(x); }
    static int parity(const Cplx&) { return 0; }
    static double max_abs(const Cplx& x) { return std::abs(x); }
    static Cplx scale(const Cplx& x, double s) { return x * s; }
    static Cplx inverse(const Cplx& x) { return 1.0 / x; }
    static double real_part(const Cplx& x) { return x.real(); }
    /// Square root of a positive "real" scalar in the ring.
    static Cplx sqrt_positive(const Cplx& x) {
        if (!(x.real() > 0.0)) throw std::domain_error("sqrt_positive: non-positive value");
        return {std::sqrt(x.real()), 0.0};
    }
};

template <>
struct RingOps<Quaternion> {
    static Quaternion zero_like(const Quaternion&) { return {}; }
    static Quaternion one_like(const Quaternion&) { return Quaternion::one(); }
    static Quaternion conj_adjoint(const Quaternion& x) { return x.conj(); }
    static int parity(const Quaternion&) { return 0; }
    static double max_abs(const Quaternion& x) { return x.max_abs(); }
    static Quaternion scale(const Quaternion& x, double s) { return x * s; }
    static Quaternion inverse(const Quaternion& x) { return x.inverse(); }
    static double real_part(const Quaternion& x) { return x.r0; }
    static Quaternion sqrt_positive(const Quaternion& x) {
        if (!(x.r0 > 0.0)) throw std::domain_error("sqrt_positive: non-positive value");
        return Quaternion(std::sqrt(x.r0));
    }
};

template <>
struct RingOps<GrassmannNumber> {
    static GrassmannNumber zero_like(const GrassmannNumber& x) {
        return GrassmannNumber(x.generators());
    }
    static GrassmannNumber one_like(const GrassmannNumber& x) {
        return GrassmannNumber::scalar(1.0, x.generators());
    }
    static GrassmannNumber conj_adjoint(const GrassmannNumber& x) { return x.involution(); }
    static int parity(const GrassmannNumber& x) { return x.parity(); }
    static double max_abs(const GrassmannNumber& x) { return x.max_abs(); }
    static GrassmannNumber scale(const GrassmannNumber& x, double s) { return x * s; }
    static GrassmannNumber inverse(const GrassmannNumber& x) { return x.inverse(); }
    static double real_part(const GrassmannNumber& x) { return x.body().real(); }
    static GrassmannNumber sqrt_positive(const GrassmannNumber& x) { return x.sqrt(); }
};

}  // namespace hopfchern
