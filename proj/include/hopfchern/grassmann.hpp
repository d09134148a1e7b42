#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopfchern/quaternion.hpp"

namespace hopfchern {

/// Element of the complexified Grassmann algebra C_L with L generators
/// theta_0 .. theta_{L-1}. Coefficients are stored sparsely, keyed by the
/// generator subset as a bitmask with ascending-index ordering.
///
/// The graded involution acts on generators pairwise,
///   theta_{2m}^o = theta_{2m+1},  theta_{2m+1}^o = -theta_{2m},
/// and antilinearly on coefficients. This needs L even; it satisfies
/// (xy)^o = x^o y^o and x^oo = (-1)^{|x|} x.
class GrassmannNumber {
public:
    static constexpr int kMaxGenerators = 16;

    explicit GrassmannNumber(int L = 2) : L_(L) { check_L(L); }

    static GrassmannNumber scalar(const Cplx& c, int L = 2) {
        GrassmannNumber g(L);
        if (c != Cplx(0.0)) g.coef_[0u] = c;
        return g;
    }

    static GrassmannNumber generator(int i, int L = 2) {
        check_L(L);
        if (i < 0 || i >= L) throw std::domain_error("grassmann: generator index out of range");
        GrassmannNumber g(L);
        g.coef_[1u << i] = Cplx(1.0);
        return g;
    }

    int generators() const { return L_; }

    bool is_zero(double tol = 0.0) const {
        for (const auto& [m, c] : coef_)
            if (std::abs(c) > tol) return false;
        return true;
    }

    Cplx body() const {
        auto it = coef_.find(0u);
        return it == coef_.end() ? Cplx(0.0) : it->second;
    }

    GrassmannNumber soul() const {
        GrassmannNumber g(L_);
        for (const auto& [m, c] : coef_)
            if (m != 0u) g.coef_[m] = c;
        return g;
    }

    const std::map<std::uint32_t, Cplx>& coefficients() const { return coef_; }

    Cplx coefficient(std::uint32_t mask) const {
        auto it = coef_.find(mask);
        return it == coef_.end() ? Cplx(0.0) : it->second;
    }

    void set_coefficient(std::uint32_t mask, const Cplx& c) {
        if (mask >= (1u << L_)) throw std::domain_error("grassmann: subset outside algebra");
        if (c == Cplx(0.0))
            coef_.erase(mask);
        else
            coef_[mask] = c;
    }

    bool homogeneous() const {
        int par = -1;
        for (const auto& [m, c] : coef_) {
            const int p = std::popcount(m) & 1;
            if (par < 0)
                par = p;
            else if (par != p)
                return false;
        }
        return true;
    }

    /// Grassmann parity 0/1; zero counts as even. Throws on inhomogeneous input.
    int parity() const {
        int par = -1;
        for (const auto& [m, c] : coef_) {
            const int p = std::popcount(m) & 1;
            if (par < 0)
                par = p;
            else if (par != p)
                throw std::domain_error("grassmann: parity of inhomogeneous element");
        }
        return par < 0 ? 0 : par;
    }

    double max_abs() const {
        double r = 0.0;
        for (const auto& [m, c] : coef_) r = std::max(r, std::abs(c));
        return r;
    }

    GrassmannNumber operator-() const {
        GrassmannNumber g(L_);
        for (const auto& [m, c] : coef_) g.coef_[m] = -c;
        return g;
    }

    friend GrassmannNumber operator+(const GrassmannNumber& a, const GrassmannNumber& b) {
        a.check_same(b);
        GrassmannNumber g = a;
        for (const auto& [m, c] : b.coef_) {
            auto [it, fresh] = g.coef_.try_emplace(m, c);
            if (!fresh) {
                it->second += c;
                if (it->second == Cplx(0.0)) g.coef_.erase(it);
            }
        }
        return g;
    }

    friend GrassmannNumber operator-(const GrassmannNumber& a, const GrassmannNumber& b) {
        return a + (-b);
    }

    friend GrassmannNumber operator*(const GrassmannNumber& a, const GrassmannNumber& b) {
        a.check_same(b);
        GrassmannNumber g(a.L_);
        for (const auto& [ma, ca] : a.coef_) {
            for (const auto& [mb, cb] : b.coef_) {
                if (ma & mb) continue;  // repeated generator
                const int s = merge_sign(ma, mb);
                const Cplx c = ca * cb * static_cast<double>(s);
                const std::uint32_t m = ma | mb;
                auto [it, fresh] = g.coef_.try_emplace(m, c);
                if (!fresh) {
                    it->second += c;
                    if (it->second == Cplx(0.0)) g.coef_.erase(it);
                }
            }
        }
        return g;
    }

    friend GrassmannNumber operator*(const GrassmannNumber& a, const Cplx& s) {
        GrassmannNumber g(a.L_);
        if (s == Cplx(0.0)) return g;
        for (const auto& [m, c] : a.coef_) g.coef_[m] = c * s;
        return g;
    }
    friend GrassmannNumber operator*(const Cplx& s, const GrassmannNumber& a) { return a * s; }
    friend GrassmannNumber operator*(const GrassmannNumber& a, double s) { return a * Cplx(s); }
    friend GrassmannNumber operator*(double s, const GrassmannNumber& a) { return a * Cplx(s); }

    /// Graded involution.
    GrassmannNumber involution() const {
        GrassmannNumber g(L_);
        for (const auto& [m, c] : coef_) {
            std::vector<int> image;
            int sign = 1;
            for (int i = 0; i < L_; ++i) {
                if (!(m & (1u << i))) continue;
                if (i % 2 == 0) {
                    image.push_back(i + 1);
                } else {
                    image.push_back(i - 1);
                    sign = -sign;
                }
            }
            // Sort the image generators, counting inversions (all odd, so each
            // adjacent swap contributes a factor -1).
            for (std::size_t i = 1; i < image.size(); ++i) {
                for (std::size_t j = i; j > 0 && image[j - 1] > image[j]; --j) {
                    std::swap(image[j - 1], image[j]);
                    sign = -sign;
                }
            }
            std::uint32_t mask = 0;
            for (int i : image) mask |= (1u << i);
            const Cplx v = std::conj(c) * static_cast<double>(sign);
            auto [it, fresh] = g.coef_.try_emplace(mask, v);
            if (!fresh) it->second += v;
        }
        return g;
    }

    /// Inverse of an even element with nonzero body (finite Neumann series).
    GrassmannNumber inverse() const {
        const Cplx b = body();
        if (std::abs(b) < 1e-300) throw std::domain_error("grassmann: inverse needs nonzero body");
        const GrassmannNumber u = soul() * (1.0 / b);
        GrassmannNumber acc = scalar(1.0, L_);
        GrassmannNumber pw = scalar(1.0, L_);
        for (int k = 1; k <= L_; ++k) {
            pw = pw * u;
            if (pw.is_zero()) break;
            acc = (k % 2 == 1) ? acc - pw : acc + pw;
        }
        return acc * (1.0 / b);
    }

    /// Square root of an even element with positive real body.
    GrassmannNumber sqrt() const {
        const Cplx b = body();
        if (!(b.real() > 0.0) || std::abs(b.imag()) > 1e-9 * std::abs(b))
            throw std::domain_error("grassmann: sqrt needs positive real body");
        const double rb = std::sqrt(b.real());
        const GrassmannNumber u = soul() * (1.0 / b);
        GrassmannNumber acc = scalar(1.0, L_);
        GrassmannNumber pw = scalar(1.0, L_);
        double coeff = 1.0;
        for (int k = 1; k <= L_; ++k) {
            pw = pw * u;
            if (pw.is_zero()) break;
            coeff *= (0.5 - (k - 1)) / k;  // binomial (1/2 choose k)
            acc = acc + pw * coeff;
        }
        return acc * rb;
    }

    friend bool operator==(const GrassmannNumber& a, const GrassmannNumber& b) {
        return a.L_ == b.L_ && a.coef_ == b.coef_;
    }

    std::string str() const;

private:
    static void check_L(int L) {
        if (L < 2 || L > kMaxGenerators || L % 2 != 0)
            throw std::domain_error("grassmann: L must be even, 2 <= L <= 16");
    }

    void check_same(const GrassmannNumber& other) const {
        if (L_ != other.L_)
            throw std::domain_error("grassmann: operands live in different algebras");
    }

    /// Koszul sign of moving the generators of mb into the generators of ma:
    /// (-1)^{#{(p,q) : p in ma, q in mb, p > q}}.
    static int merge_sign(std::uint32_t ma, std::uint32_t mb) {
        int swaps = 0;
        std::uint32_t m = mb;
        while (m) {
            const int q = std::countr_zero(m);
            m &= m - 1;
            swaps += std::popcount(ma >> (q + 1));
        }
        return (swaps & 1) ? -1 : 1;
    }

    int L_;
    std::map<std::uint32_t, Cplx> coef_;
};

inline double max_abs_diff(const GrassmannNumber& a, const GrassmannNumber& b) {
    return (a - b).max_abs();
}

inline std::string GrassmannNumber::str() const {
    if (coef_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : coef_) {
        if (!out.empty()) out += " + ";
        out += "(" + std::to_string(c.real()) + (c.imag() >= 0 ? "+" : "") +
               std::to_string(c.imag()) + "i)";
        for (int i = 0; i < L_; ++i)
            if (m & (1u << i)) out += "*t" + std::to_string(i + 1);
    }
    return out;
}

}  // namespace hopfchern
