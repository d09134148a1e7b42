#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hopfchern/rings.hpp"

namespace hopfchern {

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rectangular matrix over a coefficient ring, each row/column index tagged
/// with a parity bit. Plain (ungraded) matrices are the all-even case.
///
/// Index-parity sign conventions, fixed once here and validated in the test
/// suite against the worked supergroup matrices:
///   supertranspose: (M^st)_{ij} = (-1)^{rho_j (gamma_i + rho_j)} M_{ji}
///   dagger:          M^dag = supertranspose followed by entrywise involution
/// where rho are the row parities and gamma the column parities of M.
template <class R>
class GradedMatrix {
public:
    GradedMatrix(std::vector<int> row_parity, std::vector<int> col_parity, R zero = R{})
        : rp_(std::move(row_parity)), cp_(std::move(col_parity)), zero_(std::move(zero)) {
        a_.assign(rows() * cols(), zero_);
    }

    static GradedMatrix identity(const std::vector<int>& parity, R zero = R{}) {
        GradedMatrix m(parity, parity, zero);
        const R one = RingOps<R>::one_like(zero);
        for (int i = 0; i < m.rows(); ++i) m.at(i, i) = one;
        return m;
    }

    static GradedMatrix plain(int r, int c, R zero = R{}) {
        return GradedMatrix(std::vector<int>(r, 0), std::vector<int>(c, 0), std::move(zero));
    }

    int rows() const { return static_cast<int>(rp_.size()); }
    int cols() const { return static_cast<int>(cp_.size()); }
    int row_parity(int i) const { return rp_[i]; }
    int col_parity(int j) const { return cp_[j]; }
    const std::vector<int>& row_parities() const { return rp_; }
    const std::vector<int>& col_parities() const { return cp_; }
    const R& zero_element() const { return zero_; }

    R& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols() + j]; }
    const R& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols() + j]; }

    GradedMatrix operator-() const {
        GradedMatrix m = *this;
        for (auto& x : m.a_) x = -x;
        return m;
    }

    friend GradedMatrix operator+(const GradedMatrix& a, const GradedMatrix& b) {
        a.check_shape(b);
        GradedMatrix m = a;
        for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = m.a_[i] + b.a_[i];
        return m;
    }

    friend GradedMatrix operator-(const GradedMatrix& a, const GradedMatrix& b) {
        a.check_shape(b);
        GradedMatrix m = a;
        for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = m.a_[i] - b.a_[i];
        return m;
    }

    /// Row-by-column product; inner signatures must match.
    friend GradedMatrix operator*(const GradedMatrix& a, const GradedMatrix& b) {
        if (a.cp_ != b.rp_)
            throw std::domain_error("graded_matrix: inner signature mismatch in product");
        GradedMatrix m(a.rp_, b.cp_, a.zero_);
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) {
                R acc = a.zero_;
                for (int k = 0; k < a.cols(); ++k) acc = acc + a.at(i, k) * b.at(k, j);
                m.at(i, j) = acc;
            }
        return m;
    }

    GradedMatrix scaled(double s) const {
        GradedMatrix m = *this;
        for (auto& x : m.a_) x = RingOps<R>::scale(x, s);
        return m;
    }

    /// Left multiplication of every entry by a ring element.
    GradedMatrix left_scaled(const R& s) const {
        GradedMatrix m = *this;
        for (auto& x : m.a_) x = s * x;
        return m;
    }

    R trace() const {
        check_square();
        R acc = zero_;
        for (int i = 0; i < rows(); ++i) acc = acc + at(i, i);
        return acc;
    }

    R supertrace() const {
        check_square();
        R acc = zero_;
        for (int i = 0; i < rows(); ++i)
            acc = rp_[i] ? acc - at(i, i) : acc + at(i, i);
        return acc;
    }

    GradedMatrix supertranspose() const {
        GradedMatrix m(cp_, rp_, zero_);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                const int e = rp_[j] * ((cp_[i] + rp_[j]) % 2);
                m.at(i, j) = (e % 2) ? -at(j, i) : at(j, i);
            }
        return m;
    }

    GradedMatrix dagger() const {
        GradedMatrix m = supertranspose();
        for (auto& x : m.a_) x = RingOps<R>::conj_adjoint(x);
        return m;
    }

    /// Berezinian for a square signature with exactly one odd index, at
    /// position 0: det(E - C O^{-1} B) / det(O) with O the odd-odd entry and
    /// E the even block. Even entries commute, so a Laplace determinant works.
    R superdeterminant() const {
        check_square();
        const int n = rows();
        if (rp_ != cp_ || n < 2 || rp_[0] != 1)
            throw std::domain_error("graded_matrix: superdeterminant needs (1|n-1) signature");
        for (int i = 1; i < n; ++i)
            if (rp_[i] != 0)
                throw std::domain_error("graded_matrix: superdeterminant needs (1|n-1) signature");
        const R o = at(0, 0);
        R oinv;
        try {
            oinv = RingOps<R>::inverse(o);
        } catch (const std::exception&) {
            throw SingularMatrixError("graded_matrix: odd-odd block not invertible");
        }
        GradedMatrix schur = GradedMatrix::plain(n - 1, n - 1, zero_);
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j)
                schur.at(i - 1, j - 1) = at(i, j) - at(i, 0) * oinv * at(0, j);
        return schur.det_even() * oinv;
    }

    /// exp(M) by scaling-and-squaring on the Taylor series. Works over each
    /// coefficient ring; nilpotent (soul) parts terminate within the series.
    GradedMatrix exponential() const {
        check_square();
        const double nrm = inf_norm();
        int squarings = 0;
        double scale = 1.0;
        while (nrm * scale > 0.25) {
            scale *= 0.5;
            ++squarings;
            if (squarings > 64) throw NumericError("graded_matrix: exponential norm overflow");
        }
        const GradedMatrix a = scaled(scale);
        GradedMatrix sum = identity(rp_, zero_);
        GradedMatrix term = identity(rp_, zero_);
        for (int k = 1; k <= 64; ++k) {
            term = (term * a).scaled(1.0 / k);
            sum = sum + term;
            if (term.inf_norm() < 1e-18) break;
            if (k == 64) throw NumericError("graded_matrix: exponential series did not converge");
        }
        for (int s = 0; s < squarings; ++s) sum = sum * sum;
        return sum;
    }

    double inf_norm() const {
        double best = 0.0;
        for (int i = 0; i < rows(); ++i) {
            double rowsum = 0.0;
            for (int j = 0; j < cols(); ++j) rowsum += RingOps<R>::max_abs(at(i, j));
            best = std::max(best, rowsum);
        }
        return best;
    }

    double max_abs() const {
        double r = 0.0;
        for (const auto& x : a_) r = std::max(r, RingOps<R>::max_abs(x));
        return r;
    }

private:
    void check_square() const {
        if (rows() != cols()) throw std::domain_error("graded_matrix: square matrix required");
    }
    void check_shape(const GradedMatrix& b) const {
        if (rp_ != b.rp_ || cp_ != b.cp_)
            throw std::domain_error("graded_matrix: signature mismatch");
    }

    /// Laplace determinant of an all-even block (entries commute).
    R det_even() const {
        const int n = rows();
        if (n == 1) return at(0, 0);
        R acc = zero_;
        for (int j = 0; j < n; ++j) {
            GradedMatrix minor = GradedMatrix::plain(n - 1, n - 1, zero_);
            for (int r = 1; r < n; ++r) {
                int cc = 0;
                for (int c = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor.at(r - 1, cc++) = at(r, c);
                }
            }
            const R term = at(0, j) * minor.det_even();
            acc = (j % 2) ? acc - term : acc + term;
        }
        return acc;
    }

    std::vector<int> rp_, cp_;
    R zero_;
    std::vector<R> a_;
};

template <class R>
double max_abs_diff(const GradedMatrix<R>& a, const GradedMatrix<R>& b) {
    return (a - b).max_abs();
}

}  // namespace hopfchern
