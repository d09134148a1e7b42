#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "hopfchern/forms.hpp"

namespace hopfchern {

/// Matrix whose entries are graded forms; optional index-parity signature
/// (all-even by default). The product is plain row-by-column with the graded
/// form product of entries -- entries already carry their parity, so no
/// extra block signs appear.
template <class R>
class FormMatrix {
public:
    FormMatrix(SpacePtr sp, std::vector<int> row_parity, std::vector<int> col_parity, R zero = R{})
        : sp_(std::move(sp)),
          rp_(std::move(row_parity)),
          cp_(std::move(col_parity)),
          zero_(std::move(zero)),
          e_(rp_.size() * cp_.size(), GradedForm<R>(sp_, zero_)) {}

    static FormMatrix plain(SpacePtr sp, int r, int c, R zero = R{}) {
        return FormMatrix(std::move(sp), std::vector<int>(r, 0), std::vector<int>(c, 0),
                          std::move(zero));
    }

    int rows() const { return static_cast<int>(rp_.size()); }
    int cols() const { return static_cast<int>(cp_.size()); }
    const SpacePtr& space() const { return sp_; }
    const std::vector<int>& row_parities() const { return rp_; }
    const std::vector<int>& col_parities() const { return cp_; }

    GradedForm<R>& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols() + j]; }
    const GradedForm<R>& at(int i, int j) const {
        return e_[static_cast<std::size_t>(i) * cols() + j];
    }

    FormMatrix operator-() const {
        FormMatrix m = *this;
        for (auto& f : m.e_) f = -f;
        return m;
    }

    friend FormMatrix operator+(const FormMatrix& a, const FormMatrix& b) {
        a.check_shape(b);
        FormMatrix m = a;
        for (std::size_t i = 0; i < m.e_.size(); ++i) m.e_[i] = m.e_[i] + b.e_[i];
        return m;
    }

    friend FormMatrix operator-(const FormMatrix& a, const FormMatrix& b) {
        a.check_shape(b);
        FormMatrix m = a;
        for (std::size_t i = 0; i < m.e_.size(); ++i) m.e_[i] = m.e_[i] - b.e_[i];
        return m;
    }

    friend FormMatrix operator*(const FormMatrix& a, const FormMatrix& b) {
        if (a.cols() != b.rows())
            throw std::domain_error("form_matrix: inner dimension mismatch");
        FormMatrix m(a.sp_, a.rp_, b.cp_, a.zero_);
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) {
                GradedForm<R> acc(a.sp_, a.zero_);
                for (int k = 0; k < a.cols(); ++k) acc = acc + a.at(i, k) * b.at(k, j);
                m.at(i, j) = acc;
            }
        return m;
    }

    FormMatrix scaled(double s) const {
        FormMatrix m = *this;
        for (auto& f : m.e_) f = f.scaled(s);
        return m;
    }

    FormMatrix scaled(const R& s) const {
        FormMatrix m = *this;
        for (auto& f : m.e_) f = f * s;
        return m;
    }

    FormMatrix d() const {
        FormMatrix m = *this;
        for (auto& f : m.e_) f = f.d();
        return m;
    }

    GradedForm<R> trace() const {
        check_square();
        GradedForm<R> acc(sp_, zero_);
        for (int i = 0; i < rows(); ++i) acc = acc + at(i, i);
        return acc;
    }

    GradedForm<R> supertrace() const {
        check_square();
        GradedForm<R> acc(sp_, zero_);
        for (int i = 0; i < rows(); ++i) acc = rp_[i] ? acc - at(i, i) : acc + at(i, i);
        return acc;
    }

    /// Same sign rule as GradedMatrix::supertranspose.
    FormMatrix supertranspose() const {
        FormMatrix m(sp_, cp_, rp_, zero_);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                const int e = rp_[j] * ((cp_[i] + rp_[j]) % 2);
                m.at(i, j) = (e % 2) ? -at(j, i) : at(j, i);
            }
        return m;
    }

    FormMatrix substitute(const std::map<VarId, std::pair<VarId, double>>& repl) const {
        FormMatrix m = *this;
        for (auto& f : m.e_) f = f.substitute(repl);
        return m;
    }

    FormMatrix body_project() const {
        FormMatrix m = *this;
        for (auto& f : m.e_) f = f.body_project();
        return m;
    }

    double max_abs() const {
        double r = 0.0;
        for (const auto& f : e_) r = std::max(r, f.max_abs());
        return r;
    }

private:
    void check_square() const {
        if (rows() != cols()) throw std::domain_error("form_matrix: square matrix required");
    }
    void check_shape(const FormMatrix& b) const {
        if (rp_ != b.rp_ || cp_ != b.cp_ || sp_.get() != b.sp_.get())
            throw std::domain_error("form_matrix: shape or space mismatch");
    }

    SpacePtr sp_;
    std::vector<int> rp_, cp_;
    R zero_;
    std::vector<GradedForm<R>> e_;
};

template <class R>
double max_abs_diff(const FormMatrix<R>& a, const FormMatrix<R>& b) {
    return (a - b).max_abs();
}

/// Plain matrix trace followed by the normalized quaternion trace on every
/// coefficient (tr(1) = 2, vanishing on i, j, k).
inline GradedForm<Cplx> trace_quaternionic(const FormMatrix<Quaternion>& m) {
    GradedForm<Quaternion> t = m.trace();
    GradedForm<Cplx> out(m.space());
    for (const auto& [mono, q] : t.terms()) {
        if (q.trace() != 0.0) out.add_term(mono, Cplx(q.trace(), 0.0));
    }
    return out;
}

/// Variable-level involution for symbolic parameter spaces: a substitution
/// v -> factor * image(v) applied inside monomials (order preserved) followed
/// by complex conjugation of coefficients.
struct SymbolInvolution {
    std::map<VarId, std::pair<VarId, double>> map;
};

inline GradedForm<Cplx> apply_involution(const GradedForm<Cplx>& f, const SymbolInvolution& inv) {
    GradedForm<Cplx> out(f.space());
    for (const auto& [m, c] : f.terms()) {
        Monomial mm = m;
        double factor = 1.0;
        for (auto& v : mm) {
            auto it = inv.map.find(v);
            if (it != inv.map.end()) {
                v = it->second.first;
                factor *= it->second.second;
            }
        }
        out.add_term(std::move(mm), std::conj(c) * factor);
    }
    return out;
}

/// Supertranspose plus entrywise symbolic involution: the adjoint of a
/// symbolic supermatrix.
inline FormMatrix<Cplx> symbolic_dagger(const FormMatrix<Cplx>& m, const SymbolInvolution& inv) {
    FormMatrix<Cplx> st = m.supertranspose();
    FormMatrix<Cplx> out(st.space(), st.row_parities(), st.col_parities());
    for (int i = 0; i < st.rows(); ++i)
        for (int j = 0; j < st.cols(); ++j) out.at(i, j) = apply_involution(st.at(i, j), inv);
    return out;
}

}  // namespace hopfchern
