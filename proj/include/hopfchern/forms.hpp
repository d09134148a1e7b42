#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopfchern/rings.hpp"

namespace hopfchern {

using VarId = std::uint16_t;

/// Registry of graded polynomial variables. Each variable carries a Grassmann
/// parity and a form degree; a coordinate (degree 0) may own a differential
/// (degree 1, same parity).
///
/// Transposing u, v costs the Koszul sign (-1)^{deg u deg v + par u par v}.
/// Consequently dx_i anticommute pairwise, d(xi_a) commute pairwise (so
/// (d xi)^2 does not vanish), and the xi_a themselves anticommute.
class VariableSpace {
public:
    VarId add_symbol(std::string name, int parity, int degree = 0) {
        vars_.push_back({std::move(name), parity, degree, -1});
        return static_cast<VarId>(vars_.size() - 1);
    }

    /// Adds a degree-0 coordinate together with its differential.
    VarId add_coordinate(std::string name, int parity) {
        const VarId v = add_symbol(name, parity, 0);
        const VarId dv = add_symbol("d" + vars_[v].name, parity, 1);
        vars_[v].diff = dv;
        return v;
    }

    std::size_t size() const { return vars_.size(); }
    const std::string& name(VarId v) const { return vars_[v].name; }
    int parity(VarId v) const { return vars_[v].parity; }
    int degree(VarId v) const { return vars_[v].degree; }

    /// Differential variable of a coordinate, or -1 for degree-1 variables
    /// and plain symbols.
    int differential(VarId v) const { return vars_[v].diff; }

    int swap_sign(VarId a, VarId b) const {
        const int e = vars_[a].degree * vars_[b].degree + vars_[a].parity * vars_[b].parity;
        return (e % 2) ? -1 : 1;
    }

    bool square_zero(VarId v) const { return ((vars_[v].degree + vars_[v].parity) % 2) != 0; }

private:
    struct Info {
        std::string name;
        int parity;
        int degree;
        int diff;
    };
    std::vector<Info> vars_;
};

using SpacePtr = std::shared_ptr<const VariableSpace>;

using Monomial = std::vector<VarId>;

/// Sorts a monomial into canonical (ascending id) order, returning the Koszul
/// sign, or 0 when a square-zero variable repeats.
inline int canonicalize_monomial(Monomial& m, const VariableSpace& sp) {
    int sign = 1;
    for (std::size_t i = 1; i < m.size(); ++i) {
        for (std::size_t j = i; j > 0 && m[j - 1] > m[j]; --j) {
            sign *= sp.swap_sign(m[j - 1], m[j]);
            std::swap(m[j - 1], m[j]);
        }
    }
    for (std::size_t i = 1; i < m.size(); ++i) {
        if (m[i] == m[i - 1] && sp.square_zero(m[i])) return 0;
    }
    return sign;
}

inline int monomial_degree(const Monomial& m, const VariableSpace& sp) {
    int d = 0;
    for (VarId v : m) d += sp.degree(v);
    return d;
}

inline int monomial_parity(const Monomial& m, const VariableSpace& sp) {
    int p = 0;
    for (VarId v : m) p += sp.parity(v);
    return p % 2;
}

/// Polynomial differential form in graded variables over a coefficient ring.
/// Terms are kept keyed by canonically ordered monomials.
template <class R>
class GradedForm {
public:
    explicit GradedForm(SpacePtr sp, R zero = R{}) : sp_(std::move(sp)), zero_(std::move(zero)) {}

    static GradedForm scalar(SpacePtr sp, R value) {
        GradedForm f(sp, RingOps<R>::zero_like(value));
        f.add_term({}, value);
        return f;
    }

    static GradedForm variable(SpacePtr sp, VarId v, R one = RingOps<R>::one_like(R{})) {
        GradedForm f(sp, RingOps<R>::zero_like(one));
        f.add_term({v}, one);
        return f;
    }

    const SpacePtr& space() const { return sp_; }
    const std::map<Monomial, R>& terms() const { return t_; }
    const R& zero_element() const { return zero_; }
    bool empty() const { return t_.empty(); }

    /// Adds coeff * monomial (monomial need not be canonical).
    void add_term(Monomial m, const R& coeff) {
        const int sign = canonicalize_monomial(m, *sp_);
        if (sign == 0) return;
        const R c = (sign < 0) ? -coeff : coeff;
        auto [it, fresh] = t_.try_emplace(std::move(m), c);
        if (!fresh) {
            it->second = it->second + c;
            if (RingOps<R>::max_abs(it->second) == 0.0) t_.erase(it);
        }
    }

    R coefficient(Monomial m) const {
        const int sign = canonicalize_monomial(m, *sp_);
        if (sign == 0) return zero_;
        auto it = t_.find(m);
        if (it == t_.end()) return zero_;
        return sign < 0 ? -it->second : it->second;
    }

    GradedForm operator-() const {
        GradedForm f(sp_, zero_);
        for (const auto& [m, c] : t_) f.t_[m] = -c;
        return f;
    }

    friend GradedForm operator+(const GradedForm& a, const GradedForm& b) {
        a.check_space(b);
        GradedForm f = a;
        for (const auto& [m, c] : b.t_) {
            auto [it, fresh] = f.t_.try_emplace(m, c);
            if (!fresh) {
                it->second = it->second + c;
                if (RingOps<R>::max_abs(it->second) == 0.0) f.t_.erase(it);
            }
        }
        return f;
    }

    friend GradedForm operator-(const GradedForm& a, const GradedForm& b) { return a + (-b); }

    /// Graded product. Coefficients multiply in operand order; moving the
    /// second coefficient across the first monomial costs a sign only when
    /// the coefficient ring itself carries odd elements.
    friend GradedForm operator*(const GradedForm& a, const GradedForm& b) {
        a.check_space(b);
        GradedForm f(a.sp_, a.zero_);
        for (const auto& [ma, ca] : a.t_) {
            const int pa = monomial_parity(ma, *a.sp_);
            for (const auto& [mb, cb] : b.t_) {
                Monomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                R c = ca * cb;
                if (pa && RingOps<R>::parity(cb)) c = -c;
                f.add_term(std::move(m), c);
            }
        }
        return f;
    }

    friend GradedForm operator*(const GradedForm& a, const R& s) {
        GradedForm f(a.sp_, a.zero_);
        for (const auto& [m, c] : a.t_) {
            const R v = c * s;
            if (RingOps<R>::max_abs(v) != 0.0) f.t_[m] = v;
        }
        return f;
    }
    friend GradedForm operator*(const R& s, const GradedForm& a) {
        GradedForm f(a.sp_, a.zero_);
        for (const auto& [m, c] : a.t_) {
            const R v = s * c;
            if (RingOps<R>::max_abs(v) != 0.0) f.t_[m] = v;
        }
        return f;
    }
    GradedForm scaled(double s) const {
        GradedForm f(sp_, zero_);
        for (const auto& [m, c] : t_) f.t_[m] = RingOps<R>::scale(c, s);
        return f;
    }

    /// Exterior derivative: linear, graded Leibniz with respect to form
    /// degree, d(dv) = 0.
    GradedForm d() const {
        GradedForm f(sp_, zero_);
        for (const auto& [m, c] : t_) {
            int prefix_degree = 0;
            for (std::size_t i = 0; i < m.size(); ++i) {
                const int dv = sp_->differential(m[i]);
                if (dv >= 0) {
                    Monomial mm = m;
                    mm[i] = static_cast<VarId>(dv);
                    f.add_term(std::move(mm), (prefix_degree % 2) ? -c : c);
                }
                prefix_degree += sp_->degree(m[i]);
            }
        }
        return f;
    }

    /// Drops every term containing an odd variable (a xi or a d(xi)) and maps
    /// coefficients to their body. Idempotent.
    GradedForm body_project() const {
        GradedForm f(sp_, zero_);
        for (const auto& [m, c] : t_) {
            bool odd = false;
            for (VarId v : m)
                if (sp_->parity(v)) {
                    odd = true;
                    break;
                }
            if (!odd) f.t_[m] = c;
        }
        return f;
    }

    /// Substitution v -> factor * image(v), applied in place inside each
    /// monomial and re-canonicalized.
    GradedForm substitute(const std::map<VarId, std::pair<VarId, double>>& repl) const {
        GradedForm f(sp_, zero_);
        for (const auto& [m, c] : t_) {
            Monomial mm = m;
            double factor = 1.0;
            for (auto& v : mm) {
                auto it = repl.find(v);
                if (it != repl.end()) {
                    v = it->second.first;
                    factor *= it->second.second;
                }
            }
            f.add_term(std::move(mm), RingOps<R>::scale(c, factor));
        }
        return f;
    }

    /// Replaces every occurrence of one variable by a whole form (used to
    /// eliminate a dependent differential on a constraint surface).
    GradedForm substitute_form(VarId v, const GradedForm& repl) const {
        GradedForm out(sp_, zero_);
        for (const auto& [m, c] : t_) {
            auto pos = std::find(m.begin(), m.end(), v);
            if (pos == m.end()) {
                out.add_term(m, c);
                continue;
            }
            GradedForm left(sp_, zero_);
            left.add_term(Monomial(m.begin(), pos), c);
            GradedForm right(sp_, zero_);
            right.add_term(Monomial(pos + 1, m.end()), RingOps<R>::one_like(zero_));
            // Recurse on the tail in case the variable repeats.
            out = out + left * repl * right.substitute_form(v, repl);
        }
        return out;
    }

    /// Common form degree of all terms; -1 for the zero form; throws on mixed
    /// degrees.
    int degree() const {
        int d = -1;
        for (const auto& [m, c] : t_) {
            const int dm = monomial_degree(m, *sp_);
            if (d < 0)
                d = dm;
            else if (d != dm)
                throw std::domain_error("graded_form: mixed form degree");
        }
        return d;
    }

    double max_abs() const {
        double r = 0.0;
        for (const auto& [m, c] : t_) r = std::max(r, RingOps<R>::max_abs(c));
        return r;
    }

    bool is_zero(double tol = 0.0) const { return max_abs() <= tol; }

    /// Drops terms with coefficients below tol (cleanup before comparisons).
    GradedForm pruned(double tol) const {
        GradedForm f(sp_, zero_);
        for (const auto& [m, c] : t_)
            if (RingOps<R>::max_abs(c) > tol) f.t_[m] = c;
        return f;
    }

    std::string str() const {
        if (t_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : t_) {
            if (!out.empty()) out += "  +  ";
            out += "[" + coeff_str(c) + "]";
            for (VarId v : m) out += " " + sp_->name(v);
        }
        return out;
    }

private:
    void check_space(const GradedForm& b) const {
        if (sp_.get() != b.sp_.get())
            throw std::domain_error("graded_form: operands from different variable spaces");
    }

    static std::string coeff_str(const Cplx& c) {
        return std::to_string(c.real()) + (c.imag() >= 0 ? "+" : "") + std::to_string(c.imag()) +
               "i";
    }
    static std::string coeff_str(const Quaternion& q) {
        return std::to_string(q.r0) + " +i " + std::to_string(q.r1) + " +j " +
               std::to_string(q.r2) + " +k " + std::to_string(q.r3);
    }
    static std::string coeff_str(const GrassmannNumber& g) { return g.str(); }

    SpacePtr sp_;
    R zero_;
    std::map<Monomial, R> t_;
};

template <class R>
double max_abs_diff(const GradedForm<R>& a, const GradedForm<R>& b) {
    return (a - b).max_abs();
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Evaluates a degree-0 complex form at complex variable values (indexed by
/// VarId).
inline Cplx eval_complex(const GradedForm<Cplx>& f, const std::vector<Cplx>& values) {
    Cplx acc = 0.0;
    for (const auto& [m, c] : f.terms()) {
        Cplx prod = c;
        for (VarId v : m) prod *= values[v];
        acc += prod;
    }
    return acc;
}

/// Evaluates a complex-coefficient form at Grassmann variable values. The
/// values multiply in canonical monomial order, so odd values carry their own
/// signs.
inline GrassmannNumber eval_grassmann(const GradedForm<Cplx>& f,
                                      const std::vector<GrassmannNumber>& values, int L) {
    GrassmannNumber acc(L);
    for (const auto& [m, c] : f.terms()) {
        GrassmannNumber prod = GrassmannNumber::scalar(c, L);
        for (VarId v : m) prod = prod * values[v];
        acc = acc + prod;
    }
    return acc;
}

/// Evaluates a quaternion-coefficient form at real variable values.
inline Quaternion eval_quaternion(const GradedForm<Quaternion>& f,
                                  const std::vector<double>& values) {
    Quaternion acc{};
    for (const auto& [m, c] : f.terms()) {
        double prod = 1.0;
        for (VarId v : m) prod *= values[v];
        acc = acc + c * prod;
    }
    return acc;
}

/// Partially evaluates a complex-coefficient form: degree-0 variables take
/// Grassmann values (moved into the coefficient with Koszul signs), the
/// differential variables stay symbolic. Result: a form in the differentials
/// with Grassmann coefficients.
inline GradedForm<GrassmannNumber> partial_eval_grassmann(
    const GradedForm<Cplx>& f, const std::vector<GrassmannNumber>& values, int L) {
    const auto& sp = *f.space();
    GradedForm<GrassmannNumber> out(f.space(), GrassmannNumber(L));
    for (const auto& [m, c] : f.terms()) {
        GrassmannNumber coeff = GrassmannNumber::scalar(c, L);
        Monomial kept;
        int sign = 1;
        for (VarId v : m) {
            if (sp.degree(v) == 0) {
                // Move the value left across the kept differentials.
                if (sp.parity(v)) {
                    for (VarId w : kept)
                        if (sp.parity(w)) sign = -sign;
                }
                coeff = coeff * values[v];
            } else {
                kept.push_back(v);
            }
        }
        if (coeff.is_zero()) continue;
        out.add_term(std::move(kept), sign < 0 ? -coeff : coeff);
    }
    return out;
}

inline double det_small(const std::vector<double>& a, int n) {
    switch (n) {
        case 0:
            return 1.0;
        case 1:
            return a[0];
        case 2:
            return a[0] * a[3] - a[1] * a[2];
        case 3:
            return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
                   a[2] * (a[3] * a[7] - a[4] * a[6]);
        case 4: {
            double det = 0.0;
            for (int j = 0; j < 4; ++j) {
                std::vector<double> minor(9);
                int cc = 0;
                for (int c = 0; c < 4; ++c) {
                    if (c == j) continue;
                    for (int r = 1; r < 4; ++r) minor[(r - 1) * 3 + cc] = a[r * 4 + c];
                    ++cc;
                }
                const double term = a[j] * det_small(minor, 3);
                det += (j % 2) ? -term : term;
            }
            return det;
        }
        default:
            throw std::domain_error("det_small: size out of range");
    }
}

/// Evaluates a degree-d form on d tangent vectors. Coordinates take the
/// values in `xv` (indexed by VarId); differential variables are paired with
/// ambient rows through `diff_row`; tangents[slot][ambient_row].
template <class R>
R eval_on_tangents(const GradedForm<R>& f, const std::vector<double>& xv,
                   const std::map<VarId, int>& diff_row,
                   const std::vector<std::vector<double>>& tangents) {
    const auto& sp = *f.space();
    const int d = static_cast<int>(tangents.size());
    R acc = RingOps<R>::zero_like(f.zero_element());
    for (const auto& [m, c] : f.terms()) {
        double scalar = 1.0;
        std::vector<int> rows;
        for (VarId v : m) {
            if (sp.degree(v) == 0) {
                scalar *= xv[v];
            } else {
                auto it = diff_row.find(v);
                if (it == diff_row.end())
                    throw std::domain_error("eval_on_tangents: unmapped differential");
                rows.push_back(it->second);
            }
        }
        if (static_cast<int>(rows.size()) != d)
            throw std::domain_error("eval_on_tangents: degree does not match tangent count");
        std::vector<double> minor(static_cast<std::size_t>(d) * d);
        for (int r = 0; r < d; ++r)
            for (int s = 0; s < d; ++s) minor[r * d + s] = tangents[s][rows[r]];
        acc = acc + RingOps<R>::scale(c, scalar * det_small(minor, d));
    }
    return acc;
}

}  // namespace hopfchern
