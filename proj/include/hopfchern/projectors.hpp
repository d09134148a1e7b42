#pragma once

#include <memory>

#include "hopfchern/bundles.hpp"
#include "hopfchern/form_matrix.hpp"

namespace hopfchern {

// ---------------------------------------------------------------------------
// Coordinate spaces
// ---------------------------------------------------------------------------

struct S2System {
    SpacePtr space;
    std::array<VarId, 3> x{}, dx{};
};

inline S2System make_s2_system() {
    auto sp = std::make_shared<VariableSpace>();
    S2System s;
    for (int k = 0; k < 3; ++k) {
        s.x[k] = sp->add_coordinate("x" + std::to_string(k), 0);
        s.dx[k] = static_cast<VarId>(sp->differential(s.x[k]));
    }
    s.space = sp;
    return s;
}

struct S22System {
    SpacePtr space;
    std::array<VarId, 3> x{}, dx{};
    VarId xi_m{}, xi_p{}, dxi_m{}, dxi_p{};
};

inline S22System make_s22_system() {
    auto sp = std::make_shared<VariableSpace>();
    S22System s;
    for (int k = 0; k < 3; ++k) {
        s.x[k] = sp->add_coordinate("x" + std::to_string(k), 0);
        s.dx[k] = static_cast<VarId>(sp->differential(s.x[k]));
    }
    s.xi_m = sp->add_coordinate("xim", 1);
    s.xi_p = sp->add_coordinate("xip", 1);
    s.dxi_m = static_cast<VarId>(sp->differential(s.xi_m));
    s.dxi_p = static_cast<VarId>(sp->differential(s.xi_p));
    s.space = sp;
    return s;
}

struct S4System {
    SpacePtr space;
    std::array<VarId, 5> x{}, dx{};
};

inline S4System make_s4_system() {
    auto sp = std::make_shared<VariableSpace>();
    S4System s;
    for (int k = 0; k < 5; ++k) {
        s.x[k] = sp->add_coordinate("x" + std::to_string(k), 0);
        s.dx[k] = static_cast<VarId>(sp->differential(s.x[k]));
    }
    s.space = sp;
    return s;
}

// ---------------------------------------------------------------------------
// Volume forms
// ---------------------------------------------------------------------------

/// x0 dx1 dx2 + x1 dx2 dx0 + x2 dx0 dx1.
inline GradedForm<Cplx> s2_volume_form(const S2System& s) {
    GradedForm<Cplx> v(s.space);
    v.add_term({s.x[0], s.dx[1], s.dx[2]}, 1.0);
    v.add_term({s.x[1], s.dx[2], s.dx[0]}, 1.0);
    v.add_term({s.x[2], s.dx[0], s.dx[1]}, 1.0);
    return v;
}

/// Body volume form of the supersphere, same expression in the even sector.
inline GradedForm<Cplx> s22_body_volume_form(const S22System& s) {
    GradedForm<Cplx> v(s.space);
    v.add_term({s.x[0], s.dx[1], s.dx[2]}, 1.0);
    v.add_term({s.x[1], s.dx[2], s.dx[0]}, 1.0);
    v.add_term({s.x[2], s.dx[0], s.dx[1]}, 1.0);
    return v;
}

/// sum_mu (-1)^mu x_mu dx_0 ... (omit mu) ... dx_4.
inline GradedForm<Cplx> s4_volume_form(const S4System& s) {
    GradedForm<Cplx> v(s.space);
    for (int mu = 0; mu < 5; ++mu) {
        Monomial m{s.x[mu]};
        for (int k = 0; k < 5; ++k)
            if (k != mu) m.push_back(s.dx[k]);
        v.add_term(std::move(m), (mu % 2) ? Cplx(-1.0) : Cplx(1.0));
    }
    return v;
}

// ---------------------------------------------------------------------------
// Projectors in base coordinates (and their transposes)
// ---------------------------------------------------------------------------

/// Monopole projector (1/2) [[1 + x0, x1 - i x2], [x1 + i x2, 1 - x0]];
/// the transpose exchanges x2 -> -x2.
inline FormMatrix<Cplx> monopole_projector(const S2System& s, bool transposed = false) {
    const Cplx I(0.0, 1.0);
    const double sg = transposed ? -1.0 : 1.0;
    FormMatrix<Cplx> p = FormMatrix<Cplx>::plain(s.space, 2, 2);
    p.at(0, 0).add_term({}, 0.5);
    p.at(0, 0).add_term({s.x[0]}, 0.5);
    p.at(0, 1).add_term({s.x[1]}, 0.5);
    p.at(0, 1).add_term({s.x[2]}, -0.5 * I * sg);
    p.at(1, 0).add_term({s.x[1]}, 0.5);
    p.at(1, 0).add_term({s.x[2]}, 0.5 * I * sg);
    p.at(1, 1).add_term({}, 0.5);
    p.at(1, 1).add_term({s.x[0]}, -0.5);
    return p;
}

/// Graded monopole projector in supersphere coordinates. The transposed
/// projector is the supertranspose; it also equals the exchange
/// x2 -> -x2, xi_- -> -xi_+, xi_+ -> xi_-.
inline FormMatrix<Cplx> graded_projector(const S22System& s, bool transposed = false) {
    const Cplx I(0.0, 1.0);
    FormMatrix<Cplx> p(s.space, {1, 0, 0}, {1, 0, 0});
    auto put = [&](int i, int j, std::initializer_list<std::pair<Monomial, Cplx>> parts) {
        for (const auto& [m, c] : parts) p.at(i, j).add_term(m, 0.5 * c);
    };
    // (1/2) * printed matrix.
    put(0, 0, {{{s.xi_p, s.xi_m}, 2.0}});
    put(0, 1, {{{s.x[1], s.xi_m}, 1.0}, {{s.x[2], s.xi_m}, I}, {{s.xi_p}, -1.0}, {{s.x[0], s.xi_p}, -1.0}});
    put(0, 2, {{{s.x[1], s.xi_p}, -1.0}, {{s.x[2], s.xi_p}, I}, {{s.xi_m}, 1.0}, {{s.x[0], s.xi_m}, -1.0}});
    put(1, 0, {{{s.x[1], s.xi_p}, -1.0}, {{s.x[2], s.xi_p}, I}, {{s.xi_m}, -1.0}, {{s.x[0], s.xi_m}, -1.0}});
    put(1, 1, {{{}, 1.0}, {{s.x[0]}, 1.0}, {{s.xi_p, s.xi_m}, 1.0}});
    put(1, 2, {{{s.x[1]}, 1.0}, {{s.x[2]}, -I}});
    put(2, 0, {{{s.x[1], s.xi_m}, -1.0}, {{s.x[2], s.xi_m}, -I}, {{s.xi_p}, -1.0}, {{s.x[0], s.xi_p}, 1.0}});
    put(2, 1, {{{s.x[1]}, 1.0}, {{s.x[2]}, I}});
    put(2, 2, {{{}, 1.0}, {{s.x[0]}, -1.0}, {{s.xi_p, s.xi_m}, 1.0}});
    return transposed ? p.supertranspose() : p;
}

/// Instanton projector (1/2) [[1 + x0, x4 + xi], [x4 - xi, 1 - x0]] with
/// xi = x1 i + x2 j + x3 k; the transpose exchanges xi -> -xi.
inline FormMatrix<Quaternion> instanton_projector(const S4System& s, bool transposed = false) {
    const double sg = transposed ? -1.0 : 1.0;
    FormMatrix<Quaternion> p = FormMatrix<Quaternion>::plain(s.space, 2, 2);
    p.at(0, 0).add_term({}, Quaternion(0.5));
    p.at(0, 0).add_term({s.x[0]}, Quaternion(0.5));
    p.at(1, 1).add_term({}, Quaternion(0.5));
    p.at(1, 1).add_term({s.x[0]}, Quaternion(-0.5));
    p.at(0, 1).add_term({s.x[4]}, Quaternion(0.5));
    p.at(1, 0).add_term({s.x[4]}, Quaternion(0.5));
    const Quaternion e[3] = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
    for (int k = 0; k < 3; ++k) {
        p.at(0, 1).add_term({s.x[1 + k]}, e[k] * (0.5 * sg));
        p.at(1, 0).add_term({s.x[1 + k]}, e[k] * (-0.5 * sg));
    }
    return p;
}

// ---------------------------------------------------------------------------
// Symbolic supergroup parameter space: formal even symbols a, a^o, b, b^o and
// odd symbols eta, eta^o, with the involution acting by substitution.
// ---------------------------------------------------------------------------

struct UospSymbols {
    SpacePtr space;
    VarId a{}, ao{}, b{}, bo{}, eta{}, etao{};
    SymbolInvolution involution;

    GradedForm<Cplx> sym(VarId v) const { return GradedForm<Cplx>::variable(space, v); }
    GradedForm<Cplx> one() const { return GradedForm<Cplx>::scalar(space, 1.0); }
    /// eta eta^o as a form.
    GradedForm<Cplx> ee() const {
        GradedForm<Cplx> f(space);
        f.add_term({eta, etao}, 1.0);
        return f;
    }
};

inline UospSymbols make_uosp_symbols() {
    auto sp = std::make_shared<VariableSpace>();
    UospSymbols u;
    u.a = sp->add_symbol("a", 0);
    u.ao = sp->add_symbol("a'", 0);
    u.b = sp->add_symbol("b", 0);
    u.bo = sp->add_symbol("b'", 0);
    u.eta = sp->add_symbol("eta", 1);
    u.etao = sp->add_symbol("eta'", 1);
    u.space = sp;
    u.involution.map = {{u.a, {u.ao, 1.0}},  {u.ao, {u.a, 1.0}}, {u.b, {u.bo, 1.0}},
                        {u.bo, {u.b, 1.0}},  {u.eta, {u.etao, 1.0}},
                        {u.etao, {u.eta, -1.0}}};
    return u;
}

/// The closed-form group element s(a, b, eta) as a symbolic supermatrix.
inline FormMatrix<Cplx> uosp_group_matrix(const UospSymbols& u) {
    FormMatrix<Cplx> s(u.space, {1, 0, 0}, {1, 0, 0});
    auto f8 = [&](VarId even) {
        GradedForm<Cplx> f(u.space);
        f.add_term({even}, 1.0);
        f.add_term({even, u.eta, u.etao}, -0.125);
        return f;
    };
    s.at(0, 0) = u.one() + u.ee().scaled(0.25);
    s.at(0, 1).add_term({u.eta}, -0.5);
    s.at(0, 2).add_term({u.etao}, 0.5);
    s.at(1, 0).add_term({u.a, u.etao}, -0.5);
    s.at(1, 0).add_term({u.bo, u.eta}, 0.5);
    s.at(1, 1) = f8(u.a);
    s.at(1, 2) = -f8(u.bo);
    s.at(2, 0).add_term({u.b, u.etao}, -0.5);
    s.at(2, 0).add_term({u.ao, u.eta}, -0.5);
    s.at(2, 1) = f8(u.b);
    s.at(2, 2) = f8(u.ao);
    return s;
}

/// The printed adjoint of the group element (frozen from the worked matrix).
inline FormMatrix<Cplx> uosp_group_adjoint_printed(const UospSymbols& u) {
    FormMatrix<Cplx> s(u.space, {1, 0, 0}, {1, 0, 0});
    auto f8 = [&](VarId even) {
        GradedForm<Cplx> f(u.space);
        f.add_term({even}, 1.0);
        f.add_term({even, u.eta, u.etao}, -0.125);
        return f;
    };
    s.at(0, 0) = u.one() + u.ee().scaled(0.25);
    s.at(0, 1).add_term({u.ao, u.eta}, 0.5);
    s.at(0, 1).add_term({u.b, u.etao}, 0.5);
    s.at(0, 2).add_term({u.bo, u.eta}, 0.5);
    s.at(0, 2).add_term({u.a, u.etao}, -0.5);
    s.at(1, 0).add_term({u.etao}, 0.5);
    s.at(1, 1) = f8(u.ao);
    s.at(1, 2) = f8(u.bo);
    s.at(2, 0).add_term({u.eta}, 0.5);
    s.at(2, 1) = -f8(u.b);
    s.at(2, 2) = f8(u.a);
    return s;
}

/// Graded ket in the (a, b, eta) parametrization, as a symbolic column.
inline FormMatrix<Cplx> uosp_ket_symbolic(const UospSymbols& u) {
    FormMatrix<Cplx> k(u.space, {1, 0, 0}, {0});
    k.at(0, 0).add_term({u.eta}, -0.5);
    k.at(1, 0).add_term({u.a}, 1.0);
    k.at(1, 0).add_term({u.a, u.eta, u.etao}, -0.125);
    k.at(2, 0).add_term({u.b}, 1.0);
    k.at(2, 0).add_term({u.b, u.eta, u.etao}, -0.125);
    return k;
}

/// Printed graded projector in the (a, b, eta) parametrization.
inline FormMatrix<Cplx> uosp_projector_printed(const UospSymbols& u) {
    FormMatrix<Cplx> p(u.space, {1, 0, 0}, {1, 0, 0});
    auto f4 = [&](VarId r, VarId s) {
        GradedForm<Cplx> f(u.space);
        f.add_term({r, s}, 1.0);
        f.add_term({r, s, u.eta, u.etao}, -0.25);
        return f;
    };
    p.at(0, 0).add_term({u.eta, u.etao}, -0.25);
    p.at(0, 1).add_term({u.eta, u.ao}, -0.5);
    p.at(0, 2).add_term({u.eta, u.bo}, -0.5);
    p.at(1, 0).add_term({u.a, u.etao}, 0.5);
    p.at(1, 1) = f4(u.a, u.ao);
    p.at(1, 2) = f4(u.a, u.bo);
    p.at(2, 0).add_term({u.b, u.etao}, 0.5);
    p.at(2, 1) = f4(u.b, u.ao);
    p.at(2, 2) = f4(u.b, u.bo);
    return p;
}

}  // namespace hopfchern
