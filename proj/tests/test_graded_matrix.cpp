#include <catch2/catch_amalgamated.hpp>

#include "hopfchern/selftest.hpp"

using namespace hopfchern;

namespace {

GMat zero3(int L = 2) { return uosp_zero_matrix(L); }

GMat random_even_supermatrix(Rng& rng, int L = 2) {
    // Homogeneous even: entry (i,j) has parity |i| + |j|.
    GMat m = zero3(L);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const int par = (i == 0) + (j == 0);
            if (par % 2 == 0) {
                m.at(i, j) = GrassmannNumber::scalar(rng.normal_complex(), L) +
                             GrassmannNumber::generator(0, L) * GrassmannNumber::generator(1, L) *
                                 rng.normal_complex();
            } else {
                m.at(i, j) = GrassmannNumber::generator(0, L) * rng.normal_complex() +
                             GrassmannNumber::generator(1, L) * rng.normal_complex();
            }
        }
    return m;
}

}  // namespace

TEST_CASE("supertrace of the identity on the (1|2) signature") {
    const GMat id = GMat::identity(uosp_signature(), GrassmannNumber(2));
    CHECK(max_abs_diff(id.supertrace(), GrassmannNumber::scalar(1.0)) == 0.0);
    CHECK(max_abs_diff(id.trace(), GrassmannNumber::scalar(3.0)) == 0.0);
}

TEST_CASE("supertrace is cyclic on even supermatrices") {
    Rng rng(21);
    for (int i = 0; i < 50; ++i) {
        const GMat m = random_even_supermatrix(rng), n = random_even_supermatrix(rng);
        CHECK(max_abs_diff((m * n).supertrace(), (n * m).supertrace()) < 1e-12);
    }
}

TEST_CASE("supertrace requires a square signature") {
    GMat col(uosp_signature(), {0}, GrassmannNumber(2));
    CHECK_THROWS_AS(col.supertrace(), std::domain_error);
}

TEST_CASE("superdeterminant examples") {
    const int L = 2;
    CHECK(max_abs_diff(GMat::identity(uosp_signature(), GrassmannNumber(L)).superdeterminant(),
                       GrassmannNumber::scalar(1.0, L)) == 0.0);
    // diag(d; e, f) -> e f / d, by hand evaluation of the block formula.
    GMat m = zero3(L);
    m.at(0, 0) = GrassmannNumber::scalar(2.0, L);
    m.at(1, 1) = GrassmannNumber::scalar(3.0, L);
    m.at(2, 2) = GrassmannNumber::scalar(5.0, L);
    CHECK(max_abs_diff(m.superdeterminant(), GrassmannNumber::scalar(7.5, L)) < 1e-14);
    // Non-invertible odd-odd block.
    m.at(0, 0) = GrassmannNumber(L);
    CHECK_THROWS_AS(m.superdeterminant(), SingularMatrixError);
}

TEST_CASE("dagger degenerates to the conjugate transpose on complex matrices") {
    auto m = GradedMatrix<Cplx>::plain(2, 2);
    m.at(0, 0) = Cplx(1, 2);
    m.at(0, 1) = Cplx(3, -4);
    m.at(1, 0) = Cplx(-5, 6);
    m.at(1, 1) = Cplx(7, 8);
    const auto d = m.dagger();
    CHECK(d.at(0, 0) == Cplx(1, -2));
    CHECK(d.at(0, 1) == Cplx(-5, -6));
    CHECK(d.at(1, 0) == Cplx(3, 4));
    CHECK(d.at(1, 1) == Cplx(7, -8));
}

TEST_CASE("dagger is an involution on even supermatrices") {
    Rng rng(22);
    for (int i = 0; i < 50; ++i) {
        const GMat m = random_even_supermatrix(rng);
        CHECK(max_abs_diff(m.dagger().dagger(), m) < 1e-13);
        // (AB)^dag = B^dag A^dag
        const GMat n = random_even_supermatrix(rng);
        CHECK(max_abs_diff((m * n).dagger(), n.dagger() * m.dagger()) < 1e-12);
    }
}

TEST_CASE("exponential of zero and of a complex rotation generator") {
    auto z = GradedMatrix<Cplx>::plain(2, 2);
    CHECK(max_abs_diff(z.exponential(), GradedMatrix<Cplx>::identity({0, 0})) == 0.0);
    // exp(i t sigma_1 / 2) = [[cos(t/2), i sin(t/2)], [i sin(t/2), cos(t/2)]].
    const double t = 1.3;
    auto x = GradedMatrix<Cplx>::plain(2, 2);
    x.at(0, 1) = Cplx(0, 0.5 * t);
    x.at(1, 0) = Cplx(0, 0.5 * t);
    const auto e = x.exponential();
    CHECK(std::abs(e.at(0, 0) - Cplx(std::cos(0.5 * t))) < 1e-13);
    CHECK(std::abs(e.at(0, 1) - Cplx(0, std::sin(0.5 * t))) < 1e-13);
    // Large-norm input exercises the scaling-and-squaring path.
    auto big = GradedMatrix<Cplx>::plain(2, 2);
    big.at(0, 1) = Cplx(0, 0.5 * 40.0);
    big.at(1, 0) = Cplx(0, 0.5 * 40.0);
    const auto eb = big.exponential();
    CHECK(std::abs(eb.at(0, 0) - Cplx(std::cos(20.0))) < 1e-11);
}

TEST_CASE("product signature mismatch is rejected") {
    const GMat a = zero3();
    GMat col(uosp_signature(), {0}, GrassmannNumber(2));
    CHECK_THROWS_AS(col * a, std::domain_error);
}
