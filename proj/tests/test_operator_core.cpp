#include <doctest.h>

#include "dampqda/operator_core.hpp"
#include "support.hpp"

using namespace dampqda;
using dampqda::testing::random_matrix;

TEST_CASE("hs_inner on Pauli matrices and projectors")
{
    CHECK(std::abs(hs_inner(pauli(1), pauli(1)) - Complex(2.0)) < 1e-15);
    CHECK(std::abs(hs_inner(pauli(1), pauli(2))) < 1e-15);
    CHECK(std::abs(hs_inner(ket_g_projector(), ket_g_projector()) - Complex(1.0)) < 1e-15);

    for (int i = 0; i < 4; ++i)
    {
        for (int j = 0; j < 4; ++j)
        {
            CHECK(std::abs(hs_inner(pauli(i), pauli(j)) - Complex(i == j ? 2.0 : 0.0)) < 1e-15);
        }
    }
}

TEST_CASE("Pauli matrices are Hermitian, traceless and square to identity")
{
    for (int i = 1; i <= 3; ++i)
    {
        const ComplexMatrix s = pauli(i);
        CHECK(is_hermitian(s));
        CHECK(std::abs(s.trace()) < 1e-15);
        CHECK(max_abs(s * s - pauli(0)) < 1e-15);
    }
    CHECK_THROWS_AS(pauli(4), DomainError);
}

TEST_CASE("basis conventions")
{
    CHECK(max_abs(pauli(3) - (ket_e_projector() - ket_g_projector())) == 0.0);
    CHECK(sigma_minus()(1, 0) == Complex(1.0));
    CHECK(max_abs(sigma_plus() - sigma_minus().adjoint()) == 0.0);
    CHECK(max_abs(sigma_e() - ket_e_projector()) == 0.0);
}

TEST_CASE("hs_inner properties over random matrices")
{
    for (int trial = 0; trial < 100; ++trial)
    {
        const ComplexMatrix a = random_matrix(3, 3);
        const ComplexMatrix b = random_matrix(3, 3);
        CHECK(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))) < 1e-12);
        const Complex aa = hs_inner(a, a);
        CHECK(aa.real() > 0.0);
        CHECK(std::abs(aa.imag()) < 1e-12);
        CHECK(std::abs(hs_inner(a, b) - (a.adjoint() * b).trace()) < 1e-12);
    }
    CHECK(hs_inner(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2)) == Complex(0.0));
}

TEST_CASE("hs_inner rejects mismatched shapes")
{
    CHECK_THROWS_AS(hs_inner(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(3, 3)), ShapeError);
    CHECK_THROWS_AS(hs_inner(ComplexMatrix::Zero(2, 3), ComplexMatrix::Zero(2, 3)), ShapeError);
}

TEST_CASE("outer_apply")
{
    CHECK(max_abs(outer_apply(pauli(3), ket_g_projector(), ket_g_projector()) - pauli(3)) < 1e-15);
    CHECK(max_abs(outer_apply(pauli(3), pauli(1), pauli(2))) < 1e-15);
    CHECK(max_abs(outer_apply(pauli(0), pauli(1), pauli(1)) - 2.0 * pauli(0)) < 1e-15);
    CHECK_THROWS_AS(outer_apply(pauli(0), pauli(1), ComplexMatrix::Zero(3, 3)), ShapeError);
}

TEST_CASE("outer_apply is linear in its operand")
{
    for (int trial = 0; trial < 50; ++trial)
    {
        const ComplexMatrix a = random_matrix(3, 3);
        const ComplexMatrix b = random_matrix(3, 3);
        const ComplexMatrix c1 = random_matrix(3, 3);
        const ComplexMatrix c2 = random_matrix(3, 3);
        const Complex x = testing::random_complex();
        const Complex y = testing::random_complex();
        const ComplexMatrix lhs = outer_apply(a, b, x * c1 + y * c2);
        const ComplexMatrix rhs = x * outer_apply(a, b, c1) + y * outer_apply(a, b, c2);
        CHECK(max_abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("pauli_expand")
{
    const auto plus = pauli_expand(sigma_plus());
    CHECK(std::abs(plus[0]) < 1e-15);
    CHECK(std::abs(plus[1] - Complex(0.5)) < 1e-15);
    CHECK(std::abs(plus[2] - Complex(0.0, 0.5)) < 1e-15);
    CHECK(std::abs(plus[3]) < 1e-15);

    const auto ground = pauli_expand(ket_g_projector());
    CHECK(std::abs(ground[0] - Complex(0.5)) < 1e-15);
    CHECK(std::abs(ground[1]) < 1e-15);
    CHECK(std::abs(ground[2]) < 1e-15);
    CHECK(std::abs(ground[3] - Complex(-0.5)) < 1e-15);

    CHECK_THROWS_AS(pauli_expand(ComplexMatrix::Zero(3, 3)), ShapeError);
}

TEST_CASE("pauli_expand round trip")
{
    for (int trial = 0; trial < 200; ++trial)
    {
        const ComplexMatrix a = random_matrix(2, 2);
        CHECK(max_abs(pauli_reconstruct(pauli_expand(a)) - a) < 1e-14);
    }
}

TEST_CASE("templated scalar types")
{
    const Matrix<double> s1 = pauli<double>(1);
    CHECK(hs_inner(s1, s1) == 2.0);
    CHECK_THROWS_AS(pauli<double>(2), DomainError);

    using CF = std::complex<float>;
    const auto c = pauli_expand(Matrix<CF>(pauli<CF>(3) + pauli<CF>(2)));
    CHECK(c[0] == CF(0.0f));
    CHECK(c[2] == CF(1.0f));
    CHECK(c[3] == CF(1.0f));
}

TEST_CASE("vec / unvec use column stacking")
{
    ComplexMatrix m(2, 2);
    m << 1.0, 2.0, 3.0, 4.0;
    const ComplexVector v = vec(m);
    CHECK(v(1) == Complex(3.0));
    CHECK(v(2) == Complex(2.0));
    CHECK(max_abs(unvec(v, 2) - m) == 0.0);
    CHECK_THROWS_AS(unvec(v, 3), ShapeError);
}
