#include <doctest.h>

#include "dampqda/boson.hpp"
#include "support.hpp"

using namespace dampqda;
using BP = BosonPolynomial;
using dampqda::testing::random_polynomial;

namespace
{

BP mono(int pa, int pb, int qa, int qb, Complex c = 1.0)
{
    return BP(NormalMonomial::make(pa, pb, qa, qb), c);
}

} // namespace

TEST_CASE("canonical commutator normal orders a a^dagger")
{
    CHECK(BP::a() * BP::ad() == BP::identity() + mono(1, 0, 1, 0));
    CHECK(commutator(BP::a(), BP::ad()) == BP::identity());
    CHECK(commutator(BP::b(), BP::bd()) == BP::identity());
}

TEST_CASE("modes commute")
{
    CHECK(commutator(BP::a(), BP::bd()).is_zero());
    CHECK(commutator(BP::a(), BP::b()).is_zero());
    CHECK(commutator(BP::ad(), BP::b()).is_zero());
    CHECK(commutator(BP::ad(), BP::bd()).is_zero());
}

TEST_CASE("products checked against the truncated Fock oracle")
{
    // (a^dagger b)(b^dagger a) = a^dagger a + a^dagger b^dagger a b
    const BP raise = BP::ad() * BP::b();
    const BP lower = BP::bd() * BP::a();
    CHECK(raise * lower == mono(1, 0, 1, 0) + mono(1, 1, 1, 1));

    // (a^dagger a)^2 = a^dagger a + a^dagger^2 a^2
    const BP na = BP::ad() * BP::a();
    CHECK(na * na == mono(1, 0, 1, 0) + mono(2, 0, 2, 0));

    const testing::LadderMatrices lad(6);
    const auto idx = testing::interior_indices(6, 4);
    CHECK(testing::interior_distance(lad.of(raise * lower), lad.of(raise) * lad.of(lower), idx) < 1e-12);
    CHECK(testing::interior_distance(lad.of(na * na), lad.of(na) * lad.of(na), idx) < 1e-12);
}

TEST_CASE("higher-order rewrite a^2 a^dagger^2")
{
    // a^2 a^dagger^2 = 2 + 4 a^dagger a + a^dagger^2 a^2
    const BP lhs = mono(0, 0, 2, 0) * mono(2, 0, 0, 0);
    CHECK(lhs == BP(Complex(2.0)) + mono(1, 0, 1, 0, 4.0) + mono(2, 0, 2, 0));
}

TEST_CASE("adjoint")
{
    CHECK(adjoint(BP::bd() * BP::a()) == BP::ad() * BP::b());
    CHECK(adjoint(Complex(0.0, 1.0) * mono(1, 0, 1, 0)) == Complex(0.0, -1.0) * mono(1, 0, 1, 0));
    CHECK(adjoint(mono(0, 0, 2, 0)) == mono(2, 0, 0, 0));
}

TEST_CASE("proportionality")
{
    const BP raise = BP::ad() * BP::b();
    const Complex lambda(-0.4, -1.0);
    const auto r = proportionality(lambda * raise, raise);
    REQUIRE(r.has_value());
    CHECK(std::abs(*r - lambda) < 1e-15);

    CHECK_FALSE(proportionality(raise + BP::bd() * BP::a(), raise).has_value());

    const auto z = proportionality(BP::zero(), BP::bd() * BP::b());
    REQUIRE(z.has_value());
    CHECK(*z == Complex(0.0));

    CHECK_THROWS_AS(proportionality(raise, BP::zero()), DomainError);
}

TEST_CASE("pruning removes cancellation residue")
{
    BP p = mono(1, 0, 1, 0, 1.0);
    p -= mono(1, 0, 1, 0, 1.0 - 1e-16);
    CHECK(p.is_zero());
    CHECK(p.degree() == -1);
}

TEST_CASE("display format is stable")
{
    CHECK(to_string(BP::zero()) == "0");
    CHECK(to_string(Complex(0.5) * (BP::bd() * BP::b())) == "(0.5+0i)·ad^0 bd^1 a^0 b^1");
    const BP p = BP::ad() * BP::a() - BP::bd() * BP::b();
    CHECK(to_string(p) == "(-1+0i)·ad^0 bd^1 a^0 b^1 + (1+0i)·ad^1 bd^0 a^1 b^0");
    CHECK(to_string(Complex(0.0, -2.0) * BP::a()) == "(0-2i)·ad^0 bd^0 a^1 b^0");
}

TEST_CASE("negative exponents are rejected")
{
    CHECK_THROWS_AS(BP(NormalMonomial::make(-1, 0, 0, 0)), DomainError);
}

TEST_CASE("property: associativity over random polynomials")
{
    for (int trial = 0; trial < 500; ++trial)
    {
        const BP p = random_polynomial(3, 4);
        const BP q = random_polynomial(3, 4);
        const BP r = random_polynomial(3, 4);
        CHECK(max_coefficient_distance((p * q) * r, p * (q * r)) < 1e-12 * std::max(1.0, ((p * q) * r).max_abs_coefficient()));
    }
}

TEST_CASE("property: adjoint is an involutive anti-homomorphism")
{
    for (int trial = 0; trial < 200; ++trial)
    {
        const BP p = random_polynomial(3, 4);
        const BP q = random_polynomial(3, 4);
        CHECK(adjoint(adjoint(p)) == p);
        CHECK(max_coefficient_distance(adjoint(p * q), adjoint(q) * adjoint(p)) < 1e-12);
    }
}

TEST_CASE("property: Jacobi identity")
{
    for (int trial = 0; trial < 200; ++trial)
    {
        const BP p = random_polynomial(2, 3);
        const BP q = random_polynomial(2, 3);
        const BP r = random_polynomial(2, 3);
        const BP j = commutator(p, commutator(q, r)) + commutator(q, commutator(r, p)) +
                     commutator(r, commutator(p, q));
        CHECK(j.max_abs_coefficient() < 1e-10);
    }
}
