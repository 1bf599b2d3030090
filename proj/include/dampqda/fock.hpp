#ifndef DAMPQDA_FOCK_HPP
#define DAMPQDA_FOCK_HPP

#include <utility>
#include <vector>

#include "dampqda/boson.hpp"

namespace dampqda
{

/// Two-mode Fock space |n_a, n_b>, 0 <= n_a, n_b <= n_max, indexed n_a*(n_max+1) + n_b.
struct FockTruncation
{
    int n_max = 0;

    Eigen::Index dimension() const { return Eigen::Index(n_max + 1) * (n_max + 1); }
    Eigen::Index index(int na, int nb) const { return Eigen::Index(na) * (n_max + 1) + nb; }
};

/// States |n_a, n_b> with n_a + n_b = N, ordered by descending n_a, so index k
/// holds n_a = N - k. For N = 1: |e> = |1,0>, |g> = |0,1>.
struct FixedExcitationSubspace
{
    int total = 0;

    Eigen::Index dimension() const { return total + 1; }
    std::pair<int, int> occupation(Eigen::Index k) const { return {total - int(k), int(k)}; }
    Eigen::Index index(int na) const { return total - na; }
};

/// <m_a, m_b| P |n_a, n_b> with hard truncation at n_max.
ComplexMatrix fock_represent(const BosonPolynomial& p, FockTruncation trunc);

/// Compression of P to the fixed-excitation subspace N (exact ladder elements).
ComplexMatrix fixed_n_represent(const BosonPolynomial& p, int total);

/// The (N+1)^2 normalized number-conserving monomials
/// a^dagger^i b^dagger^{N-i} a^j b^{N-j} / sqrt(i!(N-i)!j!(N-j)!),
/// whose fixed-N representation is the matrix unit E_{kl} with k = N-i, l = N-j.
/// Element k*(N+1) + l corresponds to E_{kl} (row-major).
std::vector<BosonPolynomial> operator_basis(int total);

/// Inverse of fixed_n_represent on the span of operator_basis(N).
BosonPolynomial polynomial_from_fixed_n(const ComplexMatrix& m, int total);

} // namespace dampqda

#endif // DAMPQDA_FOCK_HPP
