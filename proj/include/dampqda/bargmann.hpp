#ifndef DAMPQDA_BARGMANN_HPP
#define DAMPQDA_BARGMANN_HPP

#include <cstdint>
#include <map>
#include <utility>

#include "dampqda/boson.hpp"

namespace dampqda
{

/// f(z, w) = sum c_{mn} z^m w^n, holomorphic polynomial in two variables.
class BivariatePolynomial
{
public:
    using Degree = std::pair<int, int>; // (deg_z, deg_w)
    using TermMap = std::map<Degree, Complex>;

    BivariatePolynomial() = default;
    BivariatePolynomial(Degree d, Complex coeff);

    static BivariatePolynomial monomial(int deg_z, int deg_w, Complex coeff = 1.0)
    {
        return {{deg_z, deg_w}, coeff};
    }

    const TermMap& terms() const noexcept { return m_terms; }
    bool is_zero() const noexcept { return m_terms.empty(); }
    Complex coefficient(int deg_z, int deg_w) const;

    void accumulate(Degree d, Complex c, double tol = default_pruning_tolerance);

    BivariatePolynomial& operator+=(const BivariatePolynomial& rhs);
    BivariatePolynomial& operator*=(Complex s);

    friend bool operator==(const BivariatePolynomial&, const BivariatePolynomial&) = default;

private:
    TermMap m_terms;
};

BivariatePolynomial operator+(BivariatePolynomial lhs, const BivariatePolynomial& rhs);
BivariatePolynomial operator*(Complex s, BivariatePolynomial f);

/// Acts with P through a^dagger -> z, a -> d/dz, b^dagger -> w, b -> d/dw.
BivariatePolynomial bargmann_apply(const BosonPolynomial& p, const BivariatePolynomial& f);

/// Gaussian-measure inner product, conjugate-linear in f:
/// <z^m w^n, z^p w^q> = m! n! delta_mp delta_nq.
Complex bargmann_inner(const BivariatePolynomial& f, const BivariatePolynomial& g);

/// Exact <z^m w^n, z^p w^q> in integer arithmetic. Valid while m! n! fits in 64 bits.
std::uint64_t monomial_inner_exact(int m, int n, int p, int q);

/// z^{n_a} w^{n_b} / sqrt(n_a! n_b!)
BivariatePolynomial normalized_state(int n_a, int n_b);

} // namespace dampqda

#endif // DAMPQDA_BARGMANN_HPP
