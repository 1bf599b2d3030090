#ifndef DAMPQDA_BOSON_HPP
#define DAMPQDA_BOSON_HPP

#include <array>
#include <compare>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "dampqda/operator_core.hpp"

namespace dampqda
{

// Mode 0 is a, mode 1 is b.
inline constexpr std::size_t boson_modes = 2;

inline constexpr double default_pruning_tolerance = 1e-14;

/// a^dagger^{create[0]} b^dagger^{create[1]} a^{annihilate[0]} b^{annihilate[1]}
struct NormalMonomial
{
    std::array<int, boson_modes> create{};
    std::array<int, boson_modes> annihilate{};

    static NormalMonomial identity() { return {}; }
    static NormalMonomial make(int pa, int pb, int qa, int qb) { return {{pa, pb}, {qa, qb}}; }

    int degree() const;
    // p_a + p_b == q_a + q_b
    bool conserves_number() const;

    // Lexicographic on (p_a, p_b, q_a, q_b).
    auto operator<=>(const NormalMonomial&) const = default;
};

/// Complex-linear combination of normal-ordered two-mode monomials.
/// Normal order is canonical, so two polynomials denote the same operator
/// iff their coefficient maps agree.
class BosonPolynomial
{
public:
    using TermMap = std::map<NormalMonomial, Complex>;

    BosonPolynomial() = default;
    explicit BosonPolynomial(Complex scalar);
    BosonPolynomial(const NormalMonomial& m, Complex coeff = 1.0);

    static BosonPolynomial zero() { return {}; }
    static BosonPolynomial identity() { return BosonPolynomial(Complex(1.0)); }

    // Ladder operators.
    static BosonPolynomial a() { return {NormalMonomial::make(0, 0, 1, 0)}; }
    static BosonPolynomial ad() { return {NormalMonomial::make(1, 0, 0, 0)}; }
    static BosonPolynomial b() { return {NormalMonomial::make(0, 0, 0, 1)}; }
    static BosonPolynomial bd() { return {NormalMonomial::make(0, 1, 0, 0)}; }

    const TermMap& terms() const noexcept { return m_terms; }
    bool is_zero() const noexcept { return m_terms.empty(); }
    std::size_t size() const noexcept { return m_terms.size(); }

    Complex coefficient(const NormalMonomial& m) const;

    // Maximum total degree over terms; -1 for the zero polynomial.
    int degree() const;
    bool conserves_number() const;
    double max_abs_coefficient() const;

    // Adds c to the coefficient of m, dropping the term if it falls below tol.
    void accumulate(const NormalMonomial& m, Complex c, double tol = default_pruning_tolerance);
    BosonPolynomial& prune(double tol = default_pruning_tolerance);

    BosonPolynomial& operator+=(const BosonPolynomial& rhs);
    BosonPolynomial& operator-=(const BosonPolynomial& rhs);
    BosonPolynomial& operator*=(Complex s);

    friend bool operator==(const BosonPolynomial&, const BosonPolynomial&) = default;

private:
    TermMap m_terms;
};

BosonPolynomial operator+(BosonPolynomial lhs, const BosonPolynomial& rhs);
BosonPolynomial operator-(BosonPolynomial lhs, const BosonPolynomial& rhs);
BosonPolynomial operator-(BosonPolynomial p);
BosonPolynomial operator*(Complex s, BosonPolynomial p);
BosonPolynomial operator*(BosonPolynomial p, Complex s);
BosonPolynomial operator*(const BosonPolynomial& p, const BosonPolynomial& q);

/// Normal-ordered product. Per mode, a^q a^dagger^p = sum_k C(q,k) C(p,k) k! a^dagger^{p-k} a^{q-k}.
BosonPolynomial multiply(const BosonPolynomial& p, const BosonPolynomial& q);

BosonPolynomial adjoint(const BosonPolynomial& p);

BosonPolynomial commutator(const BosonPolynomial& p, const BosonPolynomial& q);

/// Integer power, p^0 = identity.
BosonPolynomial power(const BosonPolynomial& p, int exponent);

/// Returns lambda when p = lambda q coefficient-wise within tol, relative to
/// the largest coefficient magnitude of q. Throws DomainError if q is zero.
std::optional<Complex> proportionality(const BosonPolynomial& p, const BosonPolynomial& q,
                                       double tol = default_tolerance);

/// Largest coefficient-wise distance |p - q| (absolute).
double max_coefficient_distance(const BosonPolynomial& p, const BosonPolynomial& q);

/// "(0.5+0i)·ad^1 bd^0 a^0 b^1 + ..." in lexicographic monomial order; "0" for zero.
std::string to_string(const BosonPolynomial& p);
std::string to_string(const NormalMonomial& m);

} // namespace dampqda

#endif // DAMPQDA_BOSON_HPP
