#include "dampqda/fock.hpp"

#include <cmath>
#include <optional>

namespace dampqda
{

namespace
{

double factorial(int n)
{
    double r = 1.0;
    for (int i = 2; i <= n; ++i)
    {
        r *= i;
    }
    return r;
}

struct Amplitude
{
    std::array<int, boson_modes> occupation;
    double value;
};

// Applies one normal-ordered monomial to |occupation>. Annihilators act first,
// then creators; a state whose occupation exceeds cap (if any) is dropped.
std::optional<Amplitude> apply_monomial(const NormalMonomial& m,
                                        std::array<int, boson_modes> occupation,
                                        std::optional<int> cap)
{
    double value = 1.0;
    for (std::size_t mode = 0; mode < boson_modes; ++mode)
    {
        const int n = occupation[mode];
        const int q = m.annihilate[mode];
        if (q > n)
        {
            return std::nullopt;
        }
        // sqrt(n!/(n-q)! * (n-q+p)!/(n-q)!)
        const int after = n - q + m.create[mode];
        if (cap && after > *cap)
        {
            return std::nullopt;
        }
        value *= std::sqrt(factorial(n) / factorial(n - q) * (factorial(after) / factorial(n - q)));
        occupation[mode] = after;
    }
    return Amplitude{occupation, value};
}

} // namespace

ComplexMatrix fock_represent(const BosonPolynomial& p, FockTruncation trunc)
{
    if (trunc.n_max < 0)
    {
        throw DomainError("fock_represent: n_max must be non-negative");
    }
    const Eigen::Index dim = trunc.dimension();
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (int na = 0; na <= trunc.n_max; ++na)
    {
        for (int nb = 0; nb <= trunc.n_max; ++nb)
        {
            const Eigen::Index col = trunc.index(na, nb);
            for (const auto& [m, c] : p.terms())
            {
                if (auto amp = apply_monomial(m, {na, nb}, trunc.n_max))
                {
                    out(trunc.index(amp->occupation[0], amp->occupation[1]), col) += c * amp->value;
                }
            }
        }
    }
    return out;
}

ComplexMatrix fixed_n_represent(const BosonPolynomial& p, int total)
{
    if (total < 0)
    {
        throw DomainError("fixed_n_represent: excitation number must be non-negative");
    }
    const FixedExcitationSubspace space{total};
    const Eigen::Index dim = space.dimension();
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col)
    {
        const auto [na, nb] = space.occupation(col);
        for (const auto& [m, c] : p.terms())
        {
            auto amp = apply_monomial(m, {na, nb}, std::nullopt);
            if (!amp || amp->occupation[0] + amp->occupation[1] != total)
            {
                continue;
            }
            out(space.index(amp->occupation[0]), col) += c * amp->value;
        }
    }
    return out;
}

std::vector<BosonPolynomial> operator_basis(int total)
{
    if (total < 0)
    {
        throw DomainError("operator_basis: excitation number must be non-negative");
    }
    const int dim = total + 1;
    std::vector<BosonPolynomial> basis;
    basis.reserve(std::size_t(dim) * dim);
    for (int k = 0; k < dim; ++k)
    {
        const int i = total - k;
        for (int l = 0; l < dim; ++l)
        {
            const int j = total - l;
            const double norm = std::sqrt(factorial(i) * factorial(total - i) * factorial(j) *
                                          factorial(total - j));
            basis.emplace_back(NormalMonomial::make(i, total - i, j, total - j), 1.0 / norm);
        }
    }
    return basis;
}

BosonPolynomial polynomial_from_fixed_n(const ComplexMatrix& m, int total)
{
    const Eigen::Index dim = total + 1;
    if (m.rows() != dim || m.cols() != dim)
    {
        throw ShapeError("polynomial_from_fixed_n: expected a " + std::to_string(dim) + "x" +
                         std::to_string(dim) + " matrix");
    }
    const auto basis = operator_basis(total);
    BosonPolynomial out;
    for (Eigen::Index k = 0; k < dim; ++k)
    {
        for (Eigen::Index l = 0; l < dim; ++l)
        {
            if (m(k, l) != Complex(0.0))
            {
                out += m(k, l) * basis[std::size_t(k * dim + l)];
            }
        }
    }
    return out;
}

} // namespace dampqda
