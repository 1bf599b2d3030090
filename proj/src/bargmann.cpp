#include "dampqda/bargmann.hpp"

#include <cmath>
#include <limits>

namespace dampqda
{

namespace
{

std::uint64_t factorial_exact(int n)
{
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i)
    {
        if (r > std::numeric_limits<std::uint64_t>::max() / std::uint64_t(i))
        {
            throw DomainError("factorial_exact: " + std::to_string(n) + "! overflows 64 bits");
        }
        r *= std::uint64_t(i);
    }
    return r;
}

// n!/(n-k)!
double falling_factorial(int n, int k)
{
    double r = 1.0;
    for (int i = 0; i < k; ++i)
    {
        r *= n - i;
    }
    return r;
}

double factorial(int n)
{
    return falling_factorial(n, n);
}

} // namespace

BivariatePolynomial::BivariatePolynomial(Degree d, Complex coeff)
{
    if (d.first < 0 || d.second < 0)
    {
        throw DomainError("BivariatePolynomial: negative degree");
    }
    accumulate(d, coeff);
}

Complex BivariatePolynomial::coefficient(int deg_z, int deg_w) const
{
    auto it = m_terms.find({deg_z, deg_w});
    return it == m_terms.end() ? Complex(0.0) : it->second;
}

void BivariatePolynomial::accumulate(Degree d, Complex c, double tol)
{
    auto [it, inserted] = m_terms.try_emplace(d, c);
    if (!inserted)
    {
        it->second += c;
    }
    if (std::abs(it->second) < tol)
    {
        m_terms.erase(it);
    }
}

BivariatePolynomial& BivariatePolynomial::operator+=(const BivariatePolynomial& rhs)
{
    for (const auto& [d, c] : rhs.m_terms)
    {
        accumulate(d, c);
    }
    return *this;
}

BivariatePolynomial& BivariatePolynomial::operator*=(Complex s)
{
    for (auto& [d, c] : m_terms)
    {
        c *= s;
    }
    std::erase_if(m_terms, [](const auto& t) { return std::abs(t.second) < default_pruning_tolerance; });
    return *this;
}

BivariatePolynomial operator+(BivariatePolynomial lhs, const BivariatePolynomial& rhs)
{
    return lhs += rhs;
}

BivariatePolynomial operator*(Complex s, BivariatePolynomial f)
{
    return f *= s;
}

BivariatePolynomial bargmann_apply(const BosonPolynomial& p, const BivariatePolynomial& f)
{
    BivariatePolynomial out;
    for (const auto& [m, c] : p.terms())
    {
        for (const auto& [deg, fc] : f.terms())
        {
            const auto [dz, dw] = deg;
            const int qa = m.annihilate[0];
            const int qb = m.annihilate[1];
            if (qa > dz || qb > dw)
            {
                continue;
            }
            const double weight = falling_factorial(dz, qa) * falling_factorial(dw, qb);
            out.accumulate({dz - qa + m.create[0], dw - qb + m.create[1]}, c * fc * weight);
        }
    }
    return out;
}

Complex bargmann_inner(const BivariatePolynomial& f, const BivariatePolynomial& g)
{
    Complex acc(0.0);
    for (const auto& [deg, fc] : f.terms())
    {
        const Complex gc = g.coefficient(deg.first, deg.second);
        if (gc != Complex(0.0))
        {
            acc += std::conj(fc) * gc * factorial(deg.first) * factorial(deg.second);
        }
    }
    return acc;
}

std::uint64_t monomial_inner_exact(int m, int n, int p, int q)
{
    if (m < 0 || n < 0 || p < 0 || q < 0)
    {
        throw DomainError("monomial_inner_exact: negative degree");
    }
    if (m != p || n != q)
    {
        return 0;
    }
    const std::uint64_t fm = factorial_exact(m);
    const std::uint64_t fn = factorial_exact(n);
    if (fn != 0 && fm > std::numeric_limits<std::uint64_t>::max() / fn)
    {
        throw DomainError("monomial_inner_exact: result overflows 64 bits");
    }
    return fm * fn;
}

BivariatePolynomial normalized_state(int n_a, int n_b)
{
    if (n_a < 0 || n_b < 0)
    {
        throw DomainError("normalized_state: occupations must be non-negative");
    }
    return BivariatePolynomial::monomial(n_a, n_b, 1.0 / std::sqrt(factorial(n_a) * factorial(n_b)));
}

} // namespace dampqda
