#include "dampqda/boson.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dampqda
{

namespace
{

double binomial(int n, int k)
{
    if (k < 0 || k > n)
    {
        return 0.0;
    }
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
    {
        r = r * (n - k + i) / i;
    }
    return r;
}

double factorial(int n)
{
    double r = 1.0;
    for (int i = 2; i <= n; ++i)
    {
        r *= i;
    }
    return r;
}

// Normal-ordered product of two monomials, emitted term by term.
template <typename Sink>
void multiply_monomials(const NormalMonomial& lhs, const NormalMonomial& rhs, Sink&& sink)
{
    // The per-mode contraction count k ranges over 0..min(q_lhs, p_rhs).
    std::array<int, boson_modes> kmax{};
    for (std::size_t m = 0; m < boson_modes; ++m)
    {
        kmax[m] = std::min(lhs.annihilate[m], rhs.create[m]);
    }

    std::array<int, boson_modes> k{};
    while (true)
    {
        NormalMonomial out;
        double weight = 1.0;
        for (std::size_t m = 0; m < boson_modes; ++m)
        {
            const int q = lhs.annihilate[m];
            const int p = rhs.create[m];
            weight *= binomial(q, k[m]) * binomial(p, k[m]) * factorial(k[m]);
            out.create[m] = lhs.create[m] + p - k[m];
            out.annihilate[m] = q - k[m] + rhs.annihilate[m];
        }
        sink(out, weight);

        std::size_t m = 0;
        for (; m < boson_modes; ++m)
        {
            if (++k[m] <= kmax[m])
            {
                break;
            }
            k[m] = 0;
        }
        if (m == boson_modes)
        {
            break;
        }
    }
}

std::string format_real(double x)
{
    if (x == 0.0)
    {
        x = 0.0; // drops the sign of negative zero
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace

int NormalMonomial::degree() const
{
    int d = 0;
    for (std::size_t m = 0; m < boson_modes; ++m)
    {
        d += create[m] + annihilate[m];
    }
    return d;
}

bool NormalMonomial::conserves_number() const
{
    int net = 0;
    for (std::size_t m = 0; m < boson_modes; ++m)
    {
        net += create[m] - annihilate[m];
    }
    return net == 0;
}

BosonPolynomial::BosonPolynomial(Complex scalar)
{
    accumulate(NormalMonomial::identity(), scalar);
}

BosonPolynomial::BosonPolynomial(const NormalMonomial& m, Complex coeff)
{
    for (std::size_t i = 0; i < boson_modes; ++i)
    {
        if (m.create[i] < 0 || m.annihilate[i] < 0)
        {
            throw DomainError("BosonPolynomial: negative exponent in monomial " + to_string(m));
        }
    }
    accumulate(m, coeff);
}

Complex BosonPolynomial::coefficient(const NormalMonomial& m) const
{
    auto it = m_terms.find(m);
    return it == m_terms.end() ? Complex(0.0) : it->second;
}

int BosonPolynomial::degree() const
{
    int d = -1;
    for (const auto& [m, c] : m_terms)
    {
        d = std::max(d, m.degree());
    }
    return d;
}

bool BosonPolynomial::conserves_number() const
{
    return std::all_of(m_terms.begin(), m_terms.end(),
                       [](const auto& t) { return t.first.conserves_number(); });
}

double BosonPolynomial::max_abs_coefficient() const
{
    double r = 0.0;
    for (const auto& [m, c] : m_terms)
    {
        r = std::max(r, std::abs(c));
    }
    return r;
}

void BosonPolynomial::accumulate(const NormalMonomial& m, Complex c, double tol)
{
    auto [it, inserted] = m_terms.try_emplace(m, c);
    if (!inserted)
    {
        it->second += c;
    }
    if (std::abs(it->second) < tol)
    {
        m_terms.erase(it);
    }
}

BosonPolynomial& BosonPolynomial::prune(double tol)
{
    std::erase_if(m_terms, [tol](const auto& t) { return std::abs(t.second) < tol; });
    return *this;
}

BosonPolynomial& BosonPolynomial::operator+=(const BosonPolynomial& rhs)
{
    for (const auto& [m, c] : rhs.m_terms)
    {
        accumulate(m, c);
    }
    return *this;
}

BosonPolynomial& BosonPolynomial::operator-=(const BosonPolynomial& rhs)
{
    for (const auto& [m, c] : rhs.m_terms)
    {
        accumulate(m, -c);
    }
    return *this;
}

BosonPolynomial& BosonPolynomial::operator*=(Complex s)
{
    for (auto& [m, c] : m_terms)
    {
        c *= s;
    }
    return prune();
}

BosonPolynomial operator+(BosonPolynomial lhs, const BosonPolynomial& rhs)
{
    return lhs += rhs;
}

BosonPolynomial operator-(BosonPolynomial lhs, const BosonPolynomial& rhs)
{
    return lhs -= rhs;
}

BosonPolynomial operator-(BosonPolynomial p)
{
    return p *= Complex(-1.0);
}

BosonPolynomial operator*(Complex s, BosonPolynomial p)
{
    return p *= s;
}

BosonPolynomial operator*(BosonPolynomial p, Complex s)
{
    return p *= s;
}

BosonPolynomial operator*(const BosonPolynomial& p, const BosonPolynomial& q)
{
    return multiply(p, q);
}

BosonPolynomial multiply(const BosonPolynomial& p, const BosonPolynomial& q)
{
    // Accumulate unpruned so cancellation is resolved once, at the end.
    std::map<NormalMonomial, Complex> acc;
    for (const auto& [mp, cp] : p.terms())
    {
        for (const auto& [mq, cq] : q.terms())
        {
            const Complex c = cp * cq;
            multiply_monomials(mp, mq,
                               [&](const NormalMonomial& m, double w) { acc[m] += w * c; });
        }
    }
    BosonPolynomial out;
    for (const auto& [m, c] : acc)
    {
        out.accumulate(m, c);
    }
    return out;
}

BosonPolynomial adjoint(const BosonPolynomial& p)
{
    // (a^dagger^p a^q)^dagger = a^dagger^q a^p per mode, and modes commute, so
    // swapping exponents is already normal ordered.
    BosonPolynomial out;
    for (const auto& [m, c] : p.terms())
    {
        NormalMonomial swapped{m.annihilate, m.create};
        out.accumulate(swapped, std::conj(c));
    }
    return out;
}

BosonPolynomial commutator(const BosonPolynomial& p, const BosonPolynomial& q)
{
    return multiply(p, q) - multiply(q, p);
}

BosonPolynomial power(const BosonPolynomial& p, int exponent)
{
    if (exponent < 0)
    {
        throw DomainError("power: negative exponent");
    }
    BosonPolynomial out = BosonPolynomial::identity();
    for (int i = 0; i < exponent; ++i)
    {
        out = multiply(out, p);
    }
    return out;
}

std::optional<Complex> proportionality(const BosonPolynomial& p, const BosonPolynomial& q,
                                       double tol)
{
    if (q.is_zero())
    {
        throw DomainError("proportionality: reference polynomial is zero");
    }
    if (p.is_zero())
    {
        return Complex(0.0);
    }

    // Least-squares ratio over the union of supports.
    Complex num(0.0);
    double den = 0.0;
    for (const auto& [m, cq] : q.terms())
    {
        num += std::conj(cq) * p.coefficient(m);
        den += std::norm(cq);
    }
    const Complex lambda = num / den;

    const double scale = q.max_abs_coefficient();
    const BosonPolynomial residual = p - lambda * q;
    if (residual.max_abs_coefficient() > tol * scale)
    {
        return std::nullopt;
    }
    return lambda;
}

double max_coefficient_distance(const BosonPolynomial& p, const BosonPolynomial& q)
{
    double d = 0.0;
    for (const auto& [m, c] : p.terms())
    {
        d = std::max(d, std::abs(c - q.coefficient(m)));
    }
    for (const auto& [m, c] : q.terms())
    {
        if (p.terms().find(m) == p.terms().end())
        {
            d = std::max(d, std::abs(c));
        }
    }
    return d;
}

std::string to_string(const NormalMonomial& m)
{
    std::ostringstream os;
    os << "ad^" << m.create[0] << " bd^" << m.create[1] << " a^" << m.annihilate[0] << " b^"
       << m.annihilate[1];
    return os.str();
}

std::string to_string(const BosonPolynomial& p)
{
    if (p.is_zero())
    {
        return "0";
    }
    std::string out;
    for (const auto& [m, c] : p.terms())
    {
        if (!out.empty())
        {
            out += " + ";
        }
        const double im = c.imag() == 0.0 ? 0.0 : c.imag();
        out += "(" + format_real(c.real()) + (std::signbit(im) ? "" : "+") + format_real(im) +
               "i)·" + to_string(m);
    }
    return out;
}

} // namespace dampqda
