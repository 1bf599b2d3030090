#ifndef DAMPQDA_TESTS_SUPPORT_HPP
#define DAMPQDA_TESTS_SUPPORT_HPP

// Generators and independent oracles shared by the test suites. Nothing in
// here calls the representation code it is used to check.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "dampqda/boson.hpp"
#include "dampqda/lindblad.hpp"
#include "dampqda/operator_core.hpp"

namespace dampqda::testing
{

inline std::mt19937_64& rng()
{
    static std::mt19937_64 engine(0x5eed1234ULL);
    return engine;
}

inline Complex random_complex(std::mt19937_64& g = rng())
{
    std::normal_distribution<double> n;
    return {n(g), n(g)};
}

inline double uniform(double lo, double hi, std::mt19937_64& g = rng())
{
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline int uniform_int(int lo, int hi, std::mt19937_64& g = rng())
{
    return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& g = rng())
{
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i)
    {
        m(i) = random_complex(g);
    }
    return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index d, std::mt19937_64& g = rng())
{
    const ComplexMatrix m = random_matrix(d, d, g);
    return (m + m.adjoint()) / 2.0;
}

/// Random density matrix: A A^dagger / Tr.
inline ComplexMatrix random_density(Eigen::Index d, std::mt19937_64& g = rng())
{
    const ComplexMatrix m = random_matrix(d, d, g);
    const ComplexMatrix rho = m * m.adjoint();
    return rho / rho.trace();
}

/// Random polynomial with at most `terms` monomials, each of total degree <= max_degree.
inline BosonPolynomial random_polynomial(int max_degree, int terms, std::mt19937_64& g = rng())
{
    BosonPolynomial p;
    const int count = uniform_int(1, terms, g);
    for (int t = 0; t < count; ++t)
    {
        std::array<int, 4> e{};
        int budget = uniform_int(0, max_degree, g);
        for (auto& x : e)
        {
            x = uniform_int(0, budget, g);
            budget -= x;
        }
        p += BosonPolynomial(NormalMonomial::make(e[0], e[1], e[2], e[3]), random_complex(g));
    }
    return p;
}

/// Random number-conserving polynomial (quadratic and quartic terms).
inline BosonPolynomial random_conserving_polynomial(int terms, std::mt19937_64& g = rng())
{
    BosonPolynomial p;
    for (int t = 0; t < terms; ++t)
    {
        const int pa = uniform_int(0, 2, g);
        const int pb = uniform_int(0, 2 - pa, g);
        const int qa = uniform_int(0, pa + pb, g);
        const int qb = pa + pb - qa;
        p += BosonPolynomial(NormalMonomial::make(pa, pb, qa, qb), random_complex(g));
    }
    return p;
}

inline QubitParams random_qubit_params(std::mt19937_64& g = rng())
{
    // Gamma, Gamma* in (0, 2], omega in [0.1, 5].
    return {uniform(0.1, 5.0, g), 2.0 - uniform(0.0, 2.0, g), 2.0 - uniform(0.0, 2.0, g)};
}

// --- Fock-space oracle: explicit ladder matrices on (n_max+1)^2 states. ---

inline ComplexMatrix single_mode_annihilator(int n_max)
{
    ComplexMatrix a = ComplexMatrix::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n)
    {
        a(n - 1, n) = std::sqrt(double(n));
    }
    return a;
}

struct LadderMatrices
{
    ComplexMatrix a, ad, b, bd;

    explicit LadderMatrices(int n_max)
    {
        const ComplexMatrix one = single_mode_annihilator(n_max);
        const ComplexMatrix id = ComplexMatrix::Identity(n_max + 1, n_max + 1);
        // Index n_a * (n_max + 1) + n_b: mode a is the slow index.
        a = Eigen::kroneckerProduct(one, id);
        b = Eigen::kroneckerProduct(id, one);
        ad = a.adjoint();
        bd = b.adjoint();
    }

    ComplexMatrix power(const ComplexMatrix& m, int k) const
    {
        ComplexMatrix r = ComplexMatrix::Identity(m.rows(), m.cols());
        for (int i = 0; i < k; ++i)
        {
            r = r * m;
        }
        return r;
    }

    // Matrix product of ladder matrices in normal order (truncation errors live
    // only near the boundary).
    ComplexMatrix of(const BosonPolynomial& p) const
    {
        ComplexMatrix out = ComplexMatrix::Zero(a.rows(), a.cols());
        for (const auto& [m, c] : p.terms())
        {
            out += c * power(ad, m.create[0]) * power(bd, m.create[1]) * power(a, m.annihilate[0]) *
                   power(b, m.annihilate[1]);
        }
        return out;
    }
};

/// Indices of states |n_a, n_b> with both occupations <= limit.
inline std::vector<Eigen::Index> interior_indices(int n_max, int limit)
{
    std::vector<Eigen::Index> idx;
    for (int na = 0; na <= limit; ++na)
    {
        for (int nb = 0; nb <= limit; ++nb)
        {
            idx.push_back(Eigen::Index(na) * (n_max + 1) + nb);
        }
    }
    return idx;
}

inline double interior_distance(const ComplexMatrix& x, const ComplexMatrix& y,
                                const std::vector<Eigen::Index>& idx)
{
    double d = 0.0;
    for (auto r : idx)
    {
        for (auto c : idx)
        {
            d = std::max(d, std::abs(x(r, c) - y(r, c)));
        }
    }
    return d;
}

// --- Spin oracle: standard angular momentum matrices in descending-m order. ---

inline std::array<ComplexMatrix, 3> spin_matrices(double j)
{
    const int dim = int(std::lround(2 * j)) + 1;
    ComplexMatrix jz = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix jp = ComplexMatrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k)
    {
        const double m = j - k;
        jz(k, k) = m;
        if (k > 0)
        {
            // <m+1| J+ |m>
            jp(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
        }
    }
    const ComplexMatrix jm = jp.adjoint();
    const Complex i(0.0, 1.0);
    return {(jp + jm) / 2.0, (jp - jm) / (2.0 * i), jz};
}

// --- Superoperator oracle: column-by-column action on matrix units. ---

template <typename Action>
ComplexMatrix superoperator_by_columns(Eigen::Index d, Action&& action)
{
    ComplexMatrix s(d * d, d * d);
    for (Eigen::Index col = 0; col < d * d; ++col)
    {
        ComplexMatrix unit = ComplexMatrix::Zero(d, d);
        unit(col % d, col / d) = 1.0; // column-stacking position
        const ComplexMatrix image = action(unit);
        for (Eigen::Index r = 0; r < d * d; ++r)
        {
            s(r, col) = image(r % d, r / d);
        }
    }
    return s;
}

/// Matrix exponential by a long Taylor series with scaling; independent of Eigen's Pade path.
inline ComplexMatrix taylor_expm(const ComplexMatrix& m)
{
    int squarings = 0;
    double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.5)
    {
        norm /= 2;
        ++squarings;
    }
    const ComplexMatrix scaled = m / std::pow(2.0, squarings);
    ComplexMatrix term = ComplexMatrix::Identity(m.rows(), m.cols());
    ComplexMatrix sum = term;
    for (int k = 1; k < 40; ++k)
    {
        term = term * scaled / double(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s)
    {
        sum = sum * sum;
    }
    return sum;
}

inline MatrixModel random_matrix_model(Eigen::Index d, int channels, std::mt19937_64& g = rng())
{
    std::vector<MatrixModel::Channel> ch;
    for (int k = 0; k < channels; ++k)
    {
        ch.push_back({random_matrix(d, d, g), uniform(0.1, 2.0, g)});
    }
    return MatrixModel(random_hermitian(d, g), std::move(ch));
}

} // namespace dampqda::testing

#endif // DAMPQDA_TESTS_SUPPORT_HPP
