#ifndef DAMPQDA_QDA_HPP
#define DAMPQDA_QDA_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dampqda/boson.hpp"
#include "dampqda/damping_basis.hpp"
#include "dampqda/lindblad.hpp"

namespace dampqda
{

// Spin operators with a Jordan-Schwinger image.
enum class SpinLabel
{
    identity, // sigma_0  -> a^dagger a + b^dagger b
    x,        // sigma_1  -> a^dagger b + b^dagger a
    y,        // sigma_2  -> -i (a^dagger b - b^dagger a)
    z,        // sigma_3  -> a^dagger a - b^dagger b
    plus,     // sigma_+  -> a^dagger b
    minus,    // sigma_-  -> b^dagger a
    excited   // sigma_e  -> a^dagger a
};

/// Accepts "sigma0".."sigma3", "sigma+", "sigma-", "sigmae". Throws DomainError otherwise.
SpinLabel parse_spin_label(std::string_view name);

BosonPolynomial js_map(SpinLabel label);

/// Maps a 2x2 operand through its Pauli expansion.
BosonPolynomial js_map(const ComplexMatrix& a);

/// Generator i in {0, 1, 2, 3} for spin j. The quadratic image does not depend
/// on j; its block at N = 2j is the (2j+1)-dimensional matrix 2 J_i.
BosonPolynomial js_map_spin_j(int index, double j);

/// Excitation number N = 2j; throws DomainError unless j is a positive half-integer.
int spin_subspace(double j);

struct TildeCoefficients
{
    double F = 1.0;
    double G = 1.0;
    double H = 1.0;
};

struct TildeMap
{
    BosonPolynomial sigma1; // G js(sigma_1)
    BosonPolynomial sigma2; // H js(sigma_2)
    BosonPolynomial sigma3; // F js(sigma_3)
    BosonPolynomial plus;   // (sigma1 + i sigma2) / 2
    BosonPolynomial minus;  // (sigma1 - i sigma2) / 2
};

TildeMap tilde_map(const TildeCoefficients& coeffs);

/// Unique element of span(operator_basis(N)) with the same fixed-N block as P.
/// P must conserve excitation number and N >= 1.
BosonPolynomial reduce_fixed_n(const BosonPolynomial& p, int total);

struct NamedAnsatz
{
    std::string label;
    BosonPolynomial op;
};

/// Steady, coherence and population ansatzes of the damped qubit:
/// ss = b^dagger b, + = a^dagger b / 2, - = b^dagger a / 2, -> = a^dagger a - b^dagger b.
std::vector<NamedAnsatz> qubit_ansatzes();

struct QdaMode
{
    Complex lambda;
    BosonPolynomial eigenoperator;
    std::optional<std::string> label;
    double residual = 0.0; // max |L p - lambda p| / max |p| over coefficients
};

struct QdaResult
{
    int subspace = 0;
    std::vector<QdaMode> modes; // spectral_order
    // Bottleneck distance between the QDA spectrum and the vectorized fixed-N Liouvillian.
    double crosscheck = 0.0;
};

struct QdaOptions
{
    double degeneracy_rel = 1e-8;
    double label_tol = 1e-8;
};

/// Matrix of the reduced Liouvillian in operator_basis(N); column c is the image of basis element c.
ComplexMatrix qda_generator(const BosonModel& model);

/// Replaces every cluster of eigenvalues linked by gaps below tol with the cluster mean.
/// A defective eigenvalue splits by O(sqrt(eps)) under rounding; the mean is O(eps) accurate.
std::vector<Complex> merge_clusters(std::vector<Complex> eigenvalues, double tol);

/// Eigenvalues of qda_generator in spectral order, with clusters tighter than
/// cluster_rel * max(1, ||G||_F) merged. Unlike run_qda this accepts degenerate and
/// non-diagonalizable generators; eigen-polynomials are not built.
std::vector<Complex> qda_spectrum(const BosonModel& model, double cluster_rel = 1e-6);

QdaResult run_qda(const BosonModel& model, const QdaOptions& opts = {});

struct SpectrumMatching
{
    double max_distance = 0.0;
    std::vector<std::size_t> assignment; // lhs[i] <-> rhs[assignment[i]]
};

/// Optimal (bottleneck) matching of two equally sized eigenvalue multisets.
SpectrumMatching match_spectra(const std::vector<Complex>& lhs, const std::vector<Complex>& rhs);

struct CrossValidationReport
{
    std::size_t matched = 0;
    double max_eigenvalue_distance = 0.0;
    double max_operator_residual = 0.0;
    bool passed = false;
};

/// Compares QDA eigenpairs with a matrix-picture damping basis of the same model.
CrossValidationReport cross_validate(const QdaResult& qda, const DampingBasis& basis,
                                     double tol = 1e-8);

/// Residual of A against the best multiple of B, relative to max |A|.
double matrix_proportionality_residual(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace dampqda

#endif // DAMPQDA_QDA_HPP
