#ifndef DAMPQDA_DAMPING_BASIS_HPP
#define DAMPQDA_DAMPING_BASIS_HPP

#include <vector>

#include "dampqda/lindblad.hpp"

namespace dampqda
{

struct BasisOptions
{
    // Eigenvalue gaps below degeneracy_rel * max(1, ||S||_F) are a degeneracy.
    double degeneracy_rel = 1e-8;
    // |lambda| <= zero_cluster_rel * max(1, ||S||_F) identifies the steady mode.
    double zero_cluster_rel = 1e-9;
    // Right-eigenvector residual bound relative to ||S||_F.
    double residual_rel = 1e-10;
    // Re lambda above this is an unstable mode.
    double stability_tol = 1e-10;
};

/// One damping-basis element: L right = lambda right, left^dagger L = lambda left^dagger,
/// with Tr{left^dagger right} = 1.
struct DampingMode
{
    Complex lambda;
    ComplexMatrix right;
    ComplexMatrix left;
    double residual = 0.0; // ||S v - lambda v||_2 for the unit-norm vec(right)
};

struct DampingBasis
{
    Eigen::Index dimension = 0;
    std::vector<DampingMode> modes; // sorted by descending Re lambda, then ascending Im lambda
    double superoperator_norm = 0.0;
};

struct ExpansionCoefficients
{
    std::vector<Complex> r; // r_k = Tr{left_k^dagger rho0}
    std::vector<Complex> s; // s_k = Tr{right_k^dagger rho0}
};

struct EvolutionResult
{
    std::vector<double> times;
    std::vector<ComplexMatrix> states;
    ExpansionCoefficients coefficients; // empty for the reference integrator
};

/// Deterministic spectral ordering: descending Re, then ascending Im, with real
/// parts closer than tol treated as equal.
bool spectral_order(Complex lhs, Complex rhs, double tol = 1e-9);

/// Throws DegeneracyError naming the first cluster of eigenvalues whose
/// pairwise gaps fall below tol.
void require_nondegenerate(const std::vector<Complex>& eigenvalues, double tol);

DampingBasis compute_damping_basis(const MatrixModel& model, const BasisOptions& opts = {});

/// The lambda = 0 right eigenoperator rescaled to unit trace.
ComplexMatrix steady_state(const DampingBasis& basis);

ExpansionCoefficients expand(const DampingBasis& basis, const ComplexMatrix& rho0);

/// sum_k r_k right_k
ComplexMatrix reconstruct(const DampingBasis& basis, const std::vector<Complex>& r);

EvolutionResult evolve_spectral(const DampingBasis& basis, const ComplexMatrix& rho0,
                                const std::vector<double>& times);

/// exp(S t) vec(rho0) by dense scaling-and-squaring, independent of the eigenbasis.
EvolutionResult evolve_reference(const MatrixModel& model, const ComplexMatrix& rho0,
                                 const std::vector<double>& times);

/// Max |Tr{left_k^dagger right_k'} - delta_kk'|.
double biorthonormality_deviation(const DampingBasis& basis);

/// Max elementwise deviation of sum_k vec(right_k) vec(left_k)^dagger from identity.
double check_closure(const DampingBasis& basis);

/// Evenly spaced grid of `points` times over [t_start, t_end].
std::vector<double> time_grid(double t_start, double t_end, int points);

} // namespace dampqda

#endif // DAMPQDA_DAMPING_BASIS_HPP
