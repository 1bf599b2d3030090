#include "dampqda/damping_basis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace dampqda
{

namespace
{

std::string format_cluster(const std::vector<Complex>& cluster)
{
    std::ostringstream os;
    os.precision(12);
    os << "{";
    for (std::size_t i = 0; i < cluster.size(); ++i)
    {
        os << (i ? ", " : "") << cluster[i].real() << (cluster[i].imag() < 0 ? "" : "+")
           << cluster[i].imag() << "i";
    }
    os << "}";
    return os.str();
}

// Scales v so that its first entry of (near-)maximal modulus becomes exactly 1.
// The near-tie window makes the choice stable against rounding.
void canonical_phase(ComplexVector& v)
{
    const double vmax = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i)
    {
        if (std::abs(v(i)) >= vmax * (1.0 - 1e-8))
        {
            v /= v(i);
            return;
        }
    }
}

} // namespace

bool spectral_order(Complex lhs, Complex rhs, double tol)
{
    if (std::abs(lhs.real() - rhs.real()) > tol)
    {
        return lhs.real() > rhs.real();
    }
    return lhs.imag() < rhs.imag();
}

void require_nondegenerate(const std::vector<Complex>& eigenvalues, double tol)
{
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    {
        std::vector<Complex> cluster{eigenvalues[i]};
        for (std::size_t j = i + 1; j < eigenvalues.size(); ++j)
        {
            if (std::abs(eigenvalues[i] - eigenvalues[j]) < tol)
            {
                cluster.push_back(eigenvalues[j]);
            }
        }
        if (cluster.size() > 1)
        {
            std::ostringstream msg;
            msg << "degenerate eigenvalue cluster " << format_cluster(cluster) << " (gap tolerance "
                << std::scientific << std::setprecision(3) << tol << ")";
            throw DegeneracyError(msg.str(), std::move(cluster));
        }
    }
}

DampingBasis compute_damping_basis(const MatrixModel& model, const BasisOptions& opts)
{
    const Eigen::Index d = model.dimension();
    const ComplexMatrix s = vectorize(model);
    const double s_norm = s.norm();
    const double scale = std::max(1.0, s_norm);

    Eigen::ComplexEigenSolver<ComplexMatrix> right_solver(s, true);
    if (right_solver.info() != Eigen::Success)
    {
        throw StructuralError("compute_damping_basis: eigensolver failed on the superoperator");
    }
    const ComplexVector lambdas = right_solver.eigenvalues();
    const std::vector<Complex> spectrum(lambdas.data(), lambdas.data() + lambdas.size());
    require_nondegenerate(spectrum, opts.degeneracy_rel * scale);

    // Left eigenvectors: S^dagger l = conj(lambda) l.
    Eigen::ComplexEigenSolver<ComplexMatrix> left_solver(s.adjoint(), true);
    if (left_solver.info() != Eigen::Success)
    {
        throw StructuralError("compute_damping_basis: eigensolver failed on the adjoint superoperator");
    }
    const ComplexVector mus = left_solver.eigenvalues().conjugate();

    const Eigen::Index n = lambdas.size();
    const double pairing_tol = opts.degeneracy_rel * scale / 2;
    std::vector<bool> used(std::size_t(n), false);

    DampingBasis basis;
    basis.dimension = d;
    basis.superoperator_norm = s_norm;
    for (Eigen::Index k = 0; k < n; ++k)
    {
        const Complex lambda = lambdas(k);

        Eigen::Index best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        double second_dist = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < n; ++j)
        {
            const double dist = std::abs(mus(j) - lambda);
            if (dist < best_dist)
            {
                second_dist = best_dist;
                best_dist = dist;
                best = j;
            }
            else if (dist < second_dist)
            {
                second_dist = dist;
            }
        }
        if (best < 0 || best_dist > pairing_tol || second_dist <= pairing_tol || used[std::size_t(best)])
        {
            throw PairingError("compute_damping_basis: cannot pair right eigenvalue " +
                               format_cluster({lambda}) + " with a unique left eigenvalue");
        }
        used[std::size_t(best)] = true;

        ComplexVector r = right_solver.eigenvectors().col(k);
        r.normalize();
        const double residual = (s * r - lambda * r).norm();
        if (residual > opts.residual_rel * scale)
        {
            throw StructuralError("compute_damping_basis: eigenvector residual " +
                                  std::to_string(residual) + " exceeds bound");
        }
        canonical_phase(r);

        ComplexVector l = left_solver.eigenvectors().col(best);
        const Complex overlap = l.dot(r); // l^dagger r
        if (std::abs(overlap) < 1e-14 * l.norm() * r.norm())
        {
            throw NormalizationError("compute_damping_basis: left/right pair is orthogonal");
        }
        l /= std::conj(overlap);

        basis.modes.push_back({lambda, unvec(r, d), unvec(l, d), residual});
    }

    std::stable_sort(basis.modes.begin(), basis.modes.end(),
                     [&](const DampingMode& x, const DampingMode& y) {
                         return spectral_order(x.lambda, y.lambda, opts.zero_cluster_rel * scale);
                     });

    int steady = 0;
    for (const auto& m : basis.modes)
    {
        if (m.lambda.real() > opts.stability_tol)
        {
            throw StructuralError("compute_damping_basis: unstable mode " + format_cluster({m.lambda}));
        }
        if (std::abs(m.lambda) <= opts.zero_cluster_rel * scale)
        {
            ++steady;
        }
    }
    if (steady != 1)
    {
        throw StructuralError("compute_damping_basis: expected exactly one steady mode, found " +
                              std::to_string(steady));
    }
    return basis;
}

ComplexMatrix steady_state(const DampingBasis& basis)
{
    if (basis.modes.empty())
    {
        throw StructuralError("steady_state: empty basis");
    }
    const auto it = std::min_element(basis.modes.begin(), basis.modes.end(),
                                      [](const DampingMode& x, const DampingMode& y) {
                                          return std::abs(x.lambda) < std::abs(y.lambda);
                                      });
    const Complex tr = it->right.trace();
    if (std::abs(tr) < 1e-12 * std::max(1.0, it->right.norm()))
    {
        throw NormalizationError("steady_state: kernel vector has zero trace");
    }
    return it->right / tr;
}

ExpansionCoefficients expand(const DampingBasis& basis, const ComplexMatrix& rho0)
{
    if (rho0.rows() != basis.dimension || rho0.cols() != basis.dimension)
    {
        throw ShapeError("expand: initial state dimension does not match the basis");
    }
    ExpansionCoefficients c;
    c.r.reserve(basis.modes.size());
    c.s.reserve(basis.modes.size());
    for (const auto& m : basis.modes)
    {
        c.r.push_back(hs_inner(m.left, rho0));
        c.s.push_back(hs_inner(m.right, rho0));
    }
    return c;
}

ComplexMatrix reconstruct(const DampingBasis& basis, const std::vector<Complex>& r)
{
    if (r.size() != basis.modes.size())
    {
        throw ShapeError("reconstruct: coefficient count does not match the basis");
    }
    ComplexMatrix out = ComplexMatrix::Zero(basis.dimension, basis.dimension);
    for (std::size_t k = 0; k < r.size(); ++k)
    {
        out += r[k] * basis.modes[k].right;
    }
    return out;
}

EvolutionResult evolve_spectral(const DampingBasis& basis, const ComplexMatrix& rho0,
                                const std::vector<double>& times)
{
    if (times.empty())
    {
        throw DomainError("evolve_spectral: no time points");
    }
    if (basis.modes.empty())
    {
        throw StructuralError("evolve_spectral: empty basis");
    }
    EvolutionResult out;
    out.coefficients = expand(basis, rho0);
    out.times = times;
    out.states.reserve(times.size());
    for (double t : times)
    {
        if (t < 0.0)
        {
            throw DomainError("evolve_spectral: negative time");
        }
        ComplexMatrix state = ComplexMatrix::Zero(basis.dimension, basis.dimension);
        for (std::size_t k = 0; k < basis.modes.size(); ++k)
        {
            state += out.coefficients.r[k] * std::exp(basis.modes[k].lambda * t) * basis.modes[k].right;
        }
        out.states.push_back(std::move(state));
    }
    return out;
}

EvolutionResult evolve_reference(const MatrixModel& model, const ComplexMatrix& rho0,
                                 const std::vector<double>& times)
{
    if (times.empty())
    {
        throw DomainError("evolve_reference: no time points");
    }
    detail::require_same_shape(model.hamiltonian(), rho0, "evolve_reference");
    const Eigen::Index d = model.dimension();
    const ComplexMatrix s = vectorize(model);
    const ComplexVector v0 = vec(rho0);

    EvolutionResult out;
    out.times = times;
    out.states.reserve(times.size());
    for (double t : times)
    {
        if (t < 0.0)
        {
            throw DomainError("evolve_reference: negative time");
        }
        if (t == 0.0)
        {
            out.states.push_back(rho0);
            continue;
        }
        const ComplexMatrix propagator = (s * t).exp();
        out.states.push_back(unvec(propagator * v0, d));
    }
    return out;
}

double biorthonormality_deviation(const DampingBasis& basis)
{
    double dev = 0.0;
    for (std::size_t k = 0; k < basis.modes.size(); ++k)
    {
        for (std::size_t kp = 0; kp < basis.modes.size(); ++kp)
        {
            const Complex overlap = hs_inner(basis.modes[k].left, basis.modes[kp].right);
            dev = std::max(dev, std::abs(overlap - (k == kp ? 1.0 : 0.0)));
        }
    }
    return dev;
}

double check_closure(const DampingBasis& basis)
{
    const Eigen::Index n = basis.dimension * basis.dimension;
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (const auto& m : basis.modes)
    {
        sum += vec(m.right) * vec(m.left).adjoint();
    }
    return max_abs(sum - ComplexMatrix::Identity(n, n));
}

std::vector<double> time_grid(double t_start, double t_end, int points)
{
    if (points < 1 || !(t_start >= 0.0) || !(t_end >= t_start))
    {
        throw DomainError("time_grid: require points >= 1 and 0 <= t_start <= t_end");
    }
    std::vector<double> ts(static_cast<std::size_t>(points));
    if (points == 1)
    {
        ts[0] = t_start;
        return ts;
    }
    const double step = (t_end - t_start) / (points - 1);
    for (int i = 0; i < points; ++i)
    {
        ts[std::size_t(i)] = t_start + step * i;
    }
    ts.back() = t_end;
    return ts;
}

} // namespace dampqda
