#include "dampqda/qda.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "dampqda/fock.hpp"

namespace dampqda
{

namespace
{

const Complex i_unit(0.0, 1.0);

using BP = BosonPolynomial;

// Kuhn's augmenting-path matching restricted to edges with distance <= threshold.
bool try_augment(std::size_t u, const std::vector<std::vector<double>>& dist, double threshold,
                 std::vector<bool>& seen, std::vector<std::ptrdiff_t>& match_rhs)
{
    for (std::size_t v = 0; v < dist.size(); ++v)
    {
        if (dist[u][v] > threshold || seen[v])
        {
            continue;
        }
        seen[v] = true;
        if (match_rhs[v] < 0 ||
            try_augment(std::size_t(match_rhs[v]), dist, threshold, seen, match_rhs))
        {
            match_rhs[v] = std::ptrdiff_t(u);
            return true;
        }
    }
    return false;
}

std::optional<std::vector<std::ptrdiff_t>> perfect_matching(const std::vector<std::vector<double>>& dist,
                                                            double threshold)
{
    const std::size_t n = dist.size();
    std::vector<std::ptrdiff_t> match_rhs(n, -1);
    for (std::size_t u = 0; u < n; ++u)
    {
        std::vector<bool> seen(n, false);
        if (!try_augment(u, dist, threshold, seen, match_rhs))
        {
            return std::nullopt;
        }
    }
    return match_rhs;
}

} // namespace

SpinLabel parse_spin_label(std::string_view name)
{
    if (name == "sigma0") return SpinLabel::identity;
    if (name == "sigma1") return SpinLabel::x;
    if (name == "sigma2") return SpinLabel::y;
    if (name == "sigma3") return SpinLabel::z;
    if (name == "sigma+") return SpinLabel::plus;
    if (name == "sigma-") return SpinLabel::minus;
    if (name == "sigmae") return SpinLabel::excited;
    throw DomainError("unknown spin label '" + std::string(name) + "'");
}

BosonPolynomial js_map(SpinLabel label)
{
    const BP na = BP::ad() * BP::a();
    const BP nb = BP::bd() * BP::b();
    const BP raise = BP::ad() * BP::b();
    const BP lower = BP::bd() * BP::a();
    switch (label)
    {
    case SpinLabel::identity:
        return na + nb;
    case SpinLabel::x:
        return raise + lower;
    case SpinLabel::y:
        return -i_unit * (raise - lower);
    case SpinLabel::z:
        return na - nb;
    case SpinLabel::plus:
        return raise;
    case SpinLabel::minus:
        return lower;
    case SpinLabel::excited:
        return na;
    }
    throw DomainError("js_map: unknown spin label");
}

BosonPolynomial js_map(const ComplexMatrix& a)
{
    const auto c = pauli_expand(a);
    BP out;
    const SpinLabel labels[4] = {SpinLabel::identity, SpinLabel::x, SpinLabel::y, SpinLabel::z};
    for (int i = 0; i < 4; ++i)
    {
        out += c[std::size_t(i)] * js_map(labels[i]);
    }
    return out;
}

int spin_subspace(double j)
{
    const double twice = 2.0 * j;
    if (!(j > 0.0) || !std::isfinite(j) || std::abs(twice - std::round(twice)) > 1e-12)
    {
        throw DomainError("spin j must be a positive half-integer, got " + std::to_string(j));
    }
    return int(std::lround(twice));
}

BosonPolynomial js_map_spin_j(int index, double j)
{
    spin_subspace(j);
    switch (index)
    {
    case 0:
        return js_map(SpinLabel::identity);
    case 1:
        return js_map(SpinLabel::x);
    case 2:
        return js_map(SpinLabel::y);
    case 3:
        return js_map(SpinLabel::z);
    default:
        throw DomainError("js_map_spin_j: generator index must be 0..3, got " + std::to_string(index));
    }
}

TildeMap tilde_map(const TildeCoefficients& coeffs)
{
    TildeMap t;
    t.sigma1 = Complex(coeffs.G) * js_map(SpinLabel::x);
    t.sigma2 = Complex(coeffs.H) * js_map(SpinLabel::y);
    t.sigma3 = Complex(coeffs.F) * js_map(SpinLabel::z);
    t.plus = Complex(0.5) * (t.sigma1 + i_unit * t.sigma2);
    t.minus = Complex(0.5) * (t.sigma1 - i_unit * t.sigma2);
    return t;
}

BosonPolynomial reduce_fixed_n(const BosonPolynomial& p, int total)
{
    if (total < 1)
    {
        throw DomainError("reduce_fixed_n: excitation number must be >= 1");
    }
    if (!p.conserves_number())
    {
        throw DomainError("reduce_fixed_n: operand does not conserve excitation number: " +
                          to_string(p));
    }
    return polynomial_from_fixed_n(fixed_n_represent(p, total), total);
}

std::vector<NamedAnsatz> qubit_ansatzes()
{
    const BP na = BP::ad() * BP::a();
    const BP nb = BP::bd() * BP::b();
    return {
        {"ss", nb},
        {"+", Complex(0.5) * (BP::ad() * BP::b())},
        {"-", Complex(0.5) * (BP::bd() * BP::a())},
        {"->", na - nb},
    };
}

ComplexMatrix qda_generator(const BosonModel& model)
{
    const int n = model.subspace();
    const Eigen::Index dim = n + 1;
    const auto basis = operator_basis(n);
    const Eigen::Index size = Eigen::Index(basis.size());

    // Column c holds the coordinates of L(basis_c) in the operator basis.
    ComplexMatrix generator(size, size);
    for (Eigen::Index c = 0; c < size; ++c)
    {
        const ComplexMatrix block = fixed_n_represent(apply_liouvillian(model, basis[std::size_t(c)]), n);
        for (Eigen::Index k = 0; k < dim; ++k)
        {
            for (Eigen::Index l = 0; l < dim; ++l)
            {
                generator(k * dim + l, c) = block(k, l);
            }
        }
    }
    return generator;
}

std::vector<Complex> merge_clusters(std::vector<Complex> eigenvalues, double tol)
{
    const std::size_t n = eigenvalues.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t(0));
    auto root = [&](std::size_t i) {
        while (parent[i] != i)
        {
            i = parent[i] = parent[parent[i]];
        }
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = i + 1; j < n; ++j)
        {
            if (std::abs(eigenvalues[i] - eigenvalues[j]) < tol)
            {
                parent[root(j)] = root(i);
            }
        }
    }
    std::vector<Complex> sum(n, Complex(0.0));
    std::vector<int> count(n, 0);
    for (std::size_t i = 0; i < n; ++i)
    {
        sum[root(i)] += eigenvalues[i];
        ++count[root(i)];
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        eigenvalues[i] = sum[root(i)] / double(count[root(i)]);
    }
    return eigenvalues;
}

std::vector<Complex> qda_spectrum(const BosonModel& model, double cluster_rel)
{
    const ComplexMatrix generator = qda_generator(model);
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(generator, false);
    if (solver.info() != Eigen::Success)
    {
        throw StructuralError("qda_spectrum: eigensolver failed");
    }
    const ComplexVector lambdas = solver.eigenvalues();
    const double scale = std::max(1.0, generator.norm());
    std::vector<Complex> out = merge_clusters(
        std::vector<Complex>(lambdas.data(), lambdas.data() + lambdas.size()), cluster_rel * scale);
    const double tol = 1e-9 * scale;
    std::stable_sort(out.begin(), out.end(), [&](Complex x, Complex y) { return spectral_order(x, y, tol); });
    return out;
}

QdaResult run_qda(const BosonModel& model, const QdaOptions& opts)
{
    const int n = model.subspace();
    const auto basis = operator_basis(n);
    const Eigen::Index size = Eigen::Index(basis.size());
    const ComplexMatrix generator = qda_generator(model);

    Eigen::ComplexEigenSolver<ComplexMatrix> solver(generator, true);
    if (solver.info() != Eigen::Success)
    {
        throw StructuralError("run_qda: eigensolver failed");
    }
    const ComplexVector lambdas = solver.eigenvalues();
    const std::vector<Complex> spectrum(lambdas.data(), lambdas.data() + lambdas.size());
    const double scale = std::max(1.0, generator.norm());
    require_nondegenerate(spectrum, opts.degeneracy_rel * scale);

    const auto named = n == 1 ? qubit_ansatzes() : std::vector<NamedAnsatz>{};

    QdaResult result;
    result.subspace = n;
    for (Eigen::Index m = 0; m < size; ++m)
    {
        ComplexVector v = solver.eigenvectors().col(m);
        const double vmax = v.cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < v.size(); ++i)
        {
            if (std::abs(v(i)) >= vmax * (1.0 - 1e-8))
            {
                v /= v(i);
                break;
            }
        }
        // Drop solver noise before building the polynomial.
        for (Eigen::Index i = 0; i < v.size(); ++i)
        {
            if (std::abs(v(i)) < 1e-13)
            {
                v(i) = 0.0;
            }
        }

        QdaMode mode;
        mode.lambda = lambdas(m);
        for (Eigen::Index c = 0; c < size; ++c)
        {
            if (v(c) != Complex(0.0))
            {
                mode.eigenoperator += v(c) * basis[std::size_t(c)];
            }
        }
        for (const auto& a : named)
        {
            if (proportionality(mode.eigenoperator, a.op, opts.label_tol))
            {
                mode.label = a.label;
                mode.eigenoperator = a.op;
                break;
            }
        }

        const BP image = apply_liouvillian(model, mode.eigenoperator);
        mode.residual = max_coefficient_distance(image, mode.lambda * mode.eigenoperator) /
                        mode.eigenoperator.max_abs_coefficient();
        result.modes.push_back(std::move(mode));
    }
    std::stable_sort(result.modes.begin(), result.modes.end(),
                     [&](const QdaMode& x, const QdaMode& y) {
                         return spectral_order(x.lambda, y.lambda, 1e-9 * scale);
                     });

    Eigen::ComplexEigenSolver<ComplexMatrix> reference(vectorize(to_matrix_model(model)), false);
    const ComplexVector ref = reference.eigenvalues();
    std::vector<Complex> qda_lambdas;
    for (const auto& mode : result.modes)
    {
        qda_lambdas.push_back(mode.lambda);
    }
    result.crosscheck =
        match_spectra(qda_lambdas, std::vector<Complex>(ref.data(), ref.data() + ref.size())).max_distance;
    return result;
}

SpectrumMatching match_spectra(const std::vector<Complex>& lhs, const std::vector<Complex>& rhs)
{
    if (lhs.size() != rhs.size())
    {
        throw StructuralError("match_spectra: multiset sizes differ (" + std::to_string(lhs.size()) +
                              " vs " + std::to_string(rhs.size()) + ")");
    }
    const std::size_t n = lhs.size();
    SpectrumMatching out;
    if (n == 0)
    {
        return out;
    }

    std::vector<std::vector<double>> dist(n, std::vector<double>(n));
    std::vector<double> thresholds;
    thresholds.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
        {
            dist[i][j] = std::abs(lhs[i] - rhs[j]);
            thresholds.push_back(dist[i][j]);
        }
    }
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    // Smallest threshold admitting a perfect matching.
    std::size_t lo = 0;
    std::size_t hi = thresholds.size() - 1;
    while (lo < hi)
    {
        const std::size_t mid = (lo + hi) / 2;
        if (perfect_matching(dist, thresholds[mid]))
        {
            hi = mid;
        }
        else
        {
            lo = mid + 1;
        }
    }
    const auto match_rhs = *perfect_matching(dist, thresholds[lo]);
    out.max_distance = thresholds[lo];
    out.assignment.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v)
    {
        out.assignment[std::size_t(match_rhs[v])] = v;
    }
    return out;
}

double matrix_proportionality_residual(const ComplexMatrix& a, const ComplexMatrix& b)
{
    detail::require_same_shape(a, b, "matrix_proportionality_residual");
    const double bb = b.squaredNorm();
    const double amax = max_abs(a);
    if (bb == 0.0)
    {
        return amax == 0.0 ? 0.0 : 1.0;
    }
    if (amax == 0.0)
    {
        return 1.0;
    }
    const Complex mu = hs_inner(b, a) / bb;
    return max_abs(a - mu * b) / amax;
}

CrossValidationReport cross_validate(const QdaResult& qda, const DampingBasis& basis, double tol)
{
    if (basis.dimension != qda.subspace + 1)
    {
        throw StructuralError("cross_validate: basis dimension does not match the QDA subspace");
    }
    std::vector<Complex> lhs;
    std::vector<Complex> rhs;
    for (const auto& m : qda.modes)
    {
        lhs.push_back(m.lambda);
    }
    for (const auto& m : basis.modes)
    {
        rhs.push_back(m.lambda);
    }
    const SpectrumMatching matching = match_spectra(lhs, rhs);

    CrossValidationReport report;
    report.max_eigenvalue_distance = matching.max_distance;
    for (std::size_t i = 0; i < qda.modes.size(); ++i)
    {
        const ComplexMatrix block = fixed_n_represent(qda.modes[i].eigenoperator, qda.subspace);
        const double res = matrix_proportionality_residual(block, basis.modes[matching.assignment[i]].right);
        report.max_operator_residual = std::max(report.max_operator_residual, res);
        if (std::abs(lhs[i] - rhs[matching.assignment[i]]) <= tol && res <= tol)
        {
            ++report.matched;
        }
    }
    report.passed = report.matched == qda.modes.size() && report.max_eigenvalue_distance <= tol &&
                    report.max_operator_residual <= tol;
    return report;
}

} // namespace dampqda
