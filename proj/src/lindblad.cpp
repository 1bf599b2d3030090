#include "dampqda/lindblad.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "dampqda/fock.hpp"
#include "dampqda/qda.hpp"

namespace dampqda
{

namespace
{

constexpr double hermiticity_tolerance = 1e-12;
const Complex i_unit(0.0, 1.0);

void check_rate(double rate, const char* where)
{
    if (!(rate >= 0.0) || !std::isfinite(rate))
    {
        throw DomainError(std::string(where) + ": damping rate must be finite and >= 0, got " +
                          std::to_string(rate));
    }
}

void check_operands(const ComplexMatrix& x, const ComplexMatrix& rho, const char* where)
{
    detail::require_square(x, where);
    detail::require_same_shape(x, rho, where);
}

} // namespace

MatrixModel::MatrixModel(ComplexMatrix hamiltonian, std::vector<Channel> channels)
    : m_hamiltonian(std::move(hamiltonian)), m_channels(std::move(channels))
{
    detail::require_square(m_hamiltonian, "MatrixModel");
    if (!is_hermitian(m_hamiltonian, hermiticity_tolerance))
    {
        throw DomainError("MatrixModel: Hamiltonian is not Hermitian");
    }
    for (const auto& ch : m_channels)
    {
        check_rate(ch.rate, "MatrixModel");
        detail::require_same_shape(m_hamiltonian, ch.op, "MatrixModel channel");
    }
}

BosonModel::BosonModel(BosonPolynomial hamiltonian, std::vector<Channel> channels, int subspace)
    : m_hamiltonian(std::move(hamiltonian)), m_channels(std::move(channels)), m_subspace(subspace)
{
    if (subspace < 1)
    {
        throw DomainError("BosonModel: subspace excitation number must be >= 1");
    }
    if (max_coefficient_distance(m_hamiltonian, adjoint(m_hamiltonian)) > hermiticity_tolerance)
    {
        throw DomainError("BosonModel: Hamiltonian is not Hermitian");
    }
    if (!m_hamiltonian.conserves_number())
    {
        throw DomainError("BosonModel: Hamiltonian does not conserve excitation number");
    }
    for (const auto& ch : m_channels)
    {
        check_rate(ch.rate, "BosonModel");
        if (!ch.op.conserves_number())
        {
            throw DomainError("BosonModel: channel operator " + to_string(ch.op) +
                              " does not conserve excitation number");
        }
    }
}

ComplexMatrix dissipator(const ComplexMatrix& x, const ComplexMatrix& rho)
{
    check_operands(x, rho, "dissipator");
    const ComplexMatrix xdx = x.adjoint() * x;
    return 2.0 * x * rho * x.adjoint() - xdx * rho - rho * xdx;
}

BosonPolynomial dissipator(const BosonPolynomial& x, const BosonPolynomial& rho)
{
    const BosonPolynomial xd = adjoint(x);
    const BosonPolynomial xdx = xd * x;
    return Complex(2.0) * (x * rho * xd) - xdx * rho - rho * xdx;
}

ComplexMatrix left_dissipator(const ComplexMatrix& x, const ComplexMatrix& rho)
{
    check_operands(x, rho, "left_dissipator");
    const ComplexMatrix xdx = x.adjoint() * x;
    return 2.0 * x.adjoint() * rho * x - xdx * rho - rho * xdx;
}

BosonPolynomial left_dissipator(const BosonPolynomial& x, const BosonPolynomial& rho)
{
    const BosonPolynomial xd = adjoint(x);
    const BosonPolynomial xdx = xd * x;
    return Complex(2.0) * (xd * rho * x) - xdx * rho - rho * xdx;
}

ComplexMatrix apply_liouvillian(const MatrixModel& model, const ComplexMatrix& rho)
{
    detail::require_same_shape(model.hamiltonian(), rho, "apply_liouvillian");
    const ComplexMatrix& h = model.hamiltonian();
    ComplexMatrix out = -i_unit * (h * rho - rho * h);
    for (const auto& ch : model.channels())
    {
        out += (ch.rate / 2.0) * dissipator(ch.op, rho);
    }
    return out;
}

BosonPolynomial apply_liouvillian_unreduced(const BosonModel& model, const BosonPolynomial& rho)
{
    BosonPolynomial out = -i_unit * commutator(model.hamiltonian(), rho);
    for (const auto& ch : model.channels())
    {
        out += Complex(ch.rate / 2.0) * dissipator(ch.op, rho);
    }
    return out;
}

BosonPolynomial apply_liouvillian(const BosonModel& model, const BosonPolynomial& rho)
{
    return reduce_fixed_n(apply_liouvillian_unreduced(model, rho), model.subspace());
}

ComplexMatrix apply_adjoint_liouvillian(const MatrixModel& model, const ComplexMatrix& rho)
{
    detail::require_same_shape(model.hamiltonian(), rho, "apply_adjoint_liouvillian");
    const ComplexMatrix& h = model.hamiltonian();
    ComplexMatrix out = i_unit * (h * rho - rho * h);
    for (const auto& ch : model.channels())
    {
        out += (ch.rate / 2.0) * left_dissipator(ch.op, rho);
    }
    return out;
}

ComplexMatrix vectorize(const MatrixModel& model)
{
    // vec(A rho B) = (B^T (x) A) vec(rho)
    const Eigen::Index d = model.dimension();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    const ComplexMatrix& h = model.hamiltonian();

    ComplexMatrix s = -i_unit * (ComplexMatrix(Eigen::kroneckerProduct(id, h)) -
                                 ComplexMatrix(Eigen::kroneckerProduct(h.transpose(), id)));
    for (const auto& ch : model.channels())
    {
        const ComplexMatrix& x = ch.op;
        const ComplexMatrix xdx = x.adjoint() * x;
        const ComplexMatrix jump = Eigen::kroneckerProduct(x.conjugate(), x);
        const ComplexMatrix left = Eigen::kroneckerProduct(id, xdx);
        const ComplexMatrix right = Eigen::kroneckerProduct(xdx.transpose(), id);
        s += (ch.rate / 2.0) * (2.0 * jump - left - right);
    }
    return s;
}

ComplexMatrix vectorize(const LindbladModel& model)
{
    if (const auto* m = std::get_if<MatrixModel>(&model))
    {
        return vectorize(*m);
    }
    throw UnsupportedPictureError(
        "vectorize: boson-picture models must be converted with to_matrix_model first");
}

MatrixModel build_qubit_matrix_model(const QubitParams& params)
{
    check_rate(params.gamma, "build_qubit_model");
    check_rate(params.gamma_star, "build_qubit_model");
    return MatrixModel(params.omega * sigma_e(),
                       {{sigma_minus(), params.gamma}, {sigma_e(), params.gamma_star}});
}

BosonModel build_qubit_boson_model(const QubitParams& params, int subspace)
{
    check_rate(params.gamma, "build_qubit_model");
    check_rate(params.gamma_star, "build_qubit_model");
    const BosonPolynomial na = js_map(SpinLabel::excited);
    const BosonPolynomial lowering = js_map(SpinLabel::minus);
    return BosonModel(Complex(params.omega) * na,
                      {{lowering, params.gamma}, {na, params.gamma_star}}, subspace);
}

LindbladModel build_qubit_model(const QubitParams& params, Picture picture)
{
    if (picture == Picture::matrix)
    {
        return build_qubit_matrix_model(params);
    }
    return build_qubit_boson_model(params, 1);
}

MatrixModel to_matrix_model(const BosonModel& model)
{
    const int n = model.subspace();
    std::vector<MatrixModel::Channel> channels;
    for (const auto& ch : model.channels())
    {
        channels.push_back({fixed_n_represent(ch.op, n), ch.rate});
    }
    return MatrixModel(fixed_n_represent(model.hamiltonian(), n), std::move(channels));
}

BosonModel to_boson_model(const MatrixModel& model)
{
    const int n = int(model.dimension()) - 1;
    if (n < 1)
    {
        throw DomainError("to_boson_model: dimension must be at least 2");
    }
    std::vector<BosonModel::Channel> channels;
    for (const auto& ch : model.channels())
    {
        channels.push_back({polynomial_from_fixed_n(ch.op, n), ch.rate});
    }
    return BosonModel(polynomial_from_fixed_n(model.hamiltonian(), n), std::move(channels), n);
}

} // namespace dampqda
