#ifndef DAMPQDA_LINDBLAD_HPP
#define DAMPQDA_LINDBLAD_HPP

#include <variant>
#include <vector>

#include "dampqda/boson.hpp"
#include "dampqda/operator_core.hpp"

namespace dampqda
{

// Generator convention (hbar = 1):
//   L rho = -i [H, rho] + sum_k (gamma_k / 2) D[X_k] rho,
//   D[X] rho = 2 X rho X^dagger - X^dagger X rho - rho X^dagger X,
// so the net jump term is gamma_k X rho X^dagger.

template <typename Operator>
struct DampingChannel
{
    Operator op;
    double rate = 0.0; // 1/time, >= 0
};

struct QubitParams
{
    double omega = 0.0;      // transition angular frequency
    double gamma = 0.0;      // spontaneous emission rate
    double gamma_star = 0.0; // pure dephasing rate

    double total_decoherence() const { return gamma + gamma_star; }
};

enum class Picture
{
    matrix,
    boson
};

/// Lindblad generator on d x d density matrices.
class MatrixModel
{
public:
    using Channel = DampingChannel<ComplexMatrix>;

    MatrixModel(ComplexMatrix hamiltonian, std::vector<Channel> channels);

    Eigen::Index dimension() const { return m_hamiltonian.rows(); }
    const ComplexMatrix& hamiltonian() const { return m_hamiltonian; }
    const std::vector<Channel>& channels() const { return m_channels; }

private:
    ComplexMatrix m_hamiltonian;
    std::vector<Channel> m_channels;
};

/// Lindblad generator on boson polynomials, restricted to the spin-j block N = 2j.
/// Every operator must conserve total excitation number so the block is invariant.
class BosonModel
{
public:
    using Channel = DampingChannel<BosonPolynomial>;

    BosonModel(BosonPolynomial hamiltonian, std::vector<Channel> channels, int subspace);

    int subspace() const { return m_subspace; }
    const BosonPolynomial& hamiltonian() const { return m_hamiltonian; }
    const std::vector<Channel>& channels() const { return m_channels; }

private:
    BosonPolynomial m_hamiltonian;
    std::vector<Channel> m_channels;
    int m_subspace;
};

using LindbladModel = std::variant<MatrixModel, BosonModel>;

ComplexMatrix dissipator(const ComplexMatrix& x, const ComplexMatrix& rho);
BosonPolynomial dissipator(const BosonPolynomial& x, const BosonPolynomial& rho);

/// Adjoint-action dissipator 2 X^dagger rho X - X^dagger X rho - rho X^dagger X.
ComplexMatrix left_dissipator(const ComplexMatrix& x, const ComplexMatrix& rho);
BosonPolynomial left_dissipator(const BosonPolynomial& x, const BosonPolynomial& rho);

ComplexMatrix apply_liouvillian(const MatrixModel& model, const ComplexMatrix& rho);

/// Normal-ordered action followed by reduction onto the model's fixed-N block.
BosonPolynomial apply_liouvillian(const BosonModel& model, const BosonPolynomial& rho);

/// Normal-ordered action without the fixed-N reduction.
BosonPolynomial apply_liouvillian_unreduced(const BosonModel& model, const BosonPolynomial& rho);

/// L^dagger rho = +i [H, rho] + sum_k (gamma_k / 2) left_dissipator(X_k, rho).
ComplexMatrix apply_adjoint_liouvillian(const MatrixModel& model, const ComplexMatrix& rho);

/// d^2 x d^2 superoperator S with S vec(rho) = vec(L rho), column-stacking vec.
ComplexMatrix vectorize(const MatrixModel& model);

/// Throws UnsupportedPictureError for boson-picture models.
ComplexMatrix vectorize(const LindbladModel& model);

/// Matrix picture: H = omega sigma_e, channels (sigma_-, Gamma), (sigma_e, Gamma*).
/// Boson picture: H = omega a^dagger a, channels (b^dagger a, Gamma), (a^dagger a, Gamma*), N = 1.
LindbladModel build_qubit_model(const QubitParams& params, Picture picture);
MatrixModel build_qubit_matrix_model(const QubitParams& params);
/// Jordan-Schwinger images of the qubit model on the spin-j block N = 2j.
BosonModel build_qubit_boson_model(const QubitParams& params, int subspace = 1);

/// Fixed-N matrices of the boson model's operators.
MatrixModel to_matrix_model(const BosonModel& model);

/// Lifts a d-dimensional matrix model to the boson picture on N = d - 1.
BosonModel to_boson_model(const MatrixModel& model);

} // namespace dampqda

#endif // DAMPQDA_LINDBLAD_HPP
