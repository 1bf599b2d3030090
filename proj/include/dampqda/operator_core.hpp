#ifndef DAMPQDA_OPERATOR_CORE_HPP
#define DAMPQDA_OPERATOR_CORE_HPP

#include <array>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "dampqda/errors.hpp"

namespace dampqda
{

using Complex = std::complex<double>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ComplexMatrix = Matrix<Complex>;
using ComplexVector = Vector<Complex>;

// Absolute comparison tolerance used when callers do not supply one.
inline constexpr double default_tolerance = 1e-10;

namespace detail
{

template <typename DerivedA, typename DerivedB>
void require_same_shape(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                        const char* op)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
    {
        throw ShapeError(std::string(op) + ": operand shapes differ (" + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ")");
    }
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* op)
{
    if (a.rows() != a.cols())
    {
        throw ShapeError(std::string(op) + ": operand is not square (" + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + ")");
    }
}

} // namespace detail

/// Hilbert-Schmidt inner product Tr{A^dagger B}.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar hs_inner(const Eigen::MatrixBase<DerivedA>& a,
                                   const Eigen::MatrixBase<DerivedB>& b)
{
    detail::require_square(a, "hs_inner");
    detail::require_same_shape(a, b, "hs_inner");
    return a.conjugate().cwiseProduct(b).sum();
}

/// Superoperator outer product applied to an operand: [A (x) B] C = Tr{B^dagger C} A.
template <typename DerivedA, typename DerivedB, typename DerivedC>
Matrix<typename DerivedA::Scalar> outer_apply(const Eigen::MatrixBase<DerivedA>& a,
                                              const Eigen::MatrixBase<DerivedB>& b,
                                              const Eigen::MatrixBase<DerivedC>& c)
{
    detail::require_square(a, "outer_apply");
    return hs_inner(b, c) * a;
}

// Two-level conventions: |e> = (1,0)^T, |g> = (0,1)^T.
template <typename Scalar = Complex>
Matrix<Scalar> ket_e_projector()
{
    Matrix<Scalar> m = Matrix<Scalar>::Zero(2, 2);
    m(0, 0) = Scalar(1);
    return m;
}

template <typename Scalar = Complex>
Matrix<Scalar> ket_g_projector()
{
    Matrix<Scalar> m = Matrix<Scalar>::Zero(2, 2);
    m(1, 1) = Scalar(1);
    return m;
}

/// Pauli matrix sigma_i, i = 0 (identity), 1, 2, 3.
template <typename Scalar = Complex>
Matrix<Scalar> pauli(int index)
{
    Matrix<Scalar> m = Matrix<Scalar>::Zero(2, 2);
    switch (index)
    {
    case 0:
        m(0, 0) = m(1, 1) = Scalar(1);
        break;
    case 1:
        m(0, 1) = m(1, 0) = Scalar(1);
        break;
    case 2:
        if constexpr (Eigen::NumTraits<Scalar>::IsComplex)
        {
            using R = typename Eigen::NumTraits<Scalar>::Real;
            const Scalar i_unit(R(0), R(1));
            m(0, 1) = -i_unit;
            m(1, 0) = i_unit;
        }
        else
        {
            throw DomainError("pauli: sigma_2 requires a complex scalar type");
        }
        break;
    case 3:
        m(0, 0) = Scalar(1);
        m(1, 1) = Scalar(-1);
        break;
    default:
        throw DomainError("pauli: index must be 0..3, got " + std::to_string(index));
    }
    return m;
}

/// sigma_+ = |e><g|
template <typename Scalar = Complex>
Matrix<Scalar> sigma_plus()
{
    Matrix<Scalar> m = Matrix<Scalar>::Zero(2, 2);
    m(0, 1) = Scalar(1);
    return m;
}

/// sigma_- = |g><e|
template <typename Scalar = Complex>
Matrix<Scalar> sigma_minus()
{
    Matrix<Scalar> m = Matrix<Scalar>::Zero(2, 2);
    m(1, 0) = Scalar(1);
    return m;
}

/// sigma_e = |e><e|
template <typename Scalar = Complex>
Matrix<Scalar> sigma_e()
{
    return ket_e_projector<Scalar>();
}

/// Coefficients c_i with A = sum_i c_i sigma_i.
template <typename Derived>
std::array<typename Derived::Scalar, 4> pauli_expand(const Eigen::MatrixBase<Derived>& a)
{
    using Scalar = typename Derived::Scalar;
    static_assert(Eigen::NumTraits<Scalar>::IsComplex, "pauli_expand needs a complex scalar");
    if (a.rows() != 2 || a.cols() != 2)
    {
        throw ShapeError("pauli_expand: expected a 2x2 matrix, got " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()));
    }
    std::array<Scalar, 4> c{};
    for (int i = 0; i < 4; ++i)
    {
        const Matrix<Scalar> s = pauli<Scalar>(i);
        c[i] = hs_inner(s, a) / hs_inner(s, s);
    }
    return c;
}

template <typename Scalar>
Matrix<Scalar> pauli_reconstruct(const std::array<Scalar, 4>& c)
{
    Matrix<Scalar> m = Matrix<Scalar>::Zero(2, 2);
    for (int i = 0; i < 4; ++i)
    {
        m += c[i] * pauli<Scalar>(i);
    }
    return m;
}

/// Column-stacking vectorization.
template <typename Derived>
Vector<typename Derived::Scalar> vec(const Eigen::MatrixBase<Derived>& m)
{
    Matrix<typename Derived::Scalar> tmp = m;
    return Eigen::Map<const Vector<typename Derived::Scalar>>(tmp.data(), tmp.size());
}

/// Inverse of vec for a d x d operand.
template <typename Derived>
Matrix<typename Derived::Scalar> unvec(const Eigen::MatrixBase<Derived>& v, Eigen::Index dim)
{
    if (v.size() != dim * dim)
    {
        throw ShapeError("unvec: vector of length " + std::to_string(v.size()) +
                         " cannot be reshaped to " + std::to_string(dim) + "x" +
                         std::to_string(dim));
    }
    Vector<typename Derived::Scalar> tmp = v;
    return Eigen::Map<const Matrix<typename Derived::Scalar>>(tmp.data(), dim, dim);
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = default_tolerance)
{
    if (m.rows() != m.cols())
    {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

template <typename Derived>
bool has_unit_trace(const Eigen::MatrixBase<Derived>& m, double tol = default_tolerance)
{
    return m.rows() == m.cols() && std::abs(m.trace() - typename Derived::Scalar(1)) <= tol;
}

/// Largest entrywise modulus; zero for empty matrices.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m)
{
    return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

} // namespace dampqda

#endif // DAMPQDA_OPERATOR_CORE_HPP
