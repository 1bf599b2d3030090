#ifndef DAMPQDA_ERRORS_HPP
#define DAMPQDA_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dampqda
{

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Operand dimensions do not fit the operation.
class ShapeError : public Error
{
public:
    using Error::Error;
};

// Argument outside the mathematical domain (negative rate, bad spin, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

class UnsupportedPictureError : public Error
{
public:
    using Error::Error;
};

// Raised when a spectrum contains eigenvalues closer than the degeneracy
// tolerance. The offending cluster is kept for diagnostics.
class DegeneracyError : public Error
{
public:
    DegeneracyError(const std::string& what, std::vector<std::complex<double>> cluster)
        : Error(what), m_cluster(std::move(cluster))
    {
    }

    const std::vector<std::complex<double>>& cluster() const noexcept { return m_cluster; }

private:
    std::vector<std::complex<double>> m_cluster;
};

class PairingError : public Error
{
public:
    using Error::Error;
};

class NormalizationError : public Error
{
public:
    using Error::Error;
};

// Spectrum violates a structural property (stability, steady-mode count, size).
class StructuralError : public Error
{
public:
    using Error::Error;
};

class ParseError : public Error
{
public:
    using Error::Error;
};

} // namespace dampqda

#endif // DAMPQDA_ERRORS_HPP
