#ifndef DAMPQDA_MODEL_IO_HPP
#define DAMPQDA_MODEL_IO_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "dampqda/lindblad.hpp"

namespace dampqda
{

/// A model as read from a model file. Qubit models keep their parameters so the
/// boson picture can be built from Jordan-Schwinger images instead of matrix units.
struct ModelDescription
{
    std::optional<QubitParams> qubit;
    std::optional<MatrixModel> custom;
};

// Model file (JSON):
//   {"model": {"type": "qubit", "omega": 1.0, "gamma": 0.5, "gamma_star": 0.3}}
//   {"model": {"type": "custom", "dimension": 2,
//              "hamiltonian": [[re, im], ...],            // row-major, d*d pairs
//              "channels": [{"operator": [[re, im], ...], "rate": 0.5}]}}
ModelDescription parse_model(const std::string& text);
ModelDescription load_model_file(const std::filesystem::path& path);

/// Serializes back to the model-file format.
std::string model_to_json(const ModelDescription& model);

/// Parses a row-major [[re, im], ...] list into a square matrix. The dimension
/// is inferred when dim is 0.
ComplexMatrix parse_flat_matrix(const std::string& text, Eigen::Index dim = 0);

} // namespace dampqda

#endif // DAMPQDA_MODEL_IO_HPP
