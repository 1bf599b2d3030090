#include "dampqda/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dampqda
{

using nlohmann::json;

namespace
{

double require_number(const json& obj, const char* key)
{
    if (!obj.contains(key) || !obj.at(key).is_number())
    {
        throw ParseError(std::string("model: missing or non-numeric field '") + key + "'");
    }
    return obj.at(key).get<double>();
}

ComplexMatrix flat_matrix(const json& arr, Eigen::Index dim, const char* what)
{
    if (!arr.is_array())
    {
        throw ParseError(std::string(what) + ": expected an array of [re, im] pairs");
    }
    if (dim == 0)
    {
        const double root = std::sqrt(double(arr.size()));
        dim = Eigen::Index(std::lround(root));
        if (dim == 0 || dim * dim != Eigen::Index(arr.size()))
        {
            throw ParseError(std::string(what) + ": entry count " + std::to_string(arr.size()) +
                             " is not a positive square");
        }
    }
    if (Eigen::Index(arr.size()) != dim * dim)
    {
        throw ParseError(std::string(what) + ": expected " + std::to_string(dim * dim) +
                         " entries, got " + std::to_string(arr.size()));
    }
    ComplexMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim * dim; ++i)
    {
        const json& pair = arr[std::size_t(i)];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
        {
            throw ParseError(std::string(what) + ": entry " + std::to_string(i) +
                             " is not a [re, im] pair");
        }
        m(i / dim, i % dim) = Complex(pair[0].get<double>(), pair[1].get<double>());
    }
    return m;
}

json matrix_to_json(const ComplexMatrix& m)
{
    json arr = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
    {
        for (Eigen::Index c = 0; c < m.cols(); ++c)
        {
            arr.push_back({m(r, c).real(), m(r, c).imag()});
        }
    }
    return arr;
}

} // namespace

ModelDescription parse_model(const std::string& text)
{
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        throw ParseError(std::string("model: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("model") || !doc.at("model").is_object())
    {
        throw ParseError("model: top-level object must contain a 'model' object");
    }
    const json& m = doc.at("model");
    if (!m.contains("type") || !m.at("type").is_string())
    {
        throw ParseError("model: missing string field 'type'");
    }
    const std::string type = m.at("type").get<std::string>();

    ModelDescription out;
    if (type == "qubit")
    {
        QubitParams p;
        p.omega = require_number(m, "omega");
        p.gamma = require_number(m, "gamma");
        p.gamma_star = require_number(m, "gamma_star");
        // Validates the rates.
        build_qubit_matrix_model(p);
        out.qubit = p;
        return out;
    }
    if (type == "custom")
    {
        const double dim_value = require_number(m, "dimension");
        if (dim_value < 1 || dim_value != std::floor(dim_value))
        {
            throw ParseError("model: 'dimension' must be a positive integer");
        }
        const auto dim = Eigen::Index(dim_value);
        if (!m.contains("hamiltonian"))
        {
            throw ParseError("model: missing field 'hamiltonian'");
        }
        ComplexMatrix h = flat_matrix(m.at("hamiltonian"), dim, "hamiltonian");
        std::vector<MatrixModel::Channel> channels;
        if (m.contains("channels"))
        {
            if (!m.at("channels").is_array())
            {
                throw ParseError("model: 'channels' must be an array");
            }
            for (const json& ch : m.at("channels"))
            {
                if (!ch.is_object() || !ch.contains("operator"))
                {
                    throw ParseError("model: channel requires 'operator' and 'rate'");
                }
                channels.push_back({flat_matrix(ch.at("operator"), dim, "channel operator"),
                                    require_number(ch, "rate")});
            }
        }
        out.custom = MatrixModel(std::move(h), std::move(channels));
        return out;
    }
    throw ParseError("model: unknown type '" + type + "' (expected 'qubit' or 'custom')");
}

ModelDescription load_model_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ParseError("model: cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

std::string model_to_json(const ModelDescription& model)
{
    json m;
    if (model.qubit)
    {
        m = {{"type", "qubit"},
             {"omega", model.qubit->omega},
             {"gamma", model.qubit->gamma},
             {"gamma_star", model.qubit->gamma_star}};
    }
    else if (model.custom)
    {
        json channels = json::array();
        for (const auto& ch : model.custom->channels())
        {
            channels.push_back({{"operator", matrix_to_json(ch.op)}, {"rate", ch.rate}});
        }
        m = {{"type", "custom"},
             {"dimension", model.custom->dimension()},
             {"hamiltonian", matrix_to_json(model.custom->hamiltonian())},
             {"channels", channels}};
    }
    else
    {
        throw ParseError("model_to_json: empty model description");
    }
    return json{{"model", m}}.dump(2);
}

ComplexMatrix parse_flat_matrix(const std::string& text, Eigen::Index dim)
{
    json arr;
    try
    {
        arr = json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        throw ParseError(std::string("matrix: invalid JSON: ") + e.what());
    }
    return flat_matrix(arr, dim, "matrix");
}

} // namespace dampqda
