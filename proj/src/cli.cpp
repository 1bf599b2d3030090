#include "dampqda/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "dampqda/damping_basis.hpp"
#include "dampqda/fock.hpp"
#include "dampqda/model_io.hpp"
#include "dampqda/qda.hpp"

namespace dampqda::cli
{

namespace
{

using Cell = std::variant<std::string, double>;

struct Table
{
    std::string task;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
    {
        return s;
    }
    std::string out = "\"";
    for (char c : s)
    {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

void write_table(const Table& table, OutputFormat format, std::ostream& out)
{
    if (format == OutputFormat::csv)
    {
        for (std::size_t i = 0; i < table.columns.size(); ++i)
        {
            out << (i ? "," : "") << table.columns[i];
        }
        out << "\n";
        for (const auto& row : table.rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
            {
                out << (i ? "," : "");
                if (const auto* s = std::get_if<std::string>(&row[i]))
                {
                    out << csv_escape(*s);
                }
                else
                {
                    out << format_number(std::get<double>(row[i]));
                }
            }
            out << "\n";
        }
        return;
    }

    nlohmann::ordered_json doc;
    doc["task"] = table.task;
    doc["columns"] = table.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows)
    {
        nlohmann::ordered_json jr = nlohmann::ordered_json::array();
        for (const auto& cell : row)
        {
            if (const auto* s = std::get_if<std::string>(&cell))
            {
                jr.push_back(*s);
            }
            else
            {
                // Round through the fixed text format so both outputs carry the same digits.
                jr.push_back(std::stod(format_number(std::get<double>(cell))));
            }
        }
        doc["rows"].push_back(std::move(jr));
    }
    out << doc.dump(2) << "\n";
}

struct ResolvedModel
{
    MatrixModel matrix;
    BosonModel boson;
    bool is_qubit = false;
};

ResolvedModel resolve_model(const RunConfig& config)
{
    ModelDescription desc;
    if (config.model_path)
    {
        desc = load_model_file(*config.model_path);
    }
    else
    {
        QubitParams p{config.omega, config.gamma, config.gamma_star};
        build_qubit_matrix_model(p);
        desc.qubit = p;
    }

    if (desc.qubit)
    {
        BosonModel boson = build_qubit_boson_model(*desc.qubit, config.subspace_n);
        MatrixModel matrix = config.subspace_n == 1 ? build_qubit_matrix_model(*desc.qubit)
                                                    : to_matrix_model(boson);
        return {std::move(matrix), std::move(boson), true};
    }
    const MatrixModel& custom = *desc.custom;
    if (custom.dimension() < 2)
    {
        throw ParseError("model: custom models need dimension >= 2");
    }
    return {custom, to_boson_model(custom), false};
}

ComplexMatrix initial_state(const std::string& text, Eigen::Index dim)
{
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    if (text == "excited")
    {
        rho(0, 0) = 1.0;
    }
    else if (text == "ground")
    {
        rho(dim - 1, dim - 1) = 1.0;
    }
    else if (text == "plus")
    {
        rho(0, 0) = rho(0, dim - 1) = rho(dim - 1, 0) = rho(dim - 1, dim - 1) = 0.5;
    }
    else
    {
        rho = parse_flat_matrix(text, dim);
    }
    return rho;
}

// Names the damped-qubit modes by their right eigenoperator.
std::string mode_label(const DampingMode& mode, bool steady, Eigen::Index dim, std::size_t index)
{
    if (steady)
    {
        return "ss";
    }
    if (dim == 2)
    {
        const std::pair<const char*, ComplexMatrix> named[] = {
            {"+", sigma_plus()}, {"-", sigma_minus()}, {"->", pauli(3)}};
        for (const auto& [label, op] : named)
        {
            if (matrix_proportionality_residual(mode.right, op) <= 1e-8)
            {
                return label;
            }
        }
    }
    return "m" + std::to_string(index);
}

std::size_t steady_index(const DampingBasis& basis)
{
    std::size_t best = 0;
    for (std::size_t k = 1; k < basis.modes.size(); ++k)
    {
        if (std::abs(basis.modes[k].lambda) < std::abs(basis.modes[best].lambda))
        {
            best = k;
        }
    }
    return best;
}

double tolerance(const RunConfig& config, double fallback)
{
    return config.tol.value_or(fallback);
}

double max_state_deviation(const EvolutionResult& a, const EvolutionResult& b)
{
    double dev = 0.0;
    for (std::size_t i = 0; i < a.states.size(); ++i)
    {
        dev = std::max(dev, max_abs(a.states[i] - b.states[i]));
    }
    return dev;
}

// Random number-conserving operand on the fixed-N block.
BosonPolynomial random_operand(std::mt19937_64& rng, int total)
{
    std::normal_distribution<double> g;
    ComplexMatrix m(total + 1, total + 1);
    for (Eigen::Index i = 0; i < m.size(); ++i)
    {
        m(i) = Complex(g(rng), g(rng));
    }
    return polynomial_from_fixed_n(m, total);
}

// Each step reports (group, status, deviation, threshold).
struct GroupResult
{
    std::string group;
    std::string status; // pass, fail, skipped
    double deviation = 0.0;
    double threshold = 0.0;
};

GroupResult judge(std::string group, double deviation, double threshold)
{
    return {std::move(group), deviation <= threshold ? "pass" : "fail", deviation, threshold};
}

} // namespace

std::string format_number(double x)
{
    if (x == 0.0)
    {
        x = 0.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return buf;
}

void validate(const RunConfig& config)
{
    if (!(config.t_start >= 0.0) || !(config.t_end >= config.t_start))
    {
        throw ParseError("config: require 0 <= t_start <= t_end");
    }
    if (config.points < 1)
    {
        throw ParseError("config: points must be >= 1");
    }
    if (config.tol && !(*config.tol > 0.0))
    {
        throw ParseError("config: tolerance must be > 0");
    }
    if (config.subspace_n < 1)
    {
        throw ParseError("config: subspace-n must be >= 1");
    }
}

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    const ResolvedModel model = resolve_model(config);
    DampingBasis basis;
    try
    {
        basis = compute_damping_basis(model.matrix);
    }
    catch (const DegeneracyError& e)
    {
        err << "spectrum: " << e.what() << "\n";
        return exit_degenerate;
    }

    Table table{"spectrum", {"label", "re_lambda", "im_lambda", "residual"}, {}};
    const std::size_t ss = steady_index(basis);
    for (std::size_t k = 0; k < basis.modes.size(); ++k)
    {
        const auto& m = basis.modes[k];
        table.rows.push_back({mode_label(m, k == ss, basis.dimension, k), m.lambda.real(),
                              m.lambda.imag(), m.residual});
    }
    write_table(table, config.format, out);
    return exit_ok;
}

namespace
{

// Degenerate generators have no eigen-polynomial basis; report the eigenvalue multiset only.
int qda_spectrum_only(const ResolvedModel& model, const RunConfig& config, std::ostream& out,
                      std::ostream& err)
{
    const std::vector<Complex> lambdas = qda_spectrum(model.boson);
    const ComplexMatrix s = vectorize(model.matrix);
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(s, false);
    const ComplexVector ref = solver.eigenvalues();
    const std::vector<Complex> reference = merge_clusters(
        std::vector<Complex>(ref.data(), ref.data() + ref.size()), 1e-6 * std::max(1.0, s.norm()));
    const double crosscheck = match_spectra(lambdas, reference).max_distance;
    const double tol = tolerance(config, 1e-8);

    Table table{"qda",
                {"label", "re_lambda", "im_lambda", "eigenoperator", "residual", "crosscheck",
                 "operator_residual"},
                {}};
    for (std::size_t k = 0; k < lambdas.size(); ++k)
    {
        table.rows.push_back({"m" + std::to_string(k), lambdas[k].real(), lambdas[k].imag(), std::string(),
                              std::string(), crosscheck, std::string()});
    }
    write_table(table, config.format, out);
    if (crosscheck > tol)
    {
        err << "qda: spectrum cross-check failed (distance " << format_number(crosscheck)
            << ", tolerance " << format_number(tol) << ")\n";
        return exit_verification_failed;
    }
    return exit_ok;
}

} // namespace

int cmd_qda(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    const ResolvedModel model = resolve_model(config);
    QdaResult qda;
    DampingBasis basis;
    try
    {
        qda = run_qda(model.boson);
        basis = compute_damping_basis(model.matrix);
    }
    catch (const DegeneracyError& e)
    {
        if (config.allow_degenerate)
        {
            err << "qda: " << e.what() << "; reporting eigenvalues only\n";
            return qda_spectrum_only(model, config, out, err);
        }
        err << "qda: " << e.what() << " (use --allow-degenerate for eigenvalues only)\n";
        return exit_degenerate;
    }
    const double tol = tolerance(config, 1e-8);
    const double residual_tol = tolerance(config, 1e-10);
    const CrossValidationReport report = cross_validate(qda, basis, tol);
    const double crosscheck = std::max(qda.crosscheck, report.max_eigenvalue_distance);

    Table table{"qda",
                {"label", "re_lambda", "im_lambda", "eigenoperator", "residual", "crosscheck",
                 "operator_residual"},
                {}};
    double worst_residual = 0.0;
    for (std::size_t k = 0; k < qda.modes.size(); ++k)
    {
        const auto& m = qda.modes[k];
        worst_residual = std::max(worst_residual, m.residual);
        table.rows.push_back({m.label.value_or("m" + std::to_string(k)), m.lambda.real(),
                              m.lambda.imag(), to_string(m.eigenoperator), m.residual, crosscheck,
                              report.max_operator_residual});
    }
    write_table(table, config.format, out);

    if (!report.passed || crosscheck > tol || worst_residual > residual_tol)
    {
        err << "qda: cross-validation failed (eigenvalue distance " << format_number(crosscheck)
            << ", operator residual " << format_number(report.max_operator_residual)
            << ", mode residual " << format_number(worst_residual) << ", tolerance "
            << format_number(tol) << ")\n";
        return exit_verification_failed;
    }
    return exit_ok;
}

int cmd_evolve(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    const ResolvedModel model = resolve_model(config);
    const Eigen::Index d = model.matrix.dimension();
    const ComplexMatrix rho0 = initial_state(config.initial, d);
    const auto times = time_grid(config.t_start, config.t_end, config.points);

    EvolutionResult result;
    bool spectral = true;
    try
    {
        result = evolve_spectral(compute_damping_basis(model.matrix), rho0, times);
    }
    catch (const DegeneracyError& e)
    {
        if (!config.fallback_exponential)
        {
            err << "evolve: " << e.what() << " (use --fallback-exponential)\n";
            return exit_degenerate;
        }
        result = evolve_reference(model.matrix, rho0, times);
        spectral = false;
    }

    Table table{"evolve", {"t"}, {}};
    for (Eigen::Index r = 0; r < d; ++r)
    {
        for (Eigen::Index c = 0; c < d; ++c)
        {
            const std::string tag = "rho_" + std::to_string(r) + "_" + std::to_string(c);
            table.columns.push_back(tag + "_re");
            table.columns.push_back(tag + "_im");
        }
    }
    table.columns.push_back("trace");
    for (Eigen::Index k = 0; k < d; ++k)
    {
        table.columns.push_back("pop_" + std::to_string(k));
    }
    for (std::size_t i = 0; i < times.size(); ++i)
    {
        const ComplexMatrix& s = result.states[i];
        std::vector<Cell> row{times[i]};
        for (Eigen::Index r = 0; r < d; ++r)
        {
            for (Eigen::Index c = 0; c < d; ++c)
            {
                row.emplace_back(s(r, c).real());
                row.emplace_back(s(r, c).imag());
            }
        }
        row.emplace_back(s.trace().real());
        for (Eigen::Index k = 0; k < d; ++k)
        {
            row.emplace_back(s(k, k).real());
        }
        table.rows.push_back(std::move(row));
    }
    write_table(table, config.format, out);

    if (config.verify_evolution && spectral)
    {
        const double dev = max_state_deviation(result, evolve_reference(model.matrix, rho0, times));
        const double tol = tolerance(config, 1e-8);
        if (dev > tol)
        {
            err << "evolve: spectral and reference evolution differ by " << format_number(dev)
                << " (tolerance " << format_number(tol) << ")\n";
            return exit_verification_failed;
        }
    }
    return exit_ok;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    const ResolvedModel model = resolve_model(config);
    const Eigen::Index d = model.matrix.dimension();
    const int n = model.boson.subspace();
    std::mt19937_64 rng(20240611);
    std::vector<GroupResult> groups;

    // Model-independent Jordan-Schwinger identities.
    {
        double dev = 0.0;
        const SpinLabel labels[4] = {SpinLabel::identity, SpinLabel::x, SpinLabel::y, SpinLabel::z};
        for (int i = 0; i < 4; ++i)
        {
            dev = std::max(dev, max_abs(fixed_n_represent(js_map(labels[i]), 1) - pauli(i)));
        }
        const BosonPolynomial closure = commutator(js_map(SpinLabel::x), js_map(SpinLabel::y)) -
                                        Complex(0.0, 2.0) * js_map(SpinLabel::z);
        dev = std::max(dev, closure.max_abs_coefficient());
        groups.push_back(judge("js_golden", dev, tolerance(config, 1e-12)));
    }

    {
        double dev = 0.0;
        std::normal_distribution<double> g;
        for (int trial = 0; trial < 20; ++trial)
        {
            ComplexMatrix rho(d, d);
            for (Eigen::Index i = 0; i < rho.size(); ++i)
            {
                rho(i) = Complex(g(rng), g(rng));
            }
            dev = std::max(dev, std::abs(apply_liouvillian(model.matrix, rho).trace()));
            dev = std::max(dev, max_abs(apply_liouvillian(model.matrix, rho.adjoint()) -
                                        apply_liouvillian(model.matrix, rho).adjoint()));
        }
        groups.push_back(judge("trace_and_hermiticity_preservation", dev, tolerance(config, 1e-10)));
    }

    {
        double dev = 0.0;
        for (int trial = 0; trial < 20; ++trial)
        {
            const BosonPolynomial rho = random_operand(rng, n);
            const ComplexMatrix lhs = fixed_n_represent(apply_liouvillian(model.boson, rho), n);
            const ComplexMatrix rhs = apply_liouvillian(model.matrix, fixed_n_represent(rho, n));
            dev = std::max(dev, max_abs(lhs - rhs));
        }
        groups.push_back(judge("picture_equivalence", dev, tolerance(config, 1e-10)));
    }

    std::optional<DampingBasis> basis;
    std::string degeneracy;
    try
    {
        basis = compute_damping_basis(model.matrix);
    }
    catch (const DegeneracyError& e)
    {
        degeneracy = e.what();
    }

    if (basis)
    {
        groups.push_back(judge("biorthonormality", biorthonormality_deviation(*basis),
                               tolerance(config, 1e-10)));
        groups.push_back(judge("closure", check_closure(*basis), tolerance(config, 1e-10)));

        const QdaResult qda = run_qda(model.boson);
        const CrossValidationReport report = cross_validate(qda, *basis, tolerance(config, 1e-8));
        groups.push_back(judge("qda_crosscheck",
                               std::max({qda.crosscheck, report.max_eigenvalue_distance,
                                         report.max_operator_residual}),
                               tolerance(config, 1e-8)));

        const ComplexMatrix rho0 = initial_state(config.initial, d);
        const auto times = time_grid(config.t_start, config.t_end, config.points);
        groups.push_back(judge("evolution_agreement",
                               max_state_deviation(evolve_spectral(*basis, rho0, times),
                                                   evolve_reference(model.matrix, rho0, times)),
                               tolerance(config, 1e-8)));
    }
    else
    {
        for (const char* g : {"biorthonormality", "closure", "qda_crosscheck", "evolution_agreement"})
        {
            groups.push_back({g, "skipped", 0.0, 0.0});
        }
        err << "verify: " << degeneracy << "\n";
    }

    Table table{"verify", {"group", "status", "deviation", "threshold"}, {}};
    bool failed = false;
    bool skipped = false;
    for (const auto& g : groups)
    {
        if (g.status == "skipped")
        {
            table.rows.push_back({g.group, g.status, std::string(), std::string()});
        }
        else
        {
            table.rows.push_back({g.group, g.status, g.deviation, g.threshold});
        }
        failed = failed || g.status == "fail";
        skipped = skipped || g.status == "skipped";
    }
    write_table(table, config.format, out);

    if (failed || (skipped && !config.allow_degenerate))
    {
        return exit_verification_failed;
    }
    return exit_ok;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    std::ofstream file;
    std::ostream* sink = &out;
    try
    {
        validate(config);
        if (config.output)
        {
            file.open(*config.output);
            if (!file)
            {
                err << "error: cannot open output '" << *config.output << "'\n";
                return exit_input_error;
            }
            sink = &file;
        }
        switch (config.task)
        {
        case Task::spectrum:
            return cmd_spectrum(config, *sink, err);
        case Task::qda:
            return cmd_qda(config, *sink, err);
        case Task::evolve:
            return cmd_evolve(config, *sink, err);
        case Task::verify:
            return cmd_verify(config, *sink, err);
        }
    }
    catch (const ParseError& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    catch (const DomainError& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    catch (const ShapeError& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    catch (const DegeneracyError& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_degenerate;
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_verification_failed;
    }
    return exit_input_error;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig config;
    CLI::App app{"Damping-basis and quantum decomposition solver for Lindblad master equations",
                 args.empty() ? "dampqda" : args.front()};

    const std::map<std::string, Task> tasks{{"spectrum", Task::spectrum},
                                            {"qda", Task::qda},
                                            {"evolve", Task::evolve},
                                            {"verify", Task::verify}};
    const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::csv},
                                                      {"json", OutputFormat::json}};
    std::string model_path;
    double tol = 0.0;
    std::string output;

    app.add_option("--task", config.task, "spectrum | qda | evolve | verify")
        ->required()
        ->transform(CLI::CheckedTransformer(tasks, CLI::ignore_case));
    app.add_option("--model", model_path, "Model file (JSON)");
    app.add_option("--omega", config.omega, "Qubit transition frequency");
    app.add_option("--gamma", config.gamma, "Spontaneous emission rate");
    app.add_option("--gamma-star", config.gamma_star, "Pure dephasing rate");
    app.add_option("--subspace-n", config.subspace_n, "Excitation number N = 2j of the spin block");
    app.add_option("--t-start", config.t_start, "First time point");
    app.add_option("--t-end", config.t_end, "Last time point");
    app.add_option("--points", config.points, "Number of time points");
    app.add_option("--initial", config.initial,
                   "excited | ground | plus | row-major [[re, im], ...] matrix");
    app.add_option("--tol", tol, "Tolerance override");
    app.add_option("--format", config.format, "csv | json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    app.add_option("--output", output, "Output file (default: standard output)");
    app.add_flag("--verify-evolution", config.verify_evolution,
                 "Check spectral evolution against the matrix exponential");
    app.add_flag("--fallback-exponential", config.fallback_exponential,
                 "Use the matrix exponential when the spectrum is degenerate");
    app.add_flag("--allow-degenerate", config.allow_degenerate,
                 "Accept degenerate spectra: verify skips basis groups, qda reports eigenvalues only");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty())
    {
        reversed.pop_back();
    }
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return exit_ok;
    }
    catch (const CLI::ParseError& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }

    if (app.count("--model"))
    {
        config.model_path = model_path;
    }
    if (app.count("--tol"))
    {
        config.tol = tol;
    }
    if (app.count("--output"))
    {
        config.output = output;
    }
    return run(config, out, err);
}

} // namespace dampqda::cli
