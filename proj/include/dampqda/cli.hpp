#ifndef DAMPQDA_CLI_HPP
#define DAMPQDA_CLI_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace dampqda::cli
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_input_error = 1,
    exit_degenerate = 2,
    exit_verification_failed = 3
};

enum class Task
{
    spectrum,
    qda,
    evolve,
    verify
};

enum class OutputFormat
{
    csv,
    json
};

struct RunConfig
{
    Task task = Task::spectrum;
    std::optional<std::string> model_path;
    // Inline qubit model, used when no model file is given.
    double omega = 1.0;
    double gamma = 0.5;
    double gamma_star = 0.3;
    // Spin-j block N = 2j for the inline qubit model; also the QDA subspace.
    int subspace_n = 1;
    double t_start = 0.0;
    double t_end = 10.0;
    int points = 101;
    // "excited", "ground", "plus", or a row-major [[re, im], ...] matrix.
    std::string initial = "excited";
    std::optional<double> tol;
    OutputFormat format = OutputFormat::csv;
    std::optional<std::string> output;
    bool verify_evolution = false;
    bool fallback_exponential = false;
    bool allow_degenerate = false;
};

/// Checks the RunConfig invariants; throws ParseError.
void validate(const RunConfig& config);

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_qda(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_evolve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on config.task, writing to config.output when set.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses command-line flags and runs. argv[0] is the program name.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 12 significant digits, lowercase scientific notation.
std::string format_number(double x);

} // namespace dampqda::cli

#endif // DAMPQDA_CLI_HPP
