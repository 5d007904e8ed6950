#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "avgkit/matrix.hpp"
#include "avgkit/serialize.hpp"
#include "avgkit/subspace.hpp"
#include "avgkit/tolerance.hpp"

namespace avgkit::cli {

inline constexpr std::string_view kVersion = "0.1.0";

/// Process exit codes, stable across subcommands.
enum ExitCode : int {
    kSuccess = 0,
    kClaimFailure = 1,
    kPreconditionFailure = 2,
    kUsageFailure = 3,
};

struct RunReport {
    std::string command;
    json request;
    json results;
    std::string version{kVersion};
    ToleranceConfig tolerances;
    double wall_time_s = 0.0;

    bool operator==(const RunReport&) const = default;
};

void to_json(json& j, const RunReport& report);
void from_json(const json& j, RunReport& report);

struct CommandResult {
    int exit_code = kSuccess;
    RunReport report;
    std::string message;  // names the failing check or precondition, empty on success
};

enum class MatrixRoute { Exact, Bisect, Sample };

struct KappaOptions {
    MatrixRoute route = MatrixRoute::Exact;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
};

CommandResult cmd_kappa(const DenseMatrix& m, const KappaOptions& opts, const ToleranceConfig& cfg);

CommandResult cmd_angles(const Subspace& u, const Subspace& v, const ToleranceConfig& cfg);

/// Closed-form modulus for a concrete subspace pair, cross-checked against the
/// numeric route on the assembled operator.
CommandResult cmd_closed_form(const Subspace& u, const Subspace& v, double beta, const ToleranceConfig& cfg);

/// Closed-form modulus straight from (c_F, beta) values.
CommandResult cmd_closed_form(double c_f, double beta);

struct CompareOptions {
    std::size_t dim = 4;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    /// Replace trial 0 with the 2x2 worked example (U = span{e1}, V = span{(1,1)}, beta = 1/2).
    bool worked_example = false;
};

inline constexpr double kCompareThreshold = 1e-6;

CommandResult cmd_compare(const CompareOptions& opts, const ToleranceConfig& cfg);

struct SweepGrid {
    std::vector<double> betas;
    std::vector<double> cfs;

    /// beta = 0.05, 0.10, ..., 0.95 and c_F = 0, 0.05, ..., 1.
    static SweepGrid defaults();
};

CommandResult cmd_sweep(const SweepGrid& grid);

struct VerifyOptions {
    /// Added to entry (0, 0) of the built-in matrix; negative-control hook.
    double perturbation = 0.0;
};

inline constexpr double kVerifyTolerance = 1e-9;

/// Regression of the 2x2 worked example: spectra of B and C, the modulus,
/// the delta-inequality at delta = 0 and -1e-4, and the closed form at c_F = 1/sqrt 2.
CommandResult cmd_verify_reference(const VerifyOptions& opts, const ToleranceConfig& cfg);

enum class RandomKind { Nonexpansive, Averaged, SubspacePair };

struct RandomOptions {
    RandomKind kind = RandomKind::Nonexpansive;
    std::size_t dim = 3;
    std::uint64_t seed = 0;
    double kappa = 0.5;        // averaged
    double scale = 1.0;        // nonexpansive
    std::size_t dim_u = 0;     // subspace-pair; 0 draws a random dimension
    std::size_t dim_v = 0;
};

CommandResult cmd_random(const RandomOptions& opts, const ToleranceConfig& cfg);

/// Human-readable rendering, numbers with 12 significant digits.
std::string render_text(const RunReport& report);

/// CSV table for sweep and compare reports; throws ParseError for other commands.
std::string render_csv(const RunReport& report);

/// Full command-line entry point. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace avgkit::cli
