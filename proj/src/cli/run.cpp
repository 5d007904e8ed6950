#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "avgkit/cli.hpp"
#include "avgkit/errors.hpp"

namespace avgkit::cli {

namespace {

struct CommonOptions {
    std::vector<std::string> inputs;
    std::string output;
    std::string format = "json";
    std::uint64_t seed = 0;
    std::optional<double> psd_tol;
    std::optional<double> rank_tol;
    std::optional<double> cluster_tol;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_inputs) {
    if (with_inputs) cmd->add_option("-i,--input", o.inputs, "Input file, inline JSON, or - for stdin");
    cmd->add_option("-o,--output", o.output, "Write the report to this path instead of stdout");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_option("--psd-tol", o.psd_tol, "PSD slack (relative to ||S||_1)");
    cmd->add_option("--rank-tol", o.rank_tol, "Rank cutoff (relative)");
    cmd->add_option("--cluster-tol", o.cluster_tol, "Cosine cutoff for zero principal angles");
}

ToleranceConfig resolve_tolerances(const CommonOptions& o) {
    ToleranceConfig cfg = tolerance_from_environment();
    if (o.psd_tol) cfg.psd_tol = *o.psd_tol;
    if (o.rank_tol) cfg.rank_tol = *o.rank_tol;
    if (o.cluster_tol) cfg.cluster_tol = *o.cluster_tol;
    cfg.validate();
    return cfg;
}

std::pair<Subspace, Subspace> load_pair(const std::vector<std::string>& inputs, const ToleranceConfig& cfg) {
    if (inputs.size() == 1) {
        const json doc = load_json_source(inputs[0]);
        const json& pair = unwrap_instance(doc);
        if (!pair.is_object() || !pair.contains("U") || !pair.contains("V"))
            throw ParseError("expected an object with 'U' and 'V' subspaces");
        return {subspace_from_json(pair.at("U"), cfg), subspace_from_json(pair.at("V"), cfg)};
    }
    if (inputs.size() == 2)
        return {subspace_from_json(unwrap_instance(load_json_source(inputs[0])), cfg),
                subspace_from_json(unwrap_instance(load_json_source(inputs[1])), cfg)};
    throw ParseError("expected one pair file or two subspace inputs");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"avgkit: modulus of averagedness of linear operators", "avgkit"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    CommonOptions common;

    auto* kappa = app.add_subcommand("kappa", "Modulus of averagedness of a nonexpansive matrix");
    add_common(kappa, common, true);
    std::string route = "exact";
    std::size_t samples = 10000;
    kappa->add_option("--route", route, "exact | bisect | sample")->check(CLI::IsMember({"exact", "bisect", "sample"}));
    kappa->add_option("--samples", samples, "Sample count for --route sample");

    auto* angles_cmd = app.add_subcommand("angles", "Principal, Dixmier and Friedrichs angles of two subspaces");
    add_common(angles_cmd, common, true);

    auto* closed = app.add_subcommand("closed-form", "Closed-form modulus of ((1-b) I + b R_V) P_U");
    add_common(closed, common, true);
    double beta = 0.5;
    std::optional<double> cf;
    closed->add_option("--beta", beta, "Relaxation parameter in (0, 1)");
    closed->add_option("--cf", cf, "Friedrichs cosine; skips the subspace input");

    auto* compare = app.add_subcommand("compare", "Randomized closed-form vs numeric cross-check");
    add_common(compare, common, false);
    CompareOptions compare_opts;
    compare->add_option("--dim", compare_opts.dim, "Ambient dimension (>= 2)");
    compare->add_option("--trials", compare_opts.trials, "Number of random instances (>= 1)");
    compare->add_flag("--worked-example", compare_opts.worked_example,
                      "Use U = span{e1}, V = span{(1,1)}, beta = 1/2 as trial 0 (requires --dim 2)");

    auto* sweep = app.add_subcommand("sweep", "Tabulate the closed form against the composition bound");
    add_common(sweep, common, false);
    SweepGrid grid = SweepGrid::defaults();
    std::vector<double> beta_grid;
    std::vector<double> cf_grid;
    sweep->add_option("--beta", beta_grid, "Comma-separated beta grid")->delimiter(',');
    sweep->add_option("--cf", cf_grid, "Comma-separated increasing c_F grid")->delimiter(',');

    auto* verify = app.add_subcommand("verify-paper", "Regression of the 2x2 worked example");
    add_common(verify, common, false);
    VerifyOptions verify_opts;
    verify->add_option("--perturb", verify_opts.perturbation, "Perturb entry (0,0) of the built-in matrix");

    auto* random = app.add_subcommand("random", "Emit a verified random instance");
    add_common(random, common, false);
    std::string kind = "nonexpansive";
    RandomOptions random_opts;
    random->add_option("kind", kind, "nonexpansive | averaged | subspace-pair")
        ->check(CLI::IsMember({"nonexpansive", "averaged", "subspace-pair"}));
    random->add_option("--dim", random_opts.dim, "Ambient dimension");
    random->add_option("--kappa", random_opts.kappa, "Averagedness constant for kind=averaged");
    random->add_option("--scale", random_opts.scale, "Norm scale in (0, 1] for kind=nonexpansive");
    random->add_option("--dim-u", random_opts.dim_u, "dim U for kind=subspace-pair");
    random->add_option("--dim-v", random_opts.dim_v, "dim V for kind=subspace-pair");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageFailure;
    }

    const auto start = std::chrono::steady_clock::now();
    CommandResult result;
    try {
        const ToleranceConfig cfg = resolve_tolerances(common);
        if (kappa->parsed()) {
            if (common.inputs.size() != 1) throw ParseError("kappa: expected exactly one --input");
            const DenseMatrix m = matrix_from_json(unwrap_instance(load_json_source(common.inputs[0])));
            KappaOptions opts;
            opts.route = route == "bisect" ? MatrixRoute::Bisect
                         : route == "sample" ? MatrixRoute::Sample
                                             : MatrixRoute::Exact;
            opts.samples = samples;
            opts.seed = common.seed;
            result = cmd_kappa(m, opts, cfg);
        } else if (angles_cmd->parsed()) {
            const auto [u, v] = load_pair(common.inputs, cfg);
            result = cmd_angles(u, v, cfg);
        } else if (closed->parsed()) {
            if (cf) {
                result = cmd_closed_form(*cf, beta);
            } else {
                const auto [u, v] = load_pair(common.inputs, cfg);
                result = cmd_closed_form(u, v, beta, cfg);
            }
        } else if (compare->parsed()) {
            compare_opts.seed = common.seed;
            result = cmd_compare(compare_opts, cfg);
        } else if (sweep->parsed()) {
            if (!beta_grid.empty()) grid.betas = beta_grid;
            if (!cf_grid.empty()) grid.cfs = cf_grid;
            result = cmd_sweep(grid);
        } else if (verify->parsed()) {
            result = cmd_verify_reference(verify_opts, cfg);
        } else if (random->parsed()) {
            random_opts.kind = kind == "averaged"        ? RandomKind::Averaged
                               : kind == "subspace-pair" ? RandomKind::SubspacePair
                                                         : RandomKind::Nonexpansive;
            random_opts.seed = common.seed;
            result = cmd_random(random_opts, cfg);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageFailure;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageFailure;
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << "\n";
        return kPreconditionFailure;
    } catch (const DimensionError& e) {
        err << "precondition failed: " << e.what() << "\n";
        return kPreconditionFailure;
    } catch (const InfeasibleError& e) {
        err << "precondition failed: " << e.what() << "\n";
        return kPreconditionFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kClaimFailure;
    }
    result.report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::string rendered;
    try {
        if (common.format == "text")
            rendered = render_text(result.report);
        else if (common.format == "csv")
            rendered = render_csv(result.report);
        else
            rendered = json(result.report).dump(2) + "\n";
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageFailure;
    }

    if (common.output.empty()) {
        out << rendered;
    } else {
        std::ofstream file(common.output);
        if (!file) {
            err << "error: cannot write '" << common.output << "'\n";
            return kUsageFailure;
        }
        file << rendered;
    }
    if (!result.message.empty()) err << result.message << "\n";
    return result.exit_code;
}

}  // namespace avgkit::cli
