#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "avgkit/averagedness.hpp"
#include "avgkit/cli.hpp"
#include "avgkit/closed_form.hpp"
#include "avgkit/errors.hpp"
#include "avgkit/random.hpp"

namespace avgkit::cli {

namespace {

RunReport make_report(std::string command, json request, const ToleranceConfig& cfg) {
    RunReport report;
    report.command = std::move(command);
    report.request = std::move(request);
    report.tolerances = cfg;
    return report;
}

std::string_view route_name(MatrixRoute route) {
    switch (route) {
        case MatrixRoute::Exact:
            return "exact";
        case MatrixRoute::Bisect:
            return "bisect";
        case MatrixRoute::Sample:
            return "sample";
    }
    return "exact";
}

std::string_view kind_name(RandomKind kind) {
    switch (kind) {
        case RandomKind::Nonexpansive:
            return "nonexpansive";
        case RandomKind::Averaged:
            return "averaged";
        case RandomKind::SubspacePair:
            return "subspace-pair";
    }
    return "nonexpansive";
}

std::string_view regime_name(const CompositionSpec& spec) {
    if (spec.u_is_full) return spec.v_is_full ? "identity" : "relaxed_reflector";
    if (spec.u_subset_v) return "projection";
    return "friedrichs";
}

json check_entry(std::string name, double value, double expected, double tol) {
    const double error = std::abs(value - expected);
    return {{"name", std::move(name)}, {"value", value}, {"expected", expected}, {"error", error},
            {"passed", error <= tol}};
}

}  // namespace

void to_json(json& j, const RunReport& report) {
    j = {{"command", report.command},   {"request", report.request},       {"results", report.results},
         {"version", report.version},   {"tolerances", report.tolerances}, {"wall_time_s", report.wall_time_s}};
}

void from_json(const json& j, RunReport& report) {
    j.at("command").get_to(report.command);
    report.request = j.at("request");
    report.results = j.at("results");
    j.at("version").get_to(report.version);
    j.at("tolerances").get_to(report.tolerances);
    j.at("wall_time_s").get_to(report.wall_time_s);
}

CommandResult cmd_kappa(const DenseMatrix& m, const KappaOptions& opts, const ToleranceConfig& cfg) {
    json request = {{"route", route_name(opts.route)}, {"matrix", matrix_to_json(m)}};
    if (opts.route == MatrixRoute::Sample) {
        request["samples"] = opts.samples;
        request["seed"] = opts.seed;
    }
    CommandResult result{kSuccess, make_report("kappa", std::move(request), cfg), {}};

    ModulusReport modulus;
    switch (opts.route) {
        case MatrixRoute::Exact:
            modulus = kappa_exact(m, cfg);
            break;
        case MatrixRoute::Bisect:
            modulus = kappa_bisection(m, cfg);
            break;
        case MatrixRoute::Sample:
            modulus.route = ModulusRoute::QuotientSample;
            modulus.kappa = kappa_quotient_sample(m, opts.samples, opts.seed, cfg);
            break;
    }
    result.report.results = {{"modulus", modulus}, {"nonexpansive_margin", is_nonexpansive(m, cfg).min_eigenvalue}};
    return result;
}

CommandResult cmd_angles(const Subspace& u, const Subspace& v, const ToleranceConfig& cfg) {
    json request = {{"U", subspace_to_json(u)}, {"V", subspace_to_json(v)}};
    CommandResult result{kSuccess, make_report("angles", std::move(request), cfg), {}};
    result.report.results = {{"angles", angles(u, v, cfg)}, {"dim_u", u.dim()}, {"dim_v", v.dim()}};
    return result;
}

CommandResult cmd_closed_form(const Subspace& u, const Subspace& v, double beta, const ToleranceConfig& cfg) {
    json request = {{"U", subspace_to_json(u)}, {"V", subspace_to_json(v)}, {"beta", beta}};
    CommandResult result{kSuccess, make_report("closed-form", std::move(request), cfg), {}};

    const CompositionSpec spec = CompositionSpec::make(u, v, beta, cfg);
    const AngleReport ang = angles(u, v, cfg);
    const double closed = kappa_closed_form(spec, cfg);
    const double numeric = kappa_exact(build_composition(spec), cfg).kappa;
    const double diff = std::abs(closed - numeric);
    result.report.results = {{"regime", regime_name(spec)},
                             {"c_F", ang.friedrichs},
                             {"beta", beta},
                             {"kappa_closed_form", closed},
                             {"kappa_exact", numeric},
                             {"abs_diff", diff},
                             {"oy_bound", ogura_yamada_bound(0.5, beta)}};
    if (diff > kCompareThreshold) {
        result.exit_code = kClaimFailure;
        result.message = "closed form and numeric modulus disagree by " + std::to_string(diff);
    }
    return result;
}

CommandResult cmd_closed_form(double c_f, double beta) {
    if (!(c_f >= 0.0 && c_f <= 1.0)) throw DomainError("--cf must lie in [0, 1]");
    CommandResult result{kSuccess, make_report("closed-form", {{"c_F", c_f}, {"beta", beta}}, {}), {}};
    json results = {{"regime", "friedrichs"},
                    {"c_F", c_f},
                    {"beta", beta},
                    {"kappa_closed_form", kappa_closed_form(c_f, beta)},
                    {"oy_bound", ogura_yamada_bound(0.5, beta)}};
    if (beta == 0.5) results["kappa_projection_composition"] = kappa_projection_composition(c_f);
    result.report.results = std::move(results);
    return result;
}

CommandResult cmd_compare(const CompareOptions& opts, const ToleranceConfig& cfg) {
    if (opts.dim < 2) throw DomainError("compare: --dim must be at least 2");
    if (opts.trials < 1) throw DomainError("compare: --trials must be at least 1");
    if (opts.worked_example && opts.dim != 2) throw DomainError("compare: --worked-example needs --dim 2");

    json request = {{"dim", opts.dim}, {"trials", opts.trials}, {"seed", opts.seed},
                    {"worked_example", opts.worked_example}};
    CommandResult result{kSuccess, make_report("compare", std::move(request), cfg), {}};

    const std::size_t n = opts.dim;
    Rng rng(opts.seed);
    std::uniform_int_distribution<std::size_t> dim_u_dist(1, n - 1);
    std::uniform_int_distribution<std::size_t> dim_v_dist(0, n - 1);
    std::uniform_real_distribution<double> beta_dist(0.0, 1.0);

    json rows = json::array();
    double max_diff = 0.0;
    for (std::size_t trial = 0; trial < opts.trials; ++trial) {
        const auto draw = [&]() {
            if (trial == 0 && opts.worked_example)
                return CompositionSpec::make(Subspace::span(2, {{1.0, 0.0}}, cfg),
                                             Subspace::span(2, {{1.0, 1.0}}, cfg), 0.5, cfg);
            for (;;) {
                const std::size_t du = dim_u_dist(rng);
                const std::size_t dv = dim_v_dist(rng);
                std::uniform_int_distribution<std::size_t> shared_dist(0, std::min(du - 1, dv));
                const std::size_t shared = shared_dist(rng);
                double beta = 0.0;
                while (beta <= 0.0) beta = beta_dist(rng);
                SubspacePair pair = random_subspace_pair(n, du, dv, shared, rng, cfg);
                CompositionSpec spec = CompositionSpec::make(std::move(pair.u), std::move(pair.v), beta, cfg);
                if (!spec.u_subset_v) return spec;
            }
        };
        const CompositionSpec spec = draw();
        const AngleReport ang = angles(spec.u, spec.v, cfg);
        const double numeric = kappa_exact(build_composition(spec), cfg).kappa;
        const double closed = kappa_closed_form(spec, cfg);
        const double diff = std::abs(numeric - closed);
        max_diff = std::max(max_diff, diff);
        rows.push_back({{"trial", trial},
                        {"dim_u", spec.u.dim()},
                        {"dim_v", spec.v.dim()},
                        {"dim_intersection", ang.dim_intersection},
                        {"beta", spec.beta},
                        {"c_F", ang.friedrichs},
                        {"kappa_exact", numeric},
                        {"kappa_closed_form", closed},
                        {"abs_diff", diff},
                        {"oy_bound", ogura_yamada_bound(0.5, spec.beta)}});
    }
    const bool passed = max_diff <= kCompareThreshold;
    result.report.results = {
        {"rows", std::move(rows)}, {"max_abs_diff", max_diff}, {"threshold", kCompareThreshold}, {"passed", passed}};
    if (!passed) {
        result.exit_code = kClaimFailure;
        result.message = "max |kappa_exact - kappa_closed_form| = " + std::to_string(max_diff) + " exceeds threshold";
    }
    return result;
}

SweepGrid SweepGrid::defaults() {
    SweepGrid grid;
    for (int i = 1; i <= 19; ++i) grid.betas.push_back(i / 20.0);
    for (int i = 0; i <= 20; ++i) grid.cfs.push_back(i / 20.0);
    return grid;
}

CommandResult cmd_sweep(const SweepGrid& grid) {
    if (grid.betas.empty() || grid.cfs.empty()) throw DomainError("sweep: grids must be nonempty");
    for (double b : grid.betas)
        if (!(b > 0.0 && b < 1.0)) throw DomainError("sweep: every beta must lie in (0, 1)");
    for (std::size_t i = 0; i < grid.cfs.size(); ++i) {
        if (!(grid.cfs[i] >= 0.0 && grid.cfs[i] <= 1.0)) throw DomainError("sweep: every c_F must lie in [0, 1]");
        if (i > 0 && !(grid.cfs[i] > grid.cfs[i - 1])) throw DomainError("sweep: c_F grid must be increasing");
    }

    CommandResult result{kSuccess, make_report("sweep", {{"beta", grid.betas}, {"c_F", grid.cfs}}, {}), {}};
    json rows = json::array();
    json violations = json::array();
    for (double beta : grid.betas) {
        const double oy = ogura_yamada_bound(0.5, beta);
        double previous = -1.0;
        for (double cf : grid.cfs) {
            const double kappa = kappa_closed_form(cf, beta);
            rows.push_back({{"beta", beta}, {"c_F", cf}, {"kappa_closed_form", kappa}, {"oy_bound", oy},
                            {"gap", oy - kappa}});
            if (!(kappa > previous))
                violations.push_back({{"beta", beta}, {"c_F", cf}, {"kind", "not strictly increasing"}});
            if (kappa > oy + 1e-12) violations.push_back({{"beta", beta}, {"c_F", cf}, {"kind", "exceeds bound"}});
            previous = kappa;
        }
    }
    const bool passed = violations.empty();
    result.report.results = {{"rows", std::move(rows)}, {"violations", std::move(violations)}, {"passed", passed}};
    if (!passed) {
        result.exit_code = kClaimFailure;
        result.message = "sweep found monotonicity or bound violations";
    }
    return result;
}

CommandResult cmd_verify_reference(const VerifyOptions& opts, const ToleranceConfig& cfg) {
    CommandResult result{kSuccess, make_report("verify-paper", {{"perturbation", opts.perturbation}}, cfg), {}};
    const double r2 = std::sqrt(2.0);
    const double kappa_star = (3.0 + r2) / 7.0;

    DenseMatrix m{{0.5, 0.0}, {0.5, 0.0}};
    m(0, 0) += opts.perturbation;
    const Subspace u = Subspace::span(2, {{1.0, 0.0}}, cfg);
    const Subspace v = Subspace::span(2, {{1.0, 1.0}}, cfg);
    const DenseMatrix id = DenseMatrix::identity(2);
    const DenseMatrix a = transpose_times(id - m, id - m);
    const DenseMatrix b = 2.0 * id - (m + m.transpose());

    json checks = json::array();
    auto add_check = [&](std::string name, std::string description, std::vector<json> parts) {
        bool passed = true;
        for (const auto& p : parts) passed = passed && p.at("passed").get<bool>();
        checks.push_back(
            {{"name", std::move(name)}, {"description", std::move(description)}, {"passed", passed}, {"details", parts}});
    };

    const SymEigen b_eig = sym_eigen(b, cfg);
    add_check("a", "eigenvalues of B = 2I - (M + M^T) are (3 +- sqrt 2)/2",
              {check_entry("beta_1", b_eig.eigenvalues[0], (3.0 + r2) / 2.0, kVerifyTolerance),
               check_entry("beta_2", b_eig.eigenvalues[1], (3.0 - r2) / 2.0, kVerifyTolerance)});

    std::vector<json> c_parts;
    try {
        const PencilReduction red = reduce_pencil(a, b, cfg);
        const auto& ev = red.reduced_eigen.eigenvalues;
        c_parts.push_back(check_entry("gamma_1", ev.size() > 0 ? ev[0] : 0.0, kappa_star, kVerifyTolerance));
        c_parts.push_back(check_entry("gamma_2", ev.size() > 1 ? ev[1] : 0.0, (3.0 - r2) / 7.0, kVerifyTolerance));
    } catch (const Error& e) {
        c_parts.push_back({{"name", "reduction"}, {"error_message", e.what()}, {"passed", false}});
    }
    add_check("b", "eigenvalues of C = D^-1 U^T A U D^-1 are (3 +- sqrt 2)/7", std::move(c_parts));

    std::vector<json> k_parts;
    try {
        k_parts.push_back(check_entry("kappa", kappa_exact(m, cfg).kappa, kappa_star, kVerifyTolerance));
    } catch (const Error& e) {
        k_parts.push_back({{"name", "kappa"}, {"error_message", e.what()}, {"passed", false}});
    }
    add_check("c", "kappa(M) = (3 + sqrt 2)/7 via the pencil reduction", std::move(k_parts));

    // Tolerance-free: the inequality is read off lambda_min of kB - A directly.
    const auto margin_at = [&](double delta) {
        return sym_eigen(averagedness_matrix(m, kappa_star + delta / 14.0), cfg).eigenvalues.back();
    };
    const double holds = margin_at(0.0);
    const double fails = margin_at(-1e-4);
    add_check("d", "averagedness inequality holds at delta = 0 and fails at delta = -1e-4",
              {{{"name", "delta_0"}, {"min_eigenvalue", holds}, {"passed", holds >= -kVerifyTolerance}},
               {{"name", "delta_minus_1e-4"}, {"min_eigenvalue", fails}, {"passed", fails < -kVerifyTolerance}}});

    const double cf = angles(u, v, cfg).friedrichs;
    const CompositionSpec spec = CompositionSpec::make(u, v, 0.5, cfg);
    add_check("e", "closed form at c_F = 1/sqrt 2 matches",
              {check_entry("c_F", cf, 1.0 / r2, kVerifyTolerance),
               check_entry("kappa_projection_composition", kappa_projection_composition(cf), kappa_star,
                           kVerifyTolerance),
               check_entry("kappa_closed_form", kappa_closed_form(spec, cfg), kappa_star, kVerifyTolerance),
               check_entry("composition_matches_matrix", max_abs_diff(build_composition(spec), m), 0.0,
                           kVerifyTolerance)});

    bool all = true;
    std::string failed;
    for (const auto& c : checks) {
        if (!c.at("passed").get<bool>()) {
            all = false;
            failed += (failed.empty() ? "" : ", ") + c.at("name").get<std::string>();
        }
    }
    result.report.results = {{"checks", std::move(checks)}, {"all_passed", all}, {"kappa_reference", kappa_star}};
    if (!all) {
        result.exit_code = kClaimFailure;
        result.message = "failed check(s): " + failed;
    }
    return result;
}

CommandResult cmd_random(const RandomOptions& opts, const ToleranceConfig& cfg) {
    if (opts.dim < 1) throw DomainError("random: --dim must be at least 1");
    json request = {{"kind", kind_name(opts.kind)}, {"dim", opts.dim}, {"seed", opts.seed}};
    Rng rng(opts.seed);
    json results = {{"kind", kind_name(opts.kind)}};

    switch (opts.kind) {
        case RandomKind::Nonexpansive: {
            if (!(opts.scale > 0.0 && opts.scale <= 1.0)) throw DomainError("random: --scale must lie in (0, 1]");
            request["scale"] = opts.scale;
            const DenseMatrix m = random_nonexpansive(opts.dim, rng, opts.scale, cfg);
            const PsdCheck check = is_nonexpansive(m, cfg);
            if (!check.psd) throw NumericError("generated matrix failed the nonexpansiveness check");
            results["instance"] = matrix_to_json(m);
            results["check_margin"] = check.min_eigenvalue;
            break;
        }
        case RandomKind::Averaged: {
            if (!(opts.kappa >= 0.0 && opts.kappa <= 1.0)) throw DomainError("random: --kappa must lie in [0, 1]");
            request["kappa"] = opts.kappa;
            const DenseMatrix m = random_averaged(opts.dim, opts.kappa, rng, cfg);
            const PsdCheck check = is_kappa_averaged(m, opts.kappa, cfg);
            if (!check.psd) throw NumericError("generated matrix failed the averagedness check");
            results["instance"] = matrix_to_json(m);
            results["check_margin"] = check.min_eigenvalue;
            break;
        }
        case RandomKind::SubspacePair: {
            if (opts.dim_u > opts.dim || opts.dim_v > opts.dim)
                throw DomainError("random: subspace dimensions exceed --dim");
            std::uniform_int_distribution<std::size_t> dim_dist(1, opts.dim);
            const std::size_t du = opts.dim_u > 0 ? opts.dim_u : dim_dist(rng);
            const std::size_t dv = opts.dim_v > 0 ? opts.dim_v : dim_dist(rng);
            request["dim_u"] = du;
            request["dim_v"] = dv;
            const SubspacePair pair = random_subspace_pair(opts.dim, du, dv, 0, rng, cfg);
            for (const Subspace* s : {&pair.u, &pair.v})
                Subspace::from_orthonormal(s->basis());  // throws if the basis drifted
            results["instance"] = {{"U", subspace_to_json(pair.u)}, {"V", subspace_to_json(pair.v)}};
            break;
        }
    }
    results["verified"] = true;
    CommandResult result{kSuccess, make_report("random", std::move(request), cfg), {}};
    result.report.results = std::move(results);
    return result;
}

}  // namespace avgkit::cli
