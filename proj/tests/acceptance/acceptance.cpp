// Acceptance suite: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.
// Every threshold is a named constant below; nothing is scaled at run time.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "avgkit/averagedness.hpp"
#include "avgkit/cli.hpp"
#include "avgkit/closed_form.hpp"
#include "avgkit/random.hpp"
#include "avgkit/subspace.hpp"

using namespace avgkit;

namespace {

constexpr double kRegressionTol = 1e-9;
constexpr double kClosedFormTol = 1e-7;
constexpr double kSpecialCaseTol = 1e-8;
constexpr double kRelaxedTol = 1e-8;
constexpr double kReflectorTol = 1e-10;
constexpr double kOracleTol = 1e-8;
constexpr double kSampleGap2x2 = 0.05;
constexpr double kAdjointTol = 1e-8;
constexpr double kSharpnessTol = 1e-12;
constexpr double kCompositionTol = 1e-8;
constexpr double kMonotoneSlack = 1e-14;
constexpr double kDualityTol = 1e-8;
constexpr double kWorkedAngleTol = 1e-10;

constexpr double kBudgetRegressionS = 1.0;
constexpr double kBudgetClosedFormS = 30.0;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::size_t draw(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double draw_unit(Rng& rng) { return std::uniform_real_distribution<double>(0.01, 0.99)(rng); }

// Norm scale kept below 1: unit-norm Gaussian matrices almost surely have kappa = 1.
DenseMatrix draw_nonexpansive(std::size_t n, Rng& rng) {
    return random_nonexpansive(n, rng, std::uniform_real_distribution<double>(0.5, 0.999)(rng));
}

DenseMatrix relax(const DenseMatrix& r, double beta) {
    return (1.0 - beta) * DenseMatrix::identity(r.rows()) + beta * r;
}

Outcome worked_example_regression() {
    const auto t0 = std::chrono::steady_clock::now();
    const cli::CommandResult r = cli::cmd_verify_reference({}, ToleranceConfig{});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Outcome o;
    std::string names;
    for (const auto& c : r.report.results.at("checks")) {
        const bool ok = c.at("passed").get<bool>();
        names += c.at("name").get<std::string>() + (ok ? "=ok " : "=FAIL ");
        o.pass = o.pass && ok;
    }
    // Independent of the command: kappa straight from the library.
    const double kappa = kappa_exact(DenseMatrix{{0.5, 0.0}, {0.5, 0.0}}).kappa;
    const double err = std::abs(kappa - (3.0 + std::numbers::sqrt2) / 7.0);
    o.pass = o.pass && r.exit_code == 0 && err <= kRegressionTol && secs < kBudgetRegressionS;
    o.detail = names + fmt("|kappa - (3+sqrt2)/7| = %.2e, %.3fs", err, secs);
    return o;
}

Outcome closed_form_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(20240501);
    double worst = 0.0;
    int count = 0;
    while (count < 500) {
        const std::size_t n = draw(rng, 2, 8);
        const std::size_t du = draw(rng, 1, n - 1);
        const std::size_t dv = draw(rng, 0, n - 1);
        const std::size_t shared = draw(rng, 0, std::min(du - 1, dv));
        const SubspacePair p = random_subspace_pair(n, du, dv, shared, rng);
        const CompositionSpec spec = CompositionSpec::make(p.u, p.v, draw_unit(rng));
        if (spec.u_subset_v) continue;
        const double diff = std::abs(kappa_closed_form(spec) - kappa_exact(build_composition(spec)).kappa);
        worst = std::max(worst, diff);
        ++count;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {worst <= kClosedFormTol && secs < kBudgetClosedFormS,
            fmt("500 instances, max |closed - exact| = %.2e, %.2fs", worst, secs)};
}

Outcome special_cases() {
    Rng rng(31);
    double worst_full = 0.0, worst_half_full = 0.0, worst_nested = 0.0;
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = draw(rng, 2, 8);
        const double beta = draw_unit(rng);
        const Subspace full = Subspace::full(n);
        worst_full = std::max(
            worst_full, std::abs(kappa_exact(build_composition(CompositionSpec::make(full, full, beta))).kappa));

        const Subspace v = random_subspace(n, draw(rng, 0, n - 1), rng);
        const double k = kappa_exact(build_composition(CompositionSpec::make(full, v, beta))).kappa;
        worst_half_full = std::max(worst_half_full, std::abs(k - beta));

        const std::size_t inner = draw(rng, 1, n - 1);
        const SubspacePair nested = random_nested_pair(n, inner, draw(rng, inner, n), rng);
        const double kn = kappa_exact(build_composition(CompositionSpec::make(nested.u, nested.v, beta))).kappa;
        worst_nested = std::max(worst_nested, std::abs(kn - 0.5));
    }
    const double worst = std::max({worst_full, worst_half_full, worst_nested});
    return {worst <= kSpecialCaseTol,
            fmt("3x50 instances, max err full/full %.2e, ", worst_full) +
                fmt("full/proper %.2e, nested %.2e", worst_half_full, worst_nested)};
}

Outcome relaxation_reduction() {
    Rng rng(41);
    double worst = 0.0, worst_reflector = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = draw(rng, 2, 8);
        const DenseMatrix r = random_with_fixed_space(n, draw(rng, 1, n - 1), rng);
        const double beta = draw_unit(rng);
        worst = std::max(worst, std::abs(kappa_relaxed(r, beta).kappa - kappa_exact(relax(r, beta)).kappa));

        const Subspace v = random_subspace(n, draw(rng, 1, n - 1), rng);
        worst_reflector = std::max(worst_reflector, std::abs(kappa_relaxed(reflector(v), beta).kappa - beta));
    }
    return {worst <= kRelaxedTol && worst_reflector <= kReflectorTol,
            fmt("100 instances, max |relaxed - exact| = %.2e, reflector max |kappa - beta| = %.2e", worst,
                worst_reflector)};
}

Outcome oracle_triangle() {
    Rng rng(51);
    double worst_bisect = 0.0, worst_excess = -1.0, worst_gap2 = 0.0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 2 + i % 7;
        const DenseMatrix m = draw_nonexpansive(n, rng);
        const double exact = kappa_exact(m).kappa;
        worst_bisect = std::max(worst_bisect, std::abs(kappa_bisection(m).kappa - exact));
        const double sample = kappa_quotient_sample(m, 10000, 1000 + i);
        worst_excess = std::max(worst_excess, sample - exact);
        if (n == 2) worst_gap2 = std::max(worst_gap2, exact - sample);
    }
    return {worst_bisect <= kOracleTol && worst_excess <= kOracleTol && worst_gap2 <= kSampleGap2x2,
            fmt("200 matrices, max |bisect - exact| = %.2e, max (sample - exact) = %.2e, ", worst_bisect,
                worst_excess) +
                fmt("n=2 max (exact - sample) = %.2e", worst_gap2)};
}

Outcome adjoint_invariance() {
    Rng rng(61);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const DenseMatrix m = draw_nonexpansive(2 + i % 7, rng);
        worst = std::max(worst, std::abs(kappa_exact(m).kappa - kappa_exact(m.transpose()).kappa));
    }
    return {worst <= kAdjointTol, fmt("200 matrices, max |k(M) - k(M^T)| = %.2e", worst)};
}

Outcome bound_dominance() {
    const cli::SweepGrid grid = cli::SweepGrid::defaults();
    bool dominated = true;
    double worst_sharp = 0.0;
    for (double beta : grid.betas) {
        const double oy = 1.0 / (2.0 - beta);
        for (double x : grid.cfs) {
            const double q = q_envelope(x, beta);
            if (q > oy) dominated = false;
            if (x <= 0.95 && !(q < oy)) dominated = false;
        }
        worst_sharp = std::max(worst_sharp, std::abs(q_envelope(1.0, beta) - oy));
    }

    Rng rng(71);
    double worst_excess = -1.0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = draw(rng, 2, 8);
        const DenseMatrix m1 = random_averaged(n, draw_unit(rng), rng);
        const DenseMatrix m2 = random_averaged(n, draw_unit(rng), rng);
        const double bound = ogura_yamada_bound(kappa_exact(m1).kappa, kappa_exact(m2).kappa);
        worst_excess = std::max(worst_excess, kappa_exact(m2 * m1).kappa - bound);
    }
    return {dominated && worst_sharp <= kSharpnessTol && worst_excess <= kCompositionTol,
            std::string("grid dominance ") + (dominated ? "ok" : "VIOLATED") +
                fmt(", max |Q(1,b) - 1/(2-b)| = %.2e, 200 pairs max (k(T2T1) - OY) = %.2e", worst_sharp,
                    worst_excess)};
}

Outcome envelope_monotone() {
    const cli::SweepGrid grid = cli::SweepGrid::defaults();
    double min_step = 1.0;
    for (double beta : grid.betas)
        for (std::size_t i = 1; i < grid.cfs.size(); ++i)
            min_step = std::min(min_step, q_envelope(grid.cfs[i], beta) - q_envelope(grid.cfs[i - 1], beta));
    return {min_step > kMonotoneSlack, fmt("min successive increment = %.3e", min_step)};
}

Outcome angle_identities() {
    Rng rng(81);
    double worst_dual = 0.0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = draw(rng, 2, 8);
        const std::size_t du = draw(rng, 1, n - 1), dv = draw(rng, 1, n - 1);
        const SubspacePair p = random_subspace_pair(n, du, dv, draw(rng, 0, std::min(du, dv) - 1), rng);
        const double cf = angles(p.u, p.v).friedrichs;
        worst_dual = std::max(worst_dual, std::abs(cf - angles(complement(p.u), complement(p.v)).friedrichs));
    }
    double worst_nested = 0.0;
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = draw(rng, 2, 8);
        const std::size_t inner = draw(rng, 1, n - 1);
        const SubspacePair p = random_nested_pair(n, inner, draw(rng, inner, n), rng);
        worst_nested = std::max(worst_nested, angles(p.u, p.v).friedrichs);
    }
    const Subspace u = Subspace::span(2, {{1.0, 0.0}}), v = Subspace::span(2, {{1.0, 1.0}});
    const double worked = std::abs(angles(u, v).friedrichs - 1.0 / std::numbers::sqrt2);
    return {worst_dual <= kDualityTol && worst_nested == 0.0 && worked <= kWorkedAngleTol,
            fmt("200 pairs max duality gap %.2e, 50 nested max c_F %.2e", worst_dual, worst_nested) +
                fmt(", worked pair |c_F - 1/sqrt2| = %.2e", worked)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"worked-example regression", worked_example_regression},
        {"closed form vs numeric modulus", closed_form_equivalence},
        {"degenerate composition regimes", special_cases},
        {"relaxation reduction to (Fix R)^perp", relaxation_reduction},
        {"exact / bisection / sampling oracles", oracle_triangle},
        {"adjoint invariance", adjoint_invariance},
        {"composition bound dominance and sharpness", bound_dominance},
        {"envelope monotonicity", envelope_monotone},
        {"angle identities", angle_identities},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        if (!o.pass) ++failures;
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
