#include <doctest.h>

#include <cmath>

#include "avgkit/averagedness.hpp"
#include "avgkit/closed_form.hpp"
#include "avgkit/errors.hpp"
#include "test_support.hpp"

using namespace avgkit;
using namespace avgkit::testing;

namespace {

Subspace line(double x, double y) { return Subspace::span(DenseMatrix{{x}, {y}}); }

// q written out independently of the library, for finite differences.
double q_ref(double t, double c, double beta) {
    return (t * t + 4 * beta * c * t + 4 * beta * beta) / (2 * t * t + 4 * beta * c * t + 4 * beta);
}

}  // namespace

TEST_CASE("build_composition examples") {
    const CompositionSpec worked = CompositionSpec::make(line(1.0, 0.0), line(1.0, 1.0), 0.5);
    CHECK(max_abs_diff(build_composition(worked), worked_matrix()) <= 1e-15);
    Rng rng(1);
    const Subspace u = random_subspace(4, 2, rng), v = random_subspace(4, 3, rng);
    CHECK(max_abs_diff(build_composition(CompositionSpec::make(u, v, 0.0)), projector(u)) <= 1e-15);
    CHECK(build_composition(CompositionSpec::make(Subspace::full(3), Subspace::full(3), 0.7)) ==
          DenseMatrix::identity(3));
    CHECK_THROWS_AS(CompositionSpec::make(Subspace::zero(2), Subspace::zero(3), 0.5), DimensionError);
}

TEST_CASE("build_composition is nonexpansive with Fix T = U cap V") {
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + trial % 5;
        const SubspacePair p = random_subspace_pair(n, 2, 2, trial % 2, rng);
        const CompositionSpec spec = CompositionSpec::make(p.u, p.v, 0.35);
        const DenseMatrix t = build_composition(spec);
        CHECK(is_nonexpansive(t).psd);
        CHECK(fixed_space(t).dim() == intersection(p.u, p.v).dim());
    }
}

TEST_CASE("kappa_closed_form examples") {
    const CompositionSpec worked = CompositionSpec::make(line(1.0, 0.0), line(1.0, 1.0), 0.5);
    CHECK(std::abs(kappa_closed_form(worked) - kKappaWorked) <= 1e-12);
    CHECK(kappa_closed_form(0.0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(kappa_closed_form(CompositionSpec::make(Subspace::full(2), line(1.0, 3.0), 0.3)) == 0.3);
    CHECK(kappa_closed_form(CompositionSpec::make(Subspace::full(2), Subspace::full(2), 0.3)) == 0.0);
    const Subspace u = Subspace::span(3, {{1.0, 0.0, 0.0}});
    const Subspace v = Subspace::span(3, {{1.0, 0.0, 0.0}, {0.0, 1.0, 1.0}});
    CHECK(kappa_closed_form(CompositionSpec::make(u, v, 0.8)) == 0.5);
    CHECK(kappa_closed_form(1.0, 0.25) == doctest::Approx(1.0 / 1.75).epsilon(1e-14));
    CHECK_THROWS_AS(kappa_closed_form(0.5, 1.0), DomainError);
    CHECK_THROWS_AS(kappa_closed_form(CompositionSpec::make(u, v, 0.0)), DomainError);
}

TEST_CASE("kappa_closed_form agrees with kappa_exact, and with the adjoint-order composition") {
    Rng rng(3);
    std::uniform_real_distribution<double> unit(0.01, 0.99);
    int used = 0;
    for (int trial = 0; used < 60; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const std::size_t du = 1 + trial % (n - 1);
        const std::size_t dv = trial % n;
        const SubspacePair p = random_subspace_pair(n, du, dv, std::min(dv, du - 1) / 2, rng);
        const CompositionSpec spec = CompositionSpec::make(p.u, p.v, unit(rng));
        if (spec.u_subset_v) continue;
        ++used;
        const double closed = kappa_closed_form(spec);
        CHECK(std::abs(closed - kappa_exact(build_composition(spec)).kappa) <= 1e-7);
        const DenseMatrix relaxed_v =
            (1.0 - spec.beta) * DenseMatrix::identity(n) + spec.beta * reflector(spec.v);
        CHECK(std::abs(closed - kappa_exact(projector(spec.u) * relaxed_v).kappa) <= 1e-7);
    }
}

TEST_CASE("kappa_projection_composition") {
    CHECK(std::abs(kappa_projection_composition(1.0 / kSqrt2) - kKappaWorked) <= 1e-15);
    CHECK(kappa_projection_composition(0.0) == 0.5);
    CHECK(kappa_projection_composition(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(kappa_projection_composition(1.1), DomainError);
    CHECK_THROWS_AS(kappa_projection_composition(-0.1), DomainError);
    for (int i = 0; i <= 100; ++i) {
        const double c = i / 100.0;
        CHECK(std::abs(kappa_closed_form(c, 0.5) - kappa_projection_composition(c)) <= 1e-12);
    }
}

TEST_CASE("ogura_yamada_bound") {
    CHECK(ogura_yamada_bound(0.5, 0.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(ogura_yamada_bound(1.0, 1.0) == 1.0);
    CHECK(ogura_yamada_bound(0.5, 0.25) == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
    for (double k : {0.0, 0.3, 0.9, 1.0}) CHECK(ogura_yamada_bound(0.0, k) == doctest::Approx(k).epsilon(1e-15));
    CHECK_THROWS_AS(ogura_yamada_bound(1.2, 0.5), DomainError);
    CHECK_THROWS_AS(ogura_yamada_bound(0.5, -0.5), DomainError);
}

TEST_CASE("q_quotient limits and constant case") {
    for (double beta : {0.1, 0.3, 0.7}) {
        for (double c : {-0.5, 0.0, 0.6}) {
            CHECK(std::abs(q_quotient({1e-9, c, beta}) - beta) <= 1e-6);
            CHECK(std::abs(q_quotient({1e9, c, beta}) - 0.5) <= 1e-6);
        }
    }
    for (double t : {1e-3, 0.5, 1.0, 7.0}) CHECK(q_quotient({t, 0.0, 0.5}) == 0.5);
    CHECK_THROWS_AS(q_quotient({0.0, 0.5, 0.5}), DomainError);
    CHECK_THROWS_AS(q_quotient({1.0, 1.5, 0.5}), DomainError);
}

TEST_CASE("q_maximizer_t") {
    for (double c : {0.1, 0.5, 1.0}) CHECK(q_maximizer_t(c, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(q_quotient({q_maximizer_t(1.0 / kSqrt2, 0.5), 1.0 / kSqrt2, 0.5}) - kKappaWorked) <= 1e-15);
    CHECK_THROWS_AS(q_maximizer_t(0.0, 0.5), DomainError);
    CHECK_THROWS_AS(q_maximizer_t(-0.2, 0.5), DomainError);

    // Finite-difference sign of q' flips from positive to negative across t1.
    for (double beta : {0.1, 0.4, 0.6, 0.9}) {
        for (double c : {0.05, 0.4, 0.9, 1.0}) {
            const double t1 = q_maximizer_t(c, beta);
            REQUIRE(t1 > 0.0);
            const double h = 1e-6 * t1;
            for (double s : {0.5, 0.9, 0.99}) {
                const double tl = t1 * s, tr = t1 / s;
                CHECK(q_ref(tl + h, c, beta) - q_ref(tl - h, c, beta) > 0.0);
                CHECK(q_ref(tr + h, c, beta) - q_ref(tr - h, c, beta) < 0.0);
            }
            CHECK(q_quotient({t1, c, beta}) > q_quotient({t1 * 0.999, c, beta}));
            CHECK(q_quotient({t1, c, beta}) > q_quotient({t1 * 1.001, c, beta}));
        }
    }
}

TEST_CASE("q_envelope endpoints and monotonicity") {
    CHECK(q_envelope(0.0, 0.3) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q_envelope(1.0, 0.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    for (int i = 1; i <= 9; ++i) {
        const double beta = i / 10.0;
        CHECK(q_envelope(0.3, beta) < q_envelope(0.6, beta));
        CHECK(q_envelope(0.6, beta) < q_envelope(0.9, beta));
        CHECK(std::abs(q_envelope(0.0, beta) - std::max(beta, 0.5)) <= 1e-15);
        CHECK(std::abs(q_envelope(1.0, beta) - 1.0 / (2.0 - beta)) <= 1e-12);
        CHECK(std::abs(q_envelope(1.0, beta) - ogura_yamada_bound(0.5, beta)) <= 1e-12);
        for (int j = 1; j < 100; ++j) {
            const double x = j / 100.0;
            CHECK(q_envelope(x, beta) < ogura_yamada_bound(0.5, beta));
            CHECK(q_envelope(x, beta) > std::max(beta, 0.5));
        }
    }
    CHECK_THROWS_AS(q_envelope(1.5, 0.5), DomainError);
    CHECK_THROWS_AS(q_envelope(0.5, 0.0), DomainError);
}

TEST_CASE("q over a log-spaced t grid stays under Q and approaches it") {
    for (double beta : {0.1, 0.35, 0.5, 0.8}) {
        for (double c : {0.05, 0.3, 0.7071067811865476, 0.95}) {
            double grid_max = 0.0;
            for (int i = 0; i <= 4000; ++i) {
                const double t = std::pow(10.0, -6.0 + 12.0 * i / 4000.0);
                grid_max = std::max(grid_max, q_quotient({t, c, beta}));
            }
            const double env = q_envelope(c, beta);
            CHECK(grid_max <= env + 1e-9);
            CHECK(std::abs(grid_max - env) <= 1e-6);
        }
    }
}
