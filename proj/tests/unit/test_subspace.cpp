#include <doctest.h>

#include "avgkit/errors.hpp"
#include "avgkit/subspace.hpp"
#include "test_support.hpp"

using namespace avgkit;
using namespace avgkit::testing;

namespace {

Subspace line(double x, double y) { return Subspace::span(DenseMatrix{{x}, {y}}); }

DenseMatrix stacked(const Subspace& u, const Subspace& v) {
    const std::size_t n = u.ambient_dim();
    DenseMatrix out(n, u.dim() + v.dim());
    for (std::size_t j = 0; j < u.dim(); ++j) out.set_column(j, u.basis().column(j));
    for (std::size_t j = 0; j < v.dim(); ++j) out.set_column(u.dim() + j, v.basis().column(j));
    return out;
}

}  // namespace

TEST_CASE("Subspace construction") {
    const Subspace s = Subspace::span(3, {{1.0, 0.0, 0.0}, {2.0, 0.0, 0.0}, {0.0, 1.0, 1.0}});
    CHECK(s.dim() == 2);
    CHECK(s.ambient_dim() == 3);
    CHECK(max_abs_diff(transpose_times(s.basis(), s.basis()), DenseMatrix::identity(2)) <= 1e-10);
    CHECK(Subspace::zero(4).is_zero());
    CHECK(Subspace::full(4).is_full());
    CHECK_THROWS_AS(Subspace::from_orthonormal(DenseMatrix{{1.0}, {1.0}}), DomainError);
    CHECK_THROWS_AS(Subspace::span(2, {{1.0, 2.0, 3.0}}), DimensionError);
}

TEST_CASE("projector examples") {
    CHECK(max_abs(projector(Subspace::zero(2))) == 0.0);
    CHECK(max_abs_diff(projector(line(1.0, 1.0)), DenseMatrix{{0.5, 0.5}, {0.5, 0.5}}) <= 1e-15);
    CHECK(projector(line(1.0, 0.0)) == DenseMatrix{{1.0, 0.0}, {0.0, 0.0}});
}

TEST_CASE("reflector examples") {
    CHECK(reflector(Subspace::full(3)) == DenseMatrix::identity(3));
    CHECK(reflector(Subspace::zero(3)) == -1.0 * DenseMatrix::identity(3));
    CHECK(max_abs_diff(reflector(line(1.0, 1.0)), DenseMatrix{{0.0, 1.0}, {1.0, 0.0}}) <= 1e-15);
}

TEST_CASE("complement examples") {
    const Subspace c = complement(Subspace::span(3, {{1.0, 0.0, 0.0}}));
    REQUIRE(c.dim() == 2);
    CHECK(max_abs_diff(projector(c), DenseMatrix{{0, 0, 0}, {0, 1, 0}, {0, 0, 1}}) <= 1e-12);
    CHECK(complement(Subspace::full(3)).is_zero());
    CHECK(complement(Subspace::zero(3)).is_full());
}

TEST_CASE("projector, reflector and complement properties on random subspaces of R^8") {
    Rng rng(31);
    const DenseMatrix id = DenseMatrix::identity(8);
    for (std::size_t d = 0; d <= 8; ++d) {
        const Subspace s = random_subspace(8, d, rng);
        const Subspace c = complement(s);
        const DenseMatrix p = projector(s), r = reflector(s);
        CHECK(c.dim() == 8 - d);
        if (d > 0 && d < 8) CHECK(max_abs(transpose_times(s.basis(), c.basis())) <= 1e-10);
        CHECK(max_abs_diff(p * p, p) <= 1e-10);
        CHECK(max_abs_diff(p.transpose(), p) <= 1e-10);
        CHECK(max_abs_diff(p + projector(c), id) <= 1e-10);
        CHECK(max_abs_diff(r * r, id) <= 1e-10);
        CHECK(max_abs_diff(r, p - projector(c)) <= 1e-10);
    }
}

TEST_CASE("angles: two lines at 45 degrees") {
    const AngleReport a = angles(line(1.0, 0.0), line(1.0, 1.0));
    CHECK(a.dim_intersection == 0);
    CHECK(a.dixmier == doctest::Approx(1.0 / kSqrt2).epsilon(1e-14));
    CHECK(std::abs(a.friedrichs - 1.0 / kSqrt2) <= 1e-10);
}

TEST_CASE("angles: proper nested pair has c_D = 1 and c_F = 0") {
    const Subspace u = Subspace::span(3, {{1.0, 1.0, 0.0}});
    const Subspace v = Subspace::span(3, {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}});
    const AngleReport a = angles(u, v);
    CHECK(a.dixmier == doctest::Approx(1.0));
    CHECK(a.friedrichs == 0.0);
    CHECK(a.dim_intersection == 1);
}

TEST_CASE("angles: orthogonal and trivial pairs") {
    const AngleReport perp = angles(line(1.0, 0.0), line(0.0, 1.0));
    CHECK(perp.dixmier == 0.0);
    CHECK(perp.friedrichs == 0.0);
    const AngleReport trivial = angles(Subspace::zero(2), line(1.0, 0.0));
    CHECK(trivial.cosines.empty());
    CHECK(trivial.dixmier == 0.0);
    CHECK(trivial.friedrichs == 0.0);
    CHECK_THROWS_AS(angles(Subspace::zero(2), Subspace::zero(3)), DimensionError);
}

TEST_CASE("angles: report invariants and symmetry in U, V") {
    Rng rng(41);
    std::uniform_int_distribution<std::size_t> pick(1, 7);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const std::size_t du = 1 + pick(rng) % (n - 1), dv = 1 + pick(rng) % (n - 1);
        const std::size_t shared = pick(rng) % (std::min(du, dv) + 1);
        const SubspacePair pair = random_subspace_pair(n, du, dv, shared, rng);
        const AngleReport a = angles(pair.u, pair.v), b = angles(pair.v, pair.u);
        CHECK(nonincreasing(a.cosines));
        CHECK(a.friedrichs <= a.dixmier);
        CHECK(a.dim_intersection >= shared);
        if (!a.cosines.empty()) CHECK(a.dixmier == a.cosines[0]);
        CHECK(std::abs(a.friedrichs - b.friedrichs) <= 1e-10);
        CHECK(std::abs(a.dixmier - b.dixmier) <= 1e-10);
        CHECK(a.dim_intersection == b.dim_intersection);
    }
}

TEST_CASE("angles: complement duality of the Friedrichs cosine") {
    Rng rng(43);
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t n = 3 + trial % 6;
        const std::size_t du = 1 + trial % (n - 1), dv = 1 + (trial / 3) % (n - 1);
        const std::size_t shared = trial % (std::min(du, dv));
        const SubspacePair pair = random_subspace_pair(n, du, dv, shared, rng);
        const double cf = angles(pair.u, pair.v).friedrichs;
        const double cf_perp = angles(complement(pair.u), complement(pair.v)).friedrichs;
        CHECK(std::abs(cf - cf_perp) <= 1e-8);
    }
}

TEST_CASE("angles: nested random pairs have c_F = 0") {
    Rng rng(47);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const std::size_t inner = 1 + trial % (n - 1);
        const std::size_t outer = inner + (trial / 2) % (n - inner + 1);
        const SubspacePair pair = random_nested_pair(n, inner, outer, rng);
        CHECK(angles(pair.u, pair.v).friedrichs == 0.0);
        CHECK(angles(pair.v, pair.u).friedrichs == 0.0);
        CHECK(is_contained(pair.u, pair.v));
    }
}

TEST_CASE("intersection examples") {
    Rng rng(53);
    const Subspace u = random_subspace(5, 3, rng);
    const Subspace self = intersection(u, u);
    CHECK(self.dim() == 3);
    CHECK(max_abs_diff(projector(self), projector(u)) <= 1e-10);
    CHECK(intersection(line(1.0, 0.0), line(1.0, 1.0)).is_zero());
    CHECK_THROWS_AS(intersection(Subspace::zero(2), Subspace::zero(3)), DimensionError);
}

TEST_CASE("intersection of random 3-dim subspaces of R^4 matches the rank count") {
    Rng rng(59);
    for (int trial = 0; trial < 20; ++trial) {
        const Subspace u = random_subspace(4, 3, rng), v = random_subspace(4, 3, rng);
        // dim(U cap V) = dim U + dim V - dim(U + V), with dim(U + V) from elimination.
        const std::size_t expected = 6 - rank_by_elimination(stacked(u, v));
        const Subspace w = intersection(u, v);
        CHECK(expected == 2);
        CHECK(w.dim() == expected);
        CHECK(w.dim() == angles(u, v).dim_intersection);
        // Basis lies in both subspaces.
        CHECK(max_abs_diff(projector(u) * w.basis(), w.basis()) <= 1e-8);
        CHECK(max_abs_diff(projector(v) * w.basis(), w.basis()) <= 1e-8);
    }
}

TEST_CASE("is_contained") {
    CHECK(is_contained(Subspace::zero(3), Subspace::zero(3)));
    CHECK(is_contained(line(1.0, 1.0), Subspace::full(2)));
    CHECK_FALSE(is_contained(line(1.0, 0.0), line(1.0, 1.0)));
    CHECK_FALSE(is_contained(Subspace::full(2), line(1.0, 1.0)));
}
