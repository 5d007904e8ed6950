#include "avgkit/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "avgkit/errors.hpp"

namespace avgkit {

namespace {

void require_unit_interval(double value, const char* what) {
    if (!(value >= 0.0 && value <= 1.0))
        throw DomainError(std::string(what) + " must lie in [0, 1], got " + std::to_string(value));
}

void require_open_unit_interval(double value, const char* what) {
    if (!(value > 0.0 && value < 1.0))
        throw DomainError(std::string(what) + " must lie in (0, 1), got " + std::to_string(value));
}

}  // namespace

CompositionSpec CompositionSpec::make(Subspace u, Subspace v, double beta, const ToleranceConfig& cfg) {
    if (u.ambient_dim() != v.ambient_dim()) throw DimensionError("composition: U and V live in different spaces");
    CompositionSpec spec{std::move(u), std::move(v), beta};
    spec.u_is_full = spec.u.is_full();
    spec.v_is_full = spec.v.is_full();
    spec.u_subset_v = is_contained(spec.u, spec.v, cfg);
    return spec;
}

DenseMatrix build_composition(const CompositionSpec& spec) {
    if (spec.u.ambient_dim() != spec.v.ambient_dim())
        throw DimensionError("build_composition: U and V live in different spaces");
    require_unit_interval(spec.beta, "build_composition: beta");
    const std::size_t n = spec.u.ambient_dim();
    const DenseMatrix relaxed = (1.0 - spec.beta) * DenseMatrix::identity(n) + spec.beta * reflector(spec.v);
    return relaxed * projector(spec.u);
}

double kappa_closed_form(const CompositionSpec& spec, const ToleranceConfig& cfg) {
    require_open_unit_interval(spec.beta, "kappa_closed_form: beta");
    if (spec.u_is_full) return spec.v_is_full ? 0.0 : spec.beta;
    if (spec.u_subset_v) return 0.5;
    return q_envelope(angles(spec.u, spec.v, cfg).friedrichs, spec.beta);
}

double kappa_closed_form(double c_f, double beta) {
    require_open_unit_interval(beta, "kappa_closed_form: beta");
    return q_envelope(c_f, beta);
}

double kappa_projection_composition(double c_f) {
    require_unit_interval(c_f, "kappa_projection_composition: c_F");
    return (1.0 + c_f) / (2.0 + c_f);
}

double ogura_yamada_bound(double k1, double k2) {
    require_unit_interval(k1, "ogura_yamada_bound: k1");
    require_unit_interval(k2, "ogura_yamada_bound: k2");
    const double denom = 1.0 - k1 * k2;
    if (denom == 0.0) return 1.0;
    return std::clamp((k1 + k2 - 2.0 * k1 * k2) / denom, 0.0, 1.0);
}

double q_quotient(const QEval& e) {
    if (!(e.t > 0.0)) throw DomainError("q_quotient: t must be positive");
    if (!(e.c >= -1.0 && e.c <= 1.0)) throw DomainError("q_quotient: c must lie in [-1, 1]");
    require_open_unit_interval(e.beta, "q_quotient: beta");
    const double bc = 4.0 * e.beta * e.c * e.t;
    const double num = e.t * e.t + bc + 4.0 * e.beta * e.beta;
    const double den = 2.0 * e.t * e.t + bc + 4.0 * e.beta;
    if (!(den > 0.0)) throw NumericError("q_quotient: denominator is not positive");
    return num / den;
}

double q_maximizer_t(double c, double beta) {
    if (!(c > 0.0 && c <= 1.0)) throw DomainError("q_maximizer_t: c must lie in (0, 1]");
    require_open_unit_interval(beta, "q_maximizer_t: beta");
    const double a = 1.0 - 2.0 * beta;
    return (a + std::sqrt(a * a + 4.0 * (1.0 - beta) * beta * c * c)) / c;
}

double q_envelope(double x, double beta) {
    require_unit_interval(x, "q_envelope: x");
    require_open_unit_interval(beta, "q_envelope: beta");
    const double a = 1.0 - 2.0 * beta;
    const double x2 = x * x;
    const double root = std::sqrt(a * a + 4.0 * (1.0 - beta) * beta * x2);
    return (1.0 + 2.0 * beta * (1.0 - x2) + root) / (2.0 * (2.0 - beta * x2));
}

}  // namespace avgkit
