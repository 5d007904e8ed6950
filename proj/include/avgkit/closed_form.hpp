#pragma once

#include "avgkit/matrix.hpp"
#include "avgkit/subspace.hpp"
#include "avgkit/tolerance.hpp"

namespace avgkit {

/// T = ((1 - beta) I + beta R_V) P_U together with the regime flags that
/// decide which formula applies.
struct CompositionSpec {
    Subspace u;
    Subspace v;
    double beta = 0.5;
    bool u_is_full = false;
    bool v_is_full = false;
    bool u_subset_v = false;

    /// Derives the flags with the same cosine cutoff that angles() uses.
    static CompositionSpec make(Subspace u, Subspace v, double beta, const ToleranceConfig& cfg = {});
};

/// Arguments of the one-parameter quotient q(t) from the maximization over z.
struct QEval {
    double t = 1.0;     // > 0
    double c = 0.0;     // in [-1, 1]
    double beta = 0.5;  // in (0, 1)
};

/// ((1 - beta) I + beta reflector(V)) projector(U); beta in [0, 1].
DenseMatrix build_composition(const CompositionSpec& spec);

/// Exact modulus of build_composition(spec); beta must lie in (0, 1).
/// Degenerate regimes: U = V = R^n -> 0, U = R^n != V -> beta, U proper and U in V -> 1/2.
/// Otherwise the envelope formula at c_F(U, V).
double kappa_closed_form(const CompositionSpec& spec, const ToleranceConfig& cfg = {});

/// Envelope formula at a given Friedrichs cosine; c_F = 1 yields 1/(2 - beta).
double kappa_closed_form(double c_f, double beta);

/// (1 + c_F) / (2 + c_F): modulus of P_V P_U outside the case U = V = R^n.
double kappa_projection_composition(double c_f);

/// (k1 + k2 - 2 k1 k2) / (1 - k1 k2), with value 1 at k1 = k2 = 1.
double ogura_yamada_bound(double k1, double k2);

/// q(t) = (t^2 + 4 beta c t + 4 beta^2) / (2 t^2 + 4 beta c t + 4 beta).
double q_quotient(const QEval& e);

/// Unique positive critical point of q for c > 0 (the global maximizer).
double q_maximizer_t(double c, double beta);

/// Q(x) = (1 + 2 beta (1 - x^2) + sqrt((1 - 2 beta)^2 + 4 (1 - beta) beta x^2)) / (2 (2 - beta x^2)).
/// Strictly increasing on [0, 1]; Q(0) = max(beta, 1/2), Q(1) = 1/(2 - beta).
double q_envelope(double x, double beta);

}  // namespace avgkit
