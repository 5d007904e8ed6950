#pragma once

#include <optional>
#include <string_view>

namespace avgkit {

/// Numeric thresholds shared by every routine.
struct ToleranceConfig {
    double eig_tol = 1e-12;     // Jacobi off-diagonal stop, relative to ||S||_F
    double psd_tol = 1e-9;      // lambda_min slack, scaled by ||S||_1
    double rank_tol = 1e-8;     // rank cutoff, relative to the largest value
    double cluster_tol = 1e-8;  // cosine >= 1 - cluster_tol means "angle zero"
    double bisect_tol = 1e-10;  // width of the final kappa bracket

    /// Throws DomainError unless every field lies in (0, 1).
    void validate() const;

    bool operator==(const ToleranceConfig&) const = default;
};

enum class ToleranceProfile { Strict, Default, Loose };

ToleranceConfig tolerance_preset(ToleranceProfile profile);

std::optional<ToleranceProfile> parse_tolerance_profile(std::string_view name);

/// Preset named by AVGKIT_TOLERANCE_PROFILE, or the default preset when unset.
/// Throws DomainError for an unknown profile name.
ToleranceConfig tolerance_from_environment();

}  // namespace avgkit
