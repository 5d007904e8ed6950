#include "avgkit/tolerance.hpp"

#include <cstdlib>
#include <string>

#include "avgkit/errors.hpp"

namespace avgkit {

void ToleranceConfig::validate() const {
    const auto check = [](double v, const char* name) {
        if (!(v > 0.0 && v < 1.0))
            throw DomainError(std::string("tolerance ") + name + " must lie in (0, 1), got " + std::to_string(v));
    };
    check(eig_tol, "eig_tol");
    check(psd_tol, "psd_tol");
    check(rank_tol, "rank_tol");
    check(cluster_tol, "cluster_tol");
    check(bisect_tol, "bisect_tol");
}

ToleranceConfig tolerance_preset(ToleranceProfile profile) {
    switch (profile) {
        case ToleranceProfile::Strict:
            return {1e-14, 1e-11, 1e-10, 1e-10, 1e-12};
        case ToleranceProfile::Loose:
            return {1e-10, 1e-7, 1e-6, 1e-6, 1e-8};
        case ToleranceProfile::Default:
            break;
    }
    return {};
}

std::optional<ToleranceProfile> parse_tolerance_profile(std::string_view name) {
    if (name == "strict") return ToleranceProfile::Strict;
    if (name == "default") return ToleranceProfile::Default;
    if (name == "loose") return ToleranceProfile::Loose;
    return std::nullopt;
}

ToleranceConfig tolerance_from_environment() {
    const char* raw = std::getenv("AVGKIT_TOLERANCE_PROFILE");
    if (raw == nullptr || *raw == '\0') return {};
    const auto profile = parse_tolerance_profile(raw);
    if (!profile) throw DomainError(std::string("unknown AVGKIT_TOLERANCE_PROFILE '") + raw + "'");
    return tolerance_preset(*profile);
}

}  // namespace avgkit
