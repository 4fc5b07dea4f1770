#pragma once

// Qualitative likelihood x severity matrix. Scales, formulas and band
// thresholds are configuration choices, fixed here:
//
//   likelihood = clamp(hazard - response + 3, 1, 5)
//   severity   = mean(intensity, sensitivity, vulnerability), rounded half up
//   magnitude  = likelihood * severity
//   band       = 1-4 Low, 5-9 Moderate, 10-14 High, 15-25 Critical

#include <algorithm>
#include <optional>
#include <string>

#include "rightsrisk/error.hpp"
#include "rightsrisk/model.hpp"

namespace rightsrisk {

enum class RiskBand { Low, Moderate, High, Critical };

inline const char* to_string(RiskBand b) {
    switch (b) {
    case RiskBand::Low: return "Low";
    case RiskBand::Moderate: return "Moderate";
    case RiskBand::High: return "High";
    case RiskBand::Critical: return "Critical";
    }
    return "?";
}

inline std::optional<RiskBand> risk_band_from(std::string_view s) {
    for (auto b : {RiskBand::Low, RiskBand::Moderate, RiskBand::High, RiskBand::Critical})
        if (s == to_string(b)) return b;
    return std::nullopt;
}

inline constexpr const char* kRiskMatrixLabel = "qualitative, configuration-defined";

struct MagnitudeResult {
    int likelihood = 1;
    int severity = 1;
    int magnitude = 1;
    RiskBand band = RiskBand::Low;

    bool operator==(const MagnitudeResult&) const = default;
};

namespace detail {
inline void require_ordinal(int v, const char* name) {
    if (v < 1 || v > 5) throw Error(std::string(name) + " must be in 1..5 (got " + std::to_string(v) + ")");
}
} // namespace detail

inline int likelihood(int hazard, int response) {
    detail::require_ordinal(hazard, "hazard");
    detail::require_ordinal(response, "response");
    return std::clamp(hazard - response + 3, 1, 5);
}

inline int severity(int intensity, int sensitivity, int vulnerability) {
    detail::require_ordinal(intensity, "intensity");
    detail::require_ordinal(sensitivity, "sensitivity");
    detail::require_ordinal(vulnerability, "vulnerability");
    const int sum = intensity + sensitivity + vulnerability;
    return (2 * sum + 3) / 6; // floor(sum / 3 + 1/2)
}

inline RiskBand band_for(int magnitude) {
    if (magnitude <= 4) return RiskBand::Low;
    if (magnitude <= 9) return RiskBand::Moderate;
    if (magnitude <= 14) return RiskBand::High;
    return RiskBand::Critical;
}

inline MagnitudeResult magnitude(int likelihood, int severity) {
    detail::require_ordinal(likelihood, "likelihood");
    detail::require_ordinal(severity, "severity");
    const int m = likelihood * severity;
    return {likelihood, severity, m, band_for(m)};
}

inline MagnitudeResult assess_risk(const RiskAnnotation& a) {
    return magnitude(likelihood(a.hazard, a.response), severity(a.intensity, a.sensitivity, a.vulnerability));
}

} // namespace rightsrisk
