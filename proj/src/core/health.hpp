#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace ctsim {

/// Three-state risk lattice with total order NotAtRisk < AtRisk < Infected.
/// A person's status only ever moves up.
enum class HealthStatus : int {
    NotAtRisk = 0,
    AtRisk = 1,
    Infected = 2,
};

inline std::string to_string(HealthStatus s) {
    switch (s) {
    case HealthStatus::NotAtRisk: return "not_at_risk";
    case HealthStatus::AtRisk: return "at_risk";
    case HealthStatus::Infected: return "infected";
    }
    return "not_at_risk";
}

inline std::optional<HealthStatus> health_status_from_string(std::string_view text) {
    if (text == "not_at_risk") return HealthStatus::NotAtRisk;
    if (text == "at_risk") return HealthStatus::AtRisk;
    if (text == "infected") return HealthStatus::Infected;
    return std::nullopt;
}

} // namespace ctsim
