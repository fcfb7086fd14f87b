#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "core/geometry.hpp"
#include "core/health.hpp"
#include "core/ids.hpp"
#include "core/radio.hpp"
#include "core/schedule.hpp"

namespace ctsim {

struct PersonSpec {
    std::size_t residence_zone = 0;
    std::size_t workplace_zone = 0;
    HealthStatus initial_status = HealthStatus::NotAtRisk;

    bool operator==(const PersonSpec&) const = default;
};

/// A named day-2 quarantine rule for case studies. The quarantine set is
/// the union of the parts: everyone infected, the first `top_at_risk`
/// at-risk people ordered by (acquisition step, id), all at-risk people if
/// `all_at_risk`, plus any explicitly listed person indices.
struct QuarantinePolicy {
    std::string name;
    bool infected = true;
    int top_at_risk = 0;
    bool all_at_risk = false;
    std::vector<std::size_t> extra_indices;

    bool operator==(const QuarantinePolicy&) const = default;
};

/// Fully resolved simulation configuration. Everything downstream is a pure
/// function of this value; two equal scenarios produce byte-identical runs.
struct Scenario {
    std::uint64_t seed = 1;
    int days = 1;
    double d_limit_m = 1.83;
    Schedule schedule;
    RadioParams radio;
    std::vector<Zone> zones;
    std::vector<PersonSpec> people;
    std::vector<AnonymousId> ids; // one per person, derived from seed
    std::vector<std::vector<std::size_t>> quarantine_by_day; // [day-1] -> person indices
    std::vector<std::string> authority_tokens;
    std::vector<QuarantinePolicy> case_study; // empty unless configured
    std::size_t community_zone = 0;           // resolved; meaningful when people exist

    std::size_t population() const { return people.size(); }
    std::vector<std::size_t> infected_indices() const;
    const std::vector<std::size_t>& quarantined_on(int day) const;

    /// Consistency checks on an already-built value (unique ids, zone kinds
    /// match assignments, rects well-formed...). Throws ConfigError.
    void validate() const;
};

/// Parses and validates a scenario. Parse failures report file:line:column;
/// validation failures report the JSON path. `seed_override` replaces the
/// config seed before ids and initial statuses are derived.
Scenario load_scenario_file(const std::filesystem::path& path,
                            std::optional<std::uint64_t> seed_override = std::nullopt);
Scenario scenario_from_json_text(std::string_view text, const std::string& source_name,
                                 std::optional<std::uint64_t> seed_override = std::nullopt);

/// 16-hex digest of the resolved scenario. Insensitive to config whitespace
/// and key order; sensitive to every semantically meaningful field.
std::string scenario_hash(const Scenario& scenario);

} // namespace ctsim
