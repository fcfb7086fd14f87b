#pragma once

#include <cstdint>
#include <vector>

#include "core/device.hpp"
#include "core/geometry.hpp"
#include "core/scenario.hpp"

namespace ctsim {

/// Unordered pairs among n entities.
constexpr std::uint64_t pair_count(std::uint64_t n) { return n * (n - 1) / 2; }

/// One proximity check that came close enough to matter. `a` and `b` are
/// person indices with ids[a] < ids[b]. `recorded` mirrors what the two
/// devices stored: the estimate, not the true distance, is what they act on.
struct ContactEvent {
    std::int64_t step = 0; // global step index, day 1 step 0 == 0
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    double true_distance_m = 0.0;
    int walls = 0;
    double rssi_dbm = 0.0;
    double estimated_distance_m = 0.0;
    bool recorded = false;

    bool operator==(const ContactEvent&) const = default;
};

struct DayResult {
    std::vector<ContactEvent> events; // sorted by (step, id_a, id_b)
    std::uint64_t pair_checks = 0;    // sum over steps of pair_count(active)
};

/// Where a free (non-quarantined) person teleports for a given step:
/// uniform in the zone their schedule segment assigns them.
Vec2 position_at(const Scenario& scenario, std::size_t person, std::int64_t global_step);

/// Fixed in-residence point a quarantined person occupies all day.
Vec2 quarantine_anchor(const Scenario& scenario, std::size_t person);

/// Positions of the whole population at one step, quarantine applied.
/// `quarantined` must be sorted.
std::vector<Vec2> positions_at(const Scenario& scenario,
                               const std::vector<std::size_t>& quarantined,
                               std::int64_t global_step);

/// Runs one day (1-based) of the mobility and proximity loop, feeding every
/// close pass through the radio channel into both devices. Quarantined
/// persons sit at their anchor and take part in no pair checks, so per step
/// exactly pair_count(#active) distances are evaluated. `devices` must hold
/// one entry per person; `quarantined` must be sorted.
DayResult simulate_day(const Scenario& scenario, int day,
                       const std::vector<std::size_t>& quarantined,
                       std::vector<DeviceState>& devices);

} // namespace ctsim
