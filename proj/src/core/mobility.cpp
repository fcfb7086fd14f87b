#include "core/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/schedule.hpp"

namespace ctsim {
namespace {

Vec2 point_in_rect(const Rect& rect, std::uint64_t kx, std::uint64_t ky) {
    return Vec2{rect.x0 + rng::uniform01(kx) * rect.width(),
                rect.y0 + rng::uniform01(ky) * rect.height()};
}

std::size_t zone_for(const Scenario& scenario, std::size_t person, Minutes minute_of_day) {
    switch (segment_for_time(minute_of_day)) {
    case DaySegment::Work: return scenario.people[person].workplace_zone;
    case DaySegment::Community: return scenario.community_zone;
    case DaySegment::Residential: break;
    }
    return scenario.people[person].residence_zone;
}

} // namespace

Vec2 position_at(const Scenario& scenario, std::size_t person, std::int64_t global_step) {
    if (person >= scenario.people.size()) throw std::out_of_range("person index");
    const int spd = scenario.schedule.steps_per_day();
    const Minutes minute_of_day =
        (global_step % spd) * scenario.schedule.step_minutes;
    const Rect& rect = scenario.zones[zone_for(scenario, person, minute_of_day)].bounds;
    const auto step_u = static_cast<std::uint64_t>(global_step);
    return point_in_rect(rect,
                         rng::key(scenario.seed, rng::kStreamPlace, person, step_u, 0),
                         rng::key(scenario.seed, rng::kStreamPlace, person, step_u, 1));
}

Vec2 quarantine_anchor(const Scenario& scenario, std::size_t person) {
    if (person >= scenario.people.size()) throw std::out_of_range("person index");
    const Rect& rect = scenario.zones[scenario.people[person].residence_zone].bounds;
    return point_in_rect(rect, rng::key(scenario.seed, rng::kStreamAnchor, person, 0),
                         rng::key(scenario.seed, rng::kStreamAnchor, person, 1));
}

std::vector<Vec2> positions_at(const Scenario& scenario,
                               const std::vector<std::size_t>& quarantined,
                               std::int64_t global_step) {
    std::vector<Vec2> out(scenario.people.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const bool anchored = std::binary_search(quarantined.begin(), quarantined.end(), i);
        out[i] = anchored ? quarantine_anchor(scenario, i) : position_at(scenario, i, global_step);
    }
    return out;
}

DayResult simulate_day(const Scenario& scenario, int day,
                       const std::vector<std::size_t>& quarantined,
                       std::vector<DeviceState>& devices) {
    if (day < 1) throw std::invalid_argument("day is 1-based");
    if (devices.size() != scenario.people.size())
        throw InvariantError("device list does not match population");
    if (!std::is_sorted(quarantined.begin(), quarantined.end()))
        throw std::invalid_argument("quarantined indices must be sorted");

    // Active persons, ordered by token so the event log comes out sorted by
    // (step, id_a, id_b) without a post-pass.
    std::vector<std::size_t> active;
    active.reserve(scenario.people.size());
    for (std::size_t i = 0; i < scenario.people.size(); ++i)
        if (!std::binary_search(quarantined.begin(), quarantined.end(), i)) active.push_back(i);
    std::sort(active.begin(), active.end(), [&](std::size_t a, std::size_t b) {
        return scenario.ids[a] < scenario.ids[b];
    });

    const WallSet wall_set(scenario.zones);
    const RadioParams& radio = scenario.radio;
    const double d_limit = scenario.d_limit_m;
    const bool noiseless = radio.noise_sigma_db == 0.0;
    // With no noise and non-negative wall loss the estimate can only sit at or
    // above the true distance, so pairs beyond the limit (plus round-trip
    // slack) can be rejected on squared distance alone.
    const double gate = d_limit * (1.0 + 1e-9);
    const double gate2 = gate * gate;

    const int spd = scenario.schedule.steps_per_day();
    const std::int64_t first_step = static_cast<std::int64_t>(day - 1) * spd;

    DayResult result;
    std::vector<Vec2> pos(scenario.people.size());
    std::vector<std::size_t> zone_idx(scenario.people.size());
    std::vector<bool> interior(scenario.people.size());

    for (int s = 0; s < spd; ++s) {
        const std::int64_t step = first_step + s;
        const auto step_u = static_cast<std::uint64_t>(step);
        const Minutes minute_of_day = static_cast<Minutes>(s) * scenario.schedule.step_minutes;
        const Minutes now = step * scenario.schedule.step_minutes;

        for (std::size_t i : active) {
            const std::size_t z = zone_for(scenario, i, minute_of_day);
            const Rect& rect = scenario.zones[z].bounds;
            pos[i] = point_in_rect(rect,
                                   rng::key(scenario.seed, rng::kStreamPlace, i, step_u, 0),
                                   rng::key(scenario.seed, rng::kStreamPlace, i, step_u, 1));
            zone_idx[i] = z;
            interior[i] = rect.strictly_contains(pos[i]);
        }

        result.pair_checks += pair_count(active.size());

        for (std::size_t ai = 0; ai < active.size(); ++ai) {
            const std::size_t i = active[ai];
            for (std::size_t bi = ai + 1; bi < active.size(); ++bi) {
                const std::size_t j = active[bi];
                const double dx = pos[i].x - pos[j].x;
                const double dy = pos[i].y - pos[j].y;
                const double d2 = dx * dx + dy * dy;
                if (noiseless && d2 > gate2) continue;

                const double true_d = std::sqrt(d2);
                int walls = 0;
                if (!(zone_idx[i] == zone_idx[j] && interior[i] && interior[j]))
                    walls = wall_set.crossings(pos[i], pos[j]);

                double noise = 0.0;
                if (!noiseless)
                    noise = radio.noise_sigma_db *
                            rng::normal01(rng::key(scenario.seed, rng::kStreamNoise, step_u,
                                                   i, j));
                const double rssi = rssi_from_distance(true_d, walls, radio, noise);
                const double est = distance_from_rssi(rssi, radio);
                const bool risky = est < d_limit;
                if (risky) {
                    devices[i].on_beacon(scenario.ids[j], rssi, now, radio);
                    devices[j].on_beacon(scenario.ids[i], rssi, now, radio);
                }
                if (risky || true_d < d_limit) {
                    ContactEvent event;
                    event.step = step;
                    event.a = static_cast<std::uint32_t>(i);
                    event.b = static_cast<std::uint32_t>(j);
                    event.true_distance_m = true_d;
                    event.walls = walls;
                    event.rssi_dbm = rssi;
                    event.estimated_distance_m = est;
                    event.recorded = risky;
                    result.events.push_back(event);
                }
            }
        }
    }
    return result;
}

} // namespace ctsim
