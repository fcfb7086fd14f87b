#pragma once

#include "core/ids.hpp"

namespace ctsim {

inline constexpr Minutes kMinutesPerDay = 1440;
inline constexpr Minutes kWorkStartMin = 8 * 60;       // 08:00
inline constexpr Minutes kWorkEndMin = 17 * 60;        // 17:00
inline constexpr Minutes kCommunityEndMin = 20 * 60;   // 20:00

/// The three daily segments. Work [08:00,17:00), community [17:00,20:00),
/// residential [20:00,08:00); half-open, partitioning the day exactly.
enum class DaySegment { Work, Community, Residential };

struct Schedule {
    int step_minutes = 5;
    bool operator==(const Schedule&) const = default;

    int steps_per_day() const { return static_cast<int>(kMinutesPerDay) / step_minutes; }
};

inline DaySegment segment_for_time(Minutes minute_of_day) {
    if (minute_of_day >= kWorkStartMin && minute_of_day < kWorkEndMin) return DaySegment::Work;
    if (minute_of_day >= kWorkEndMin && minute_of_day < kCommunityEndMin)
        return DaySegment::Community;
    return DaySegment::Residential;
}

} // namespace ctsim
