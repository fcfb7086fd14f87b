#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ctsim {

/// Simulation clock: whole minutes since day 1, 00:00.
using Minutes = std::int64_t;

/// Opaque 128-bit device token, rendered as 32 lowercase hex characters.
/// Carries no personal or location data by construction.
struct AnonymousId {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    auto operator<=>(const AnonymousId&) const = default;

    std::string hex() const;
    static std::optional<AnonymousId> from_hex(std::string_view text);
};

/// Tokens for `count` devices, derived from the master seed. Throws
/// ConfigError on a collision (fatal for the scenario).
std::vector<AnonymousId> generate_ids(std::uint64_t seed, std::size_t count);

} // namespace ctsim
