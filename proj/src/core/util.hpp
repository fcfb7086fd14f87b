#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "core/ids.hpp"

namespace ctsim {

/// FNV-1a 64 rendered as 16 lowercase hex characters.
std::string fnv1a_hex(std::string_view text);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

std::optional<double> parse_double(std::string_view text);
std::optional<std::int64_t> parse_int64(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// "HH:MM" label for a minute-of-day value.
std::string minutes_to_hhmm(Minutes minute_of_day);

} // namespace ctsim
