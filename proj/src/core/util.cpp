#include "core/util.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"
#include "core/schedule.hpp"

namespace ctsim {

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

std::string format_double(double value) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

std::optional<double> parse_double(std::string_view text) {
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::optional<std::int64_t> parse_int64(std::string_view text) {
    std::int64_t value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << file.rdbuf();
    if (file.bad()) throw IoError("read failed: " + path.string());
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path.string() + " for writing");
    file.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!file) throw IoError("write failed: " + path.string());
}

std::string minutes_to_hhmm(Minutes minute_of_day) {
    const auto m = ((minute_of_day % kMinutesPerDay) + kMinutesPerDay) % kMinutesPerDay;
    char buf[6];
    std::snprintf(buf, sizeof(buf), "%02d:%02d", static_cast<int>(m / 60),
                  static_cast<int>(m % 60));
    return buf;
}

} // namespace ctsim
