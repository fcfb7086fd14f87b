#include "core/ids.hpp"

#include <set>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace ctsim {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

void append_hex64(std::string& out, std::uint64_t v) {
    for (int shift = 60; shift >= 0; shift -= 4) {
        out.push_back(kHexDigits[(v >> shift) & 0xf]);
    }
}

std::optional<int> hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return std::nullopt;
}

} // namespace

std::string AnonymousId::hex() const {
    std::string out;
    out.reserve(32);
    append_hex64(out, hi);
    append_hex64(out, lo);
    return out;
}

std::optional<AnonymousId> AnonymousId::from_hex(std::string_view text) {
    if (text.size() != 32) return std::nullopt;
    AnonymousId id;
    for (std::size_t i = 0; i < 32; ++i) {
        const auto digit = hex_value(text[i]);
        if (!digit) return std::nullopt;
        auto& word = i < 16 ? id.hi : id.lo;
        word = (word << 4) | static_cast<std::uint64_t>(*digit);
    }
    return id;
}

std::vector<AnonymousId> generate_ids(std::uint64_t seed, std::size_t count) {
    std::vector<AnonymousId> ids;
    ids.reserve(count);
    std::set<AnonymousId> seen;
    for (std::size_t i = 0; i < count; ++i) {
        const AnonymousId id{rng::key(seed, rng::kStreamId, i, 0), rng::key(seed, rng::kStreamId, i, 1)};
        if (!seen.insert(id).second) {
            throw ConfigError("anonymous id collision for seed " + std::to_string(seed) +
                              "; choose a different seed");
        }
        ids.push_back(id);
    }
    return ids;
}

} // namespace ctsim
