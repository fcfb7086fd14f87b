#include "core/registry.hpp"

#include <algorithm>
#include <fstream>

#include "core/errors.hpp"

namespace ctsim {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

} // namespace

std::string authority_hash(const std::string& token) {
    // FNV-1a 64. Snapshots need a stable, printable token digest, nothing
    // cryptographic.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : token) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kHexDigits[h & 0xf];
        h >>= 4;
    }
    return out;
}

Registry::Registry(std::vector<std::string> authority_tokens)
    : tokens_(authority_tokens.begin(), authority_tokens.end()) {}

void Registry::require_authorized(const std::string& token) const {
    if (!tokens_.contains(token)) {
        throw AuthError("authority token not recognized");
    }
}

void Registry::flag_infected(const AnonymousId& id, const std::string& token, Minutes now) {
    require_authorized(token);
    auto& entry = entries_.try_emplace(id, RegistryEntry{id, HealthStatus::NotAtRisk, {}, {}}).first->second;
    if (entry.status == HealthStatus::Infected) return;
    entry.status = HealthStatus::Infected;
    entry.flagged_at = now;
    entry.flagged_by = authority_hash(token);
}

std::vector<AnonymousId> Registry::upload_contacts(const AnonymousId& source,
                                                   std::span<const AnonymousId> contacts,
                                                   const std::string& token, Minutes now) {
    require_authorized(token);
    if (query_status(source) == HealthStatus::NotAtRisk) {
        throw PreconditionError("upload refused: source " + source.hex() + " is not flagged");
    }
    std::vector<AnonymousId> newly;
    for (const AnonymousId& contact : contacts) {
        auto& entry =
            entries_.try_emplace(contact, RegistryEntry{contact, HealthStatus::NotAtRisk, {}, {}})
                .first->second;
        if (entry.status != HealthStatus::NotAtRisk) continue;
        entry.status = HealthStatus::AtRisk;
        entry.flagged_at = now;
        entry.flagged_by = authority_hash(token);
        newly.push_back(contact);
    }
    std::sort(newly.begin(), newly.end());
    return newly;
}

HealthStatus Registry::query_status(const AnonymousId& id) const {
    const auto it = entries_.find(id);
    return it == entries_.end() ? HealthStatus::NotAtRisk : it->second.status;
}

std::optional<RegistryEntry> Registry::entry(const AnonymousId& id) const {
    const auto it = entries_.find(id);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::vector<RegistryEntry> Registry::entries() const {
    std::vector<RegistryEntry> out;
    out.reserve(entries_.size());
    for (const auto& [id, entry] : entries_) out.push_back(entry);
    return out;
}

std::string Registry::snapshot_csv() const {
    std::string out = "id,status,flagged_at_min,flagged_by_hash\n";
    for (const auto& [id, entry] : entries_) {
        out += id.hex();
        out += ',';
        out += to_string(entry.status);
        out += ',';
        if (entry.flagged_at) out += std::to_string(*entry.flagged_at);
        out += ',';
        if (entry.flagged_by) out += *entry.flagged_by;
        out += '\n';
    }
    return out;
}

void Registry::write_snapshot(const std::filesystem::path& path) const {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path.string() + " for writing");
    file << snapshot_csv();
    if (!file) throw IoError("write failed: " + path.string());
}

} // namespace ctsim
