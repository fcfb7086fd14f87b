#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "core/health.hpp"
#include "core/ids.hpp"

namespace ctsim {

struct RegistryEntry {
    AnonymousId id;
    HealthStatus status = HealthStatus::NotAtRisk;
    std::optional<Minutes> flagged_at;
    std::optional<std::string> flagged_by;

    bool operator==(const RegistryEntry&) const = default;
};

/// Stable 16-hex digest of a bearer token; what snapshots record instead of
/// the secret itself.
std::string authority_hash(const std::string& token);

/// Central status database. Statuses are monotone non-decreasing and every
/// change carries the acting authority and time. Mutations must be
/// serialized by the caller; concurrent reads are fine.
class Registry {
  public:
    explicit Registry(std::vector<std::string> authority_tokens);

    /// Marks `id` infected, creating the entry if needed. The first flag
    /// wins: re-flagging an infected id changes nothing. Throws AuthError
    /// for tokens outside the configured set.
    void flag_infected(const AnonymousId& id, const std::string& token, Minutes now);

    /// Marks every listed contact currently NotAtRisk as AtRisk and returns
    /// the newly marked ids, sorted. The source must already be flagged
    /// (AtRisk or Infected); tracing an unflagged device is refused with
    /// PreconditionError.
    std::vector<AnonymousId> upload_contacts(const AnonymousId& source,
                                             std::span<const AnonymousId> contacts,
                                             const std::string& token, Minutes now);

    /// Public, unauthenticated read. Unknown ids are NotAtRisk.
    HealthStatus query_status(const AnonymousId& id) const;

    std::optional<RegistryEntry> entry(const AnonymousId& id) const;

    /// All entries, sorted by id.
    std::vector<RegistryEntry> entries() const;

    /// Snapshot, one line per id: `id,status,flagged_at_min,flagged_by_hash`.
    std::string snapshot_csv() const;
    void write_snapshot(const std::filesystem::path& path) const;

    bool operator==(const Registry&) const = default;

  private:
    void require_authorized(const std::string& token) const;

    std::set<std::string> tokens_;
    std::map<AnonymousId, RegistryEntry> entries_;
};

} // namespace ctsim
