#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "core/ids.hpp"
#include "core/radio.hpp"

namespace ctsim {

/// Repeat encounters with the same peer within this window count as one.
inline constexpr Minutes kRecontactIntervalMin = 30;

/// A deduplicated stored encounter. `first_contact` is fixed at creation;
/// `encounter_count` only grows. `last_counted` is the debounce cursor for
/// the re-contact window.
struct ContactRecord {
    AnonymousId peer;
    Minutes first_contact = 0;
    std::uint32_t encounter_count = 0;
    Minutes last_counted = 0;

    bool operator==(const ContactRecord&) const = default;
};

/// One wearable's state: an immutable own token (ROM role) and the
/// persistent peer store (NVM role). Deliberately holds no name, location,
/// or trajectory fields. Each instance is owned by one simulation actor at
/// a time; values copy freely across threads.
class DeviceState {
  public:
    DeviceState() = default;
    explicit DeviceState(AnonymousId own_id, double d_limit_m = 1.83);

    /// Handles one received beacon at time `now`: estimates the peer's
    /// distance from `rssi_dbm` and, strictly below the critical limit,
    /// stores the peer if new or bumps its encounter count outside the
    /// re-contact window. Returns whether the contact was risky (recorded).
    /// A beacon from our own id throws InvariantError; that is a simulation
    /// wiring bug, not an input condition.
    bool on_beacon(const AnonymousId& peer, double rssi_dbm, Minutes now,
                   const RadioParams& params);

    /// Read-only dump of the store, sorted by first contact then peer token.
    std::vector<ContactRecord> export_contacts() const;

    const AnonymousId& own_id() const { return own_id_; }
    double d_limit_m() const { return d_limit_m_; }
    std::size_t contact_count() const { return contacts_.size(); }

    bool operator==(const DeviceState&) const = default;

  private:
    AnonymousId own_id_;
    double d_limit_m_ = 1.83;
    std::map<AnonymousId, ContactRecord> contacts_;
};

} // namespace ctsim
