#include "core/device.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "core/errors.hpp"

namespace ctsim {

DeviceState::DeviceState(AnonymousId own_id, double d_limit_m)
    : own_id_(own_id), d_limit_m_(d_limit_m) {
    if (!(d_limit_m > 0.0)) throw std::invalid_argument("d_limit must be > 0");
}

bool DeviceState::on_beacon(const AnonymousId& peer, double rssi_dbm, Minutes now,
                            const RadioParams& params) {
    if (peer == own_id_) {
        throw InvariantError("device " + own_id_.hex() + " received its own beacon");
    }
    const double estimated = distance_from_rssi(rssi_dbm, params);
    if (!(estimated < d_limit_m_)) return false;

    const auto it = contacts_.find(peer);
    if (it == contacts_.end()) {
        contacts_.emplace(peer, ContactRecord{peer, now, 1, now});
    } else if (now - it->second.last_counted >= kRecontactIntervalMin) {
        ++it->second.encounter_count;
        it->second.last_counted = now;
    }
    return true;
}

std::vector<ContactRecord> DeviceState::export_contacts() const {
    std::vector<ContactRecord> out;
    out.reserve(contacts_.size());
    for (const auto& [peer, record] : contacts_) out.push_back(record);
    std::sort(out.begin(), out.end(), [](const ContactRecord& a, const ContactRecord& b) {
        return std::tie(a.first_contact, a.peer) < std::tie(b.first_contact, b.peer);
    });
    return out;
}

} // namespace ctsim
