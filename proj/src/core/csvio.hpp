#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/device.hpp"
#include "core/health.hpp"
#include "core/ids.hpp"
#include "core/mobility.hpp"
#include "core/tracing.hpp"

namespace ctsim {

// All CSVs here use fields that can never contain commas or quotes (hex
// tokens, numbers, fixed enum words), so no quoting layer is needed. Doubles
// are written in shortest round-trip form; parsing back is exact.

/// Symmetric first-contact matrix; diagonal always empty.
class ContactMatrix {
  public:
    ContactMatrix() = default;
    explicit ContactMatrix(std::size_t n) : n_(n), cells_(n * n) {}

    std::size_t size() const { return n_; }
    const std::optional<std::int64_t>& at(std::size_t i, std::size_t j) const {
        return cells_[i * n_ + j];
    }
    void record(std::size_t i, std::size_t j, std::int64_t step);

    bool operator==(const ContactMatrix&) const = default;

  private:
    std::size_t n_ = 0;
    std::vector<std::optional<std::int64_t>> cells_;
};

/// Matrix of earliest recorded contacts, mirroring what the devices saved.
ContactMatrix contact_matrix_from_events(std::span<const ContactEvent> events, std::size_t n);

// -- event log ---------------------------------------------------------

inline constexpr std::string_view kEventsHeader =
    "step,id_a,id_b,true_distance_m,walls,rssi_dbm,estimated_distance_m,recorded";

struct EventRow {
    std::int64_t step = 0;
    AnonymousId id_a;
    AnonymousId id_b;
    double true_distance_m = 0.0;
    int walls = 0;
    double rssi_dbm = 0.0;
    double estimated_distance_m = 0.0;
    bool recorded = false;

    bool operator==(const EventRow&) const = default;
};

std::string events_csv(std::span<const ContactEvent> events, std::span<const AnonymousId> ids);
std::vector<EventRow> parse_events_csv(std::string_view text);

// -- device contact-store dump -----------------------------------------

inline constexpr std::string_view kDeviceDumpHeader =
    "own_id,peer_id,first_contact_min,encounter_count";

struct DumpRow {
    AnonymousId own_id;
    AnonymousId peer_id;
    Minutes first_contact_min = 0;
    std::uint32_t encounter_count = 0;

    bool operator==(const DumpRow&) const = default;
};

std::string device_dump_csv(std::span<const DeviceState> devices);
std::vector<DumpRow> parse_device_dump_csv(std::string_view text);

// -- risk labeling ------------------------------------------------------

inline constexpr std::string_view kLabelingHeader = "id,status,acquisition_step";

struct LabelRow {
    AnonymousId id;
    HealthStatus status = HealthStatus::NotAtRisk;
    std::optional<std::int64_t> acquisition_step;

    bool operator==(const LabelRow&) const = default;
};

std::string labeling_csv(std::span<const RiskLabel> labels, std::span<const AnonymousId> ids);
std::vector<LabelRow> parse_labeling_csv(std::string_view text);

// -- registry snapshot (writer lives with the registry) ------------------

struct RegistryRow {
    AnonymousId id;
    HealthStatus status = HealthStatus::NotAtRisk;
    std::optional<Minutes> flagged_at_min;
    std::optional<std::string> flagged_by_hash;

    bool operator==(const RegistryRow&) const = default;
};

std::vector<RegistryRow> parse_registry_csv(std::string_view text);

// -- contact matrix ------------------------------------------------------

/// Header `id,<id_0>,...`; one row per id; cells are first-contact steps,
/// empty when the pair never had a recorded contact.
std::string contact_matrix_csv(const ContactMatrix& matrix, std::span<const AnonymousId> ids);
std::pair<std::vector<AnonymousId>, ContactMatrix> parse_contact_matrix_csv(std::string_view text);

} // namespace ctsim
