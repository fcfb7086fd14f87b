#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "core/csvio.hpp"
#include "core/device.hpp"
#include "core/mobility.hpp"
#include "core/registry.hpp"
#include "core/scenario.hpp"
#include "core/tracing.hpp"

namespace ctsim {

struct DayStats {
    int day = 0;
    std::uint64_t pair_checks = 0;
    std::uint64_t events_logged = 0;
    std::uint64_t events_recorded = 0;

    bool operator==(const DayStats&) const = default;
};

/// Day-2 outcome of one quarantine policy applied after Day-1 labeling.
struct PolicyOutcome {
    std::string name;
    std::vector<std::size_t> quarantined;  // person indices, sorted
    std::vector<ContactEvent> day2_events; // under this policy
    std::vector<RiskLabel> labels;         // over day-1 plus policy day-2
    std::size_t new_at_risk = 0;           // NotAtRisk after day-1, AtRisk now
};

struct ExperimentReport {
    std::string scenario_hash;
    std::vector<DayStats> days;
    std::vector<ContactEvent> events; // all simulated days, ordered
    std::vector<RiskLabel> labels;
    ContactMatrix matrix;
    std::vector<DeviceState> devices;
    Registry registry{std::vector<std::string>{"authority"}};
    std::vector<PolicyOutcome> policies; // filled by case studies only
};

/// Person indices a policy quarantines, given the labels the previous day
/// produced. Top-at-risk picks by earliest acquisition, ties by token.
std::vector<std::size_t> policy_quarantine_set(const QuarantinePolicy& policy,
                                               const Scenario& scenario,
                                               std::span<const RiskLabel> labels);

/// What one flagged person uploads: peers from recorded events no earlier
/// than their own exposure, deduplicated and sorted. Pre-exposure contacts
/// stay out; they could not have been infected through this person.
std::vector<AnonymousId> exposure_upload_list(std::size_t person,
                                              std::span<const ContactEvent> events,
                                              std::span<const RiskLabel> labels,
                                              std::span<const AnonymousId> ids);

/// Flags seeds, then lets every flagged person upload their filtered
/// contacts, repeating until no status changes. Converges to the tracing
/// labels regardless of the per-round order.
void drive_registry(Registry& registry, const Scenario& scenario,
                    std::span<const ContactEvent> events, std::span<const RiskLabel> labels,
                    Minutes upload_time);

/// Full pipeline: simulate all configured days, derive labels, feed the
/// registry, build the contact matrix.
ExperimentReport run_experiment(const Scenario& scenario);

/// Day-1 plus the configured day-2 policies. Requires days >= 2 and a
/// non-empty case_study section.
ExperimentReport run_case_study(const Scenario& scenario);

/// The day-2 comparison on its own, for sweeps and tests.
std::vector<PolicyOutcome> compare_policies(const Scenario& scenario,
                                            std::span<const QuarantinePolicy> policies);

/// Deterministic JSON summary (status counts, per-day stats, policy table).
std::string report_json(const ExperimentReport& report, const Scenario& scenario);

/// Writes every report artifact into out_dir (created if absent):
/// events.csv, devices.csv, registry.csv, labeling.csv, contact_matrix.csv,
/// contact_matrix.svg, snapshots.svg, report.json, and per-policy day-2
/// logs when policies ran.
void write_report_files(const ExperimentReport& report, const Scenario& scenario,
                        const std::filesystem::path& out_dir);

} // namespace ctsim
