#include "core/experiment.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/schedule.hpp"
#include "core/svg.hpp"
#include "core/util.hpp"

namespace ctsim {
namespace {

std::vector<DeviceState> make_devices(const Scenario& scenario) {
    std::vector<DeviceState> devices;
    devices.reserve(scenario.people.size());
    for (const AnonymousId& id : scenario.ids)
        devices.emplace_back(id, scenario.d_limit_m);
    return devices;
}

std::vector<RiskLabel> labels_over(const Scenario& scenario,
                                   std::span<const ContactEvent> events) {
    const auto edges = edges_from_events(events);
    const auto seeds = scenario.infected_indices();
    return propagate_risk(scenario.people.size(), edges, seeds);
}

DayStats stats_for(int day, const DayResult& result) {
    DayStats stats;
    stats.day = day;
    stats.pair_checks = result.pair_checks;
    stats.events_logged = result.events.size();
    stats.events_recorded = static_cast<std::uint64_t>(
        std::count_if(result.events.begin(), result.events.end(),
                      [](const ContactEvent& e) { return e.recorded; }));
    return stats;
}

std::string file_safe(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    for (char c : name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '-' || c == '_';
        out.push_back(ok ? c : '-');
    }
    return out;
}

std::vector<std::int64_t> snapshot_steps(const Scenario& scenario) {
    // A handful of representative moments per day: night, work start, midday,
    // community time, evening. Clamped to existing steps and deduplicated.
    static constexpr Minutes kSnapMinutes[] = {0, 480, 720, 1020, 1110, 1260};
    const int spd = scenario.schedule.steps_per_day();
    std::vector<int> days = {1};
    if (scenario.days > 1) days.push_back(scenario.days);
    std::set<std::int64_t> steps;
    for (int day : days)
        for (Minutes minute : kSnapMinutes)
            steps.insert(static_cast<std::int64_t>(day - 1) * spd +
                         minute / scenario.schedule.step_minutes);
    return {steps.begin(), steps.end()};
}

} // namespace

std::vector<std::size_t> policy_quarantine_set(const QuarantinePolicy& policy,
                                               const Scenario& scenario,
                                               std::span<const RiskLabel> labels) {
    if (labels.size() != scenario.people.size())
        throw InvariantError("label list does not match population");
    std::set<std::size_t> out(policy.extra_indices.begin(), policy.extra_indices.end());
    for (std::size_t idx : policy.extra_indices)
        if (idx >= scenario.people.size())
            throw ConfigError("policy \"" + policy.name + "\": person index out of range");

    std::vector<std::size_t> at_risk;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].status == HealthStatus::Infected && policy.infected) out.insert(i);
        if (labels[i].status == HealthStatus::AtRisk) at_risk.push_back(i);
    }
    if (policy.all_at_risk) {
        out.insert(at_risk.begin(), at_risk.end());
    } else if (policy.top_at_risk > 0) {
        std::sort(at_risk.begin(), at_risk.end(), [&](std::size_t a, std::size_t b) {
            const auto sa = labels[a].acquisition_step.value_or(0);
            const auto sb = labels[b].acquisition_step.value_or(0);
            if (sa != sb) return sa < sb;
            return scenario.ids[a] < scenario.ids[b];
        });
        const std::size_t take =
            std::min(at_risk.size(), static_cast<std::size_t>(policy.top_at_risk));
        out.insert(at_risk.begin(), at_risk.begin() + static_cast<std::ptrdiff_t>(take));
    }
    return {out.begin(), out.end()};
}

std::vector<AnonymousId> exposure_upload_list(std::size_t person,
                                              std::span<const ContactEvent> events,
                                              std::span<const RiskLabel> labels,
                                              std::span<const AnonymousId> ids) {
    if (person >= labels.size()) throw std::out_of_range("person index");
    if (labels[person].status == HealthStatus::NotAtRisk) return {};
    const std::int64_t since = labels[person].acquisition_step.value_or(0);
    std::set<AnonymousId> peers;
    for (const ContactEvent& event : events) {
        if (!event.recorded || event.step < since) continue;
        if (event.a == person) peers.insert(ids[event.b]);
        if (event.b == person) peers.insert(ids[event.a]);
    }
    return {peers.begin(), peers.end()};
}

void drive_registry(Registry& registry, const Scenario& scenario,
                    std::span<const ContactEvent> events, std::span<const RiskLabel> labels,
                    Minutes upload_time) {
    const std::string& token = scenario.authority_tokens.front();
    std::vector<bool> uploaded(scenario.people.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t p = 0; p < scenario.people.size(); ++p) {
            if (uploaded[p]) continue;
            if (registry.query_status(scenario.ids[p]) == HealthStatus::NotAtRisk) continue;
            registry.upload_contacts(scenario.ids[p],
                                     exposure_upload_list(p, events, labels, scenario.ids),
                                     token, upload_time);
            uploaded[p] = true;
            changed = true;
        }
    }
}

ExperimentReport run_experiment(const Scenario& scenario) {
    ExperimentReport report;
    report.scenario_hash = scenario_hash(scenario);
    report.devices = make_devices(scenario);
    report.registry = Registry(scenario.authority_tokens);

    const std::string& token = scenario.authority_tokens.front();
    for (std::size_t seed_person : scenario.infected_indices())
        report.registry.flag_infected(scenario.ids[seed_person], token, 0);

    for (int day = 1; day <= scenario.days; ++day) {
        DayResult result = simulate_day(scenario, day, scenario.quarantined_on(day),
                                        report.devices);
        report.days.push_back(stats_for(day, result));
        report.events.insert(report.events.end(), result.events.begin(), result.events.end());
    }

    report.labels = labels_over(scenario, report.events);
    report.matrix = contact_matrix_from_events(report.events, scenario.people.size());

    const Minutes end_of_study =
        static_cast<Minutes>(scenario.days) * kMinutesPerDay;
    drive_registry(report.registry, scenario, report.events, report.labels, end_of_study);
    return report;
}

std::vector<PolicyOutcome> compare_policies(const Scenario& scenario,
                                            std::span<const QuarantinePolicy> policies) {
    if (scenario.days < 2)
        throw ConfigError("policy comparison needs at least two configured days");

    std::vector<DeviceState> day1_devices = make_devices(scenario);
    DayResult day1 = simulate_day(scenario, 1, scenario.quarantined_on(1), day1_devices);
    const std::vector<RiskLabel> day1_labels = labels_over(scenario, day1.events);

    std::vector<PolicyOutcome> outcomes;
    outcomes.reserve(policies.size());
    for (const QuarantinePolicy& policy : policies) {
        PolicyOutcome outcome;
        outcome.name = policy.name;
        outcome.quarantined = policy_quarantine_set(policy, scenario, day1_labels);

        std::vector<DeviceState> devices = day1_devices;
        DayResult day2 = simulate_day(scenario, 2, outcome.quarantined, devices);
        outcome.day2_events = std::move(day2.events);

        std::vector<ContactEvent> combined = day1.events;
        combined.insert(combined.end(), outcome.day2_events.begin(), outcome.day2_events.end());
        outcome.labels = labels_over(scenario, combined);

        for (std::size_t i = 0; i < outcome.labels.size(); ++i)
            if (outcome.labels[i].status == HealthStatus::AtRisk &&
                day1_labels[i].status == HealthStatus::NotAtRisk)
                ++outcome.new_at_risk;
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

ExperimentReport run_case_study(const Scenario& scenario) {
    if (scenario.case_study.empty())
        throw ConfigError("config has no case_study section");
    if (scenario.days < 2) throw ConfigError("case study needs days >= 2");

    ExperimentReport report;
    report.scenario_hash = scenario_hash(scenario);
    report.devices = make_devices(scenario);
    report.registry = Registry(scenario.authority_tokens);

    DayResult day1 = simulate_day(scenario, 1, scenario.quarantined_on(1), report.devices);
    report.days.push_back(stats_for(1, day1));
    report.events = day1.events;
    report.labels = labels_over(scenario, report.events);
    report.matrix = contact_matrix_from_events(report.events, scenario.people.size());

    const std::string& token = scenario.authority_tokens.front();
    for (std::size_t seed_person : scenario.infected_indices())
        report.registry.flag_infected(scenario.ids[seed_person], token, 0);
    drive_registry(report.registry, scenario, report.events, report.labels, kMinutesPerDay);

    report.policies = compare_policies(scenario, scenario.case_study);
    return report;
}

std::string report_json(const ExperimentReport& report, const Scenario& scenario) {
    using nlohmann::json;
    json doc;
    doc["schema"] = 1;
    doc["scenario_hash"] = report.scenario_hash;
    doc["seed"] = scenario.seed;
    doc["population"] = scenario.people.size();

    json days = json::array();
    for (const DayStats& stats : report.days)
        days.push_back({{"day", stats.day},
                        {"pair_checks", stats.pair_checks},
                        {"events_logged", stats.events_logged},
                        {"events_recorded", stats.events_recorded}});
    doc["days"] = std::move(days);

    std::map<std::string, int> counts{{"not_at_risk", 0}, {"at_risk", 0}, {"infected", 0}};
    for (const RiskLabel& label : report.labels) ++counts[to_string(label.status)];
    doc["status_counts"] = counts;

    if (!report.policies.empty()) {
        json policies = json::array();
        for (const PolicyOutcome& outcome : report.policies) {
            json ids = json::array();
            for (std::size_t idx : outcome.quarantined) ids.push_back(scenario.ids[idx].hex());
            policies.push_back({{"name", outcome.name},
                                {"quarantined", std::move(ids)},
                                {"day2_recorded_events",
                                 std::count_if(outcome.day2_events.begin(),
                                               outcome.day2_events.end(),
                                               [](const ContactEvent& e) { return e.recorded; })},
                                {"new_at_risk_day2", outcome.new_at_risk}});
        }
        doc["policies"] = std::move(policies);
    }
    return doc.dump(2) + "\n";
}

void write_report_files(const ExperimentReport& report, const Scenario& scenario,
                        const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    write_text_file(out_dir / "events.csv", events_csv(report.events, scenario.ids));
    write_text_file(out_dir / "devices.csv", device_dump_csv(report.devices));
    report.registry.write_snapshot(out_dir / "registry.csv");
    write_text_file(out_dir / "labeling.csv", labeling_csv(report.labels, scenario.ids));
    write_text_file(out_dir / "contact_matrix.csv",
                    contact_matrix_csv(report.matrix, scenario.ids));
    write_text_file(out_dir / "contact_matrix.svg",
                    contact_matrix_svg(report.matrix, scenario.ids));
    write_text_file(out_dir / "snapshots.svg",
                    snapshots_svg(scenario, scenario.quarantined_on(1), snapshot_steps(scenario),
                                  report.labels));
    write_text_file(out_dir / "report.json", report_json(report, scenario));

    for (const PolicyOutcome& outcome : report.policies) {
        const std::string suffix = file_safe(outcome.name);
        write_text_file(out_dir / ("events_day2_" + suffix + ".csv"),
                        events_csv(outcome.day2_events, scenario.ids));
        write_text_file(out_dir / ("labeling_" + suffix + ".csv"),
                        labeling_csv(outcome.labels, scenario.ids));
    }
}

} // namespace ctsim
