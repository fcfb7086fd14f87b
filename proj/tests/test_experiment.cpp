#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/util.hpp"

using namespace ctsim;
namespace fs = std::filesystem;

namespace {

Scenario default_scenario() {
    return load_scenario_file(std::string(CTSIM_CONFIG_DIR) + "/default_10p.json");
}

Scenario chain_scenario() {
    // Three explicit people; person 0 starts infected. Events are injected by
    // hand, so zone geometry is irrelevant here.
    return scenario_from_json_text(R"({
      "schema": 1, "seed": 21,
      "zones": [
        {"kind": "work", "rect": [0, 0, 10, 10]},
        {"kind": "community", "rect": [12, 0, 22, 10]},
        {"kind": "residential", "rect": [24, 0, 30, 6]}
      ],
      "people": [
        {"residence": 2, "workplace": 0, "status": "infected"},
        {"residence": 2, "workplace": 0},
        {"residence": 2, "workplace": 0}
      ]
    })", "cfg");
}

ContactEvent recorded_event(std::uint32_t a, std::uint32_t b, std::int64_t step) {
    ContactEvent e;
    e.a = a;
    e.b = b;
    e.step = step;
    e.recorded = true;
    return e;
}

} // namespace

TEST_CASE("the full pipeline replays identically") {
    const Scenario s = default_scenario();
    const ExperimentReport a = run_experiment(s);
    const ExperimentReport b = run_experiment(s);
    CHECK(a.scenario_hash == b.scenario_hash);
    CHECK(a.events == b.events);
    CHECK(a.labels == b.labels);
    CHECK(a.devices == b.devices);
    CHECK(a.registry.snapshot_csv() == b.registry.snapshot_csv());
    CHECK(report_json(a, s) == report_json(b, s));
}

TEST_CASE("per-day stats add up") {
    const Scenario s = default_scenario();
    const ExperimentReport report = run_experiment(s);
    REQUIRE(report.days.size() == 2);
    std::uint64_t logged = 0;
    for (const DayStats& stats : report.days) {
        CHECK(stats.pair_checks == 288 * pair_count(10));
        CHECK(stats.events_recorded <= stats.events_logged);
        logged += stats.events_logged;
    }
    CHECK(report.days[0].day == 1);
    CHECK(report.days[1].day == 2);
    CHECK(logged == report.events.size());
    CHECK(logged > 0);
}

TEST_CASE("registry ends up agreeing with the traced labels") {
    const Scenario s = default_scenario();
    const ExperimentReport report = run_experiment(s);
    bool saw_at_risk = false;
    for (std::size_t i = 0; i < s.population(); ++i) {
        CHECK(report.registry.query_status(s.ids[i]) == report.labels[i].status);
        saw_at_risk = saw_at_risk || report.labels[i].status == HealthStatus::AtRisk;
    }
    CHECK(saw_at_risk);
}

TEST_CASE("uploads exclude contacts from before the exposure") {
    const Scenario s = chain_scenario();
    // 1 met 2 at step 2, then caught risk from 0 at step 3.
    const std::vector<ContactEvent> events{recorded_event(1, 2, 2), recorded_event(0, 1, 3)};
    const auto labels = propagate_risk(3, edges_from_events(events), s.infected_indices());
    REQUIRE(labels[1].status == HealthStatus::AtRisk);
    REQUIRE(labels[2].status == HealthStatus::NotAtRisk);

    const auto from_seed = exposure_upload_list(0, events, labels, s.ids);
    CHECK(from_seed == std::vector<AnonymousId>{s.ids[1]});
    const auto from_exposed = exposure_upload_list(1, events, labels, s.ids);
    CHECK(from_exposed == std::vector<AnonymousId>{s.ids[0]}); // not ids[2]
    CHECK(exposure_upload_list(2, events, labels, s.ids).empty());

    Registry registry(s.authority_tokens);
    registry.flag_infected(s.ids[0], s.authority_tokens.front(), 0);
    drive_registry(registry, s, events, labels, 1440);
    CHECK(registry.query_status(s.ids[0]) == HealthStatus::Infected);
    CHECK(registry.query_status(s.ids[1]) == HealthStatus::AtRisk);
    CHECK(registry.query_status(s.ids[2]) == HealthStatus::NotAtRisk);
}

TEST_CASE("registry convergence spans same-step chains") {
    const Scenario s = scenario_from_json_text(R"({
      "schema": 1, "seed": 4,
      "zones": [
        {"kind": "work", "rect": [0, 0, 10, 10]},
        {"kind": "community", "rect": [12, 0, 22, 10]},
        {"kind": "residential", "rect": [24, 0, 30, 6]}
      ],
      "people": [
        {"residence": 2, "workplace": 0, "status": "infected"},
        {"residence": 2, "workplace": 0},
        {"residence": 2, "workplace": 0},
        {"residence": 2, "workplace": 0}
      ]
    })", "cfg");
    // A chain 0-1-2-3 all at the same step needs several upload rounds.
    const std::vector<ContactEvent> events{recorded_event(0, 1, 6), recorded_event(1, 2, 6),
                                           recorded_event(2, 3, 6)};
    const auto labels = propagate_risk(4, edges_from_events(events), s.infected_indices());
    Registry registry(s.authority_tokens);
    registry.flag_infected(s.ids[0], s.authority_tokens.front(), 0);
    drive_registry(registry, s, events, labels, 1440);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(registry.query_status(s.ids[i]) == labels[i].status);
    CHECK(registry.query_status(s.ids[3]) == HealthStatus::AtRisk);
}

TEST_CASE("policy quarantine sets follow the knobs") {
    const Scenario s = scenario_from_json_text(R"({
      "schema": 1, "seed": 8,
      "zones": [
        {"kind": "work", "rect": [0, 0, 10, 10]},
        {"kind": "community", "rect": [12, 0, 22, 10]},
        {"kind": "residential", "rect": [24, 0, 30, 6]}
      ],
      "people": 5
    })", "cfg");
    std::vector<RiskLabel> labels(5);
    labels[0] = {HealthStatus::Infected, 0};
    labels[1] = {HealthStatus::AtRisk, 5};
    labels[2] = {HealthStatus::AtRisk, 3};
    labels[3] = {HealthStatus::NotAtRisk, std::nullopt};
    labels[4] = {HealthStatus::AtRisk, 3};

    QuarantinePolicy policy;
    policy.name = "p";
    CHECK(policy_quarantine_set(policy, s, labels) == std::vector<std::size_t>{0});

    policy.top_at_risk = 2; // both acquisition-3 people outrank the step-5 one
    CHECK(policy_quarantine_set(policy, s, labels) == std::vector<std::size_t>{0, 2, 4});

    policy.top_at_risk = 10; // more than exist: everyone at risk
    CHECK(policy_quarantine_set(policy, s, labels) == std::vector<std::size_t>{0, 1, 2, 4});

    policy.top_at_risk = 0;
    policy.all_at_risk = true;
    CHECK(policy_quarantine_set(policy, s, labels) == std::vector<std::size_t>{0, 1, 2, 4});

    policy.all_at_risk = false;
    policy.infected = false;
    policy.extra_indices = {3};
    CHECK(policy_quarantine_set(policy, s, labels) == std::vector<std::size_t>{3});
}

TEST_CASE("tie-break inside top-at-risk uses the token order") {
    const Scenario s = scenario_from_json_text(R"({
      "schema": 1, "seed": 8,
      "zones": [
        {"kind": "work", "rect": [0, 0, 10, 10]},
        {"kind": "community", "rect": [12, 0, 22, 10]},
        {"kind": "residential", "rect": [24, 0, 30, 6]}
      ],
      "people": 3
    })", "cfg");
    std::vector<RiskLabel> labels(3);
    labels[0] = {HealthStatus::AtRisk, 7};
    labels[1] = {HealthStatus::AtRisk, 7};
    labels[2] = {HealthStatus::AtRisk, 7};
    QuarantinePolicy policy;
    policy.name = "p";
    policy.infected = false;
    policy.top_at_risk = 1;
    const auto picked = policy_quarantine_set(policy, s, labels);
    REQUIRE(picked.size() == 1);
    for (std::size_t other = 0; other < 3; ++other)
        if (other != picked[0]) CHECK(s.ids[picked[0]] < s.ids[other]);
}

TEST_CASE("case study outcomes are ordered by strictness") {
    const Scenario s = default_scenario();
    const ExperimentReport report = run_case_study(s);
    REQUIRE(report.days.size() == 1); // day 1 only; day 2 varies per policy
    REQUIRE(report.policies.size() == 3);
    const PolicyOutcome& case_i = report.policies[0];
    const PolicyOutcome& case_ii = report.policies[1];
    const PolicyOutcome& full = report.policies[2];
    CHECK(case_i.name == "case-i");
    CHECK(case_ii.name == "case-ii");
    CHECK(full.name == "full-isolation");

    // Wider quarantine, never more fresh exposures.
    for (std::size_t idx : case_i.quarantined)
        CHECK(std::count(case_ii.quarantined.begin(), case_ii.quarantined.end(), idx) == 1);
    CHECK(case_ii.new_at_risk <= case_i.new_at_risk);
    CHECK(full.new_at_risk == 0);

    // Every policy here isolates all the infected seeds.
    for (std::size_t seed_person : s.infected_indices())
        for (const PolicyOutcome& outcome : report.policies)
            CHECK(std::count(outcome.quarantined.begin(), outcome.quarantined.end(),
                             seed_person) == 1);

    // Quarantined people take part in no day-2 events.
    for (const ContactEvent& e : case_ii.day2_events) {
        CHECK(std::count(case_ii.quarantined.begin(), case_ii.quarantined.end(), e.a) == 0);
        CHECK(std::count(case_ii.quarantined.begin(), case_ii.quarantined.end(), e.b) == 0);
    }
}

TEST_CASE("case studies demand two days and a policy list") {
    const char* no_policies = R"({
      "schema": 1, "seed": 2, "days": 2,
      "zones": [
        {"kind": "work", "rect": [0, 0, 10, 10]},
        {"kind": "community", "rect": [12, 0, 22, 10]},
        {"kind": "residential", "rect": [24, 0, 30, 6]}
      ],
      "people": 2
    })";
    CHECK_THROWS_AS(run_case_study(scenario_from_json_text(no_policies, "cfg")), ConfigError);

    const char* one_day = R"({
      "schema": 1, "seed": 2,
      "zones": [
        {"kind": "work", "rect": [0, 0, 10, 10]},
        {"kind": "community", "rect": [12, 0, 22, 10]},
        {"kind": "residential", "rect": [24, 0, 30, 6]}
      ],
      "people": 2,
      "case_study": [{"name": "only"}]
    })";
    CHECK_THROWS_AS(run_case_study(scenario_from_json_text(one_day, "cfg")), ConfigError);
}

TEST_CASE("report json carries the run summary") {
    const Scenario s = default_scenario();
    const ExperimentReport report = run_case_study(s);
    const std::string text = report_json(report, s);
    REQUIRE_FALSE(text.empty());
    CHECK(text.back() == '\n');

    const auto doc = nlohmann::json::parse(text);
    CHECK(doc["schema"] == 1);
    CHECK(doc["scenario_hash"] == report.scenario_hash);
    CHECK(doc["seed"] == 42);
    CHECK(doc["population"] == 10);
    CHECK(doc["days"].size() == 1);
    CHECK(doc["days"][0]["pair_checks"] == 288 * pair_count(10));
    int total = 0;
    for (const auto& [key, value] : doc["status_counts"].items())
        total += value.get<int>();
    CHECK(total == 10);
    REQUIRE(doc["policies"].size() == 3);
    CHECK(doc["policies"][2]["name"] == "full-isolation");
    CHECK(doc["policies"][2]["new_at_risk_day2"] == 0);
    CHECK(doc["policies"][0]["quarantined"].size() == s.infected_indices().size());
}

TEST_CASE("report files land on disk and parse back") {
    const Scenario s = default_scenario();
    const ExperimentReport report = run_case_study(s);
    const fs::path out = fs::temp_directory_path() / "ctsim-test-report-files";
    fs::remove_all(out);
    write_report_files(report, s, out);

    for (const char* name :
         {"events.csv", "devices.csv", "registry.csv", "labeling.csv", "contact_matrix.csv",
          "contact_matrix.svg", "snapshots.svg", "report.json", "events_day2_case-i.csv",
          "events_day2_case-ii.csv", "events_day2_full-isolation.csv", "labeling_case-i.csv",
          "labeling_case-ii.csv", "labeling_full-isolation.csv"})
        CHECK(fs::exists(out / name));

    const auto events = parse_events_csv(read_text_file(out / "events.csv"));
    CHECK(events.size() == report.events.size());
    const auto labels = parse_labeling_csv(read_text_file(out / "labeling.csv"));
    CHECK(labels.size() == s.population());
    const auto [ids, matrix] = parse_contact_matrix_csv(read_text_file(out / "contact_matrix.csv"));
    CHECK(ids.size() == s.population());
    const std::string svg = read_text_file(out / "snapshots.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    fs::remove_all(out);
}

TEST_CASE("an empty population still produces well-formed outputs") {
    const Scenario s = scenario_from_json_text(R"({
      "schema": 1, "seed": 1,
      "zones": [{"kind": "work", "rect": [0, 0, 10, 10]}],
      "people": 0
    })", "cfg");
    const ExperimentReport report = run_experiment(s);
    CHECK(report.events.empty());
    CHECK(report.labels.empty());
    CHECK(report.registry.entries().empty());
    CHECK(report.days.size() == 1);
    CHECK(report.days[0].pair_checks == 0);

    const fs::path out = fs::temp_directory_path() / "ctsim-test-empty-report";
    fs::remove_all(out);
    write_report_files(report, s, out);
    CHECK(parse_events_csv(read_text_file(out / "events.csv")).empty());
    CHECK(parse_labeling_csv(read_text_file(out / "labeling.csv")).empty());
    fs::remove_all(out);
}
