#include <doctest.h>

#include <string>

#include "core/errors.hpp"
#include "core/scenario.hpp"

using namespace ctsim;

namespace {

const char* kBaseConfig = R"({
  "schema": 1,
  "seed": 5,
  "zones": [
    {"kind": "work", "rect": [0, 0, 10, 10]},
    {"kind": "community", "rect": [12, 0, 22, 10]},
    {"kind": "residential", "rect": [24, 0, 30, 6]},
    {"kind": "residential", "rect": [32, 0, 38, 6]}
  ],
  "people": 3
})";

std::string parse_failure(const std::string& text) {
    try {
        scenario_from_json_text(text, "cfg");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("a count population cycles through home and work zones") {
    const Scenario s = scenario_from_json_text(kBaseConfig, "cfg");
    CHECK(s.population() == 3);
    CHECK(s.days == 1);
    CHECK(s.d_limit_m == 1.83);
    CHECK(s.schedule.step_minutes == 5);
    CHECK(s.community_zone == 1);
    CHECK(s.people[0].residence_zone == 2);
    CHECK(s.people[1].residence_zone == 3);
    CHECK(s.people[2].residence_zone == 2);
    for (const PersonSpec& p : s.people) CHECK(p.workplace_zone == 0);
    CHECK(s.ids.size() == 3);
    CHECK(s.authority_tokens == std::vector<std::string>{"authority"});
    CHECK(s.quarantined_on(1).empty());
    CHECK(s.quarantined_on(99).empty());
}

TEST_CASE("seed override changes ids before derivation") {
    const Scenario a = scenario_from_json_text(kBaseConfig, "cfg");
    const Scenario b = scenario_from_json_text(kBaseConfig, "cfg", 5);
    const Scenario c = scenario_from_json_text(kBaseConfig, "cfg", 6);
    CHECK(a.ids == b.ids);
    CHECK(a.ids != c.ids);
    CHECK(c.seed == 6);
}

TEST_CASE("explicit people carry status and zone assignments") {
    const char* config = R"({
      "schema": 1, "seed": 1,
      "zones": [
        {"kind": "work", "rect": [0, 0, 10, 10]},
        {"kind": "community", "rect": [12, 0, 22, 10]},
        {"kind": "residential", "rect": [24, 0, 30, 6]}
      ],
      "people": [
        {"residence": 2, "workplace": 0, "status": "infected"},
        {"residence": 2, "workplace": 0}
      ]
    })";
    const Scenario s = scenario_from_json_text(config, "cfg");
    CHECK(s.people[0].initial_status == HealthStatus::Infected);
    CHECK(s.people[1].initial_status == HealthStatus::NotAtRisk);
    CHECK(s.infected_indices() == std::vector<std::size_t>{0});
}

TEST_CASE("seeded infection count marks exactly that many") {
    std::string config = kBaseConfig;
    config.insert(config.rfind('}'), R"(, "initial_infected": 2)");
    const Scenario s = scenario_from_json_text(config, "cfg");
    CHECK(s.infected_indices().size() == 2);
    // Same seed, same choice.
    const Scenario again = scenario_from_json_text(config, "cfg");
    CHECK(s.infected_indices() == again.infected_indices());
}

TEST_CASE("malformed json reports line and column") {
    const std::string msg = parse_failure("{\n  \"schema\": 1,\n  oops\n}");
    CHECK(msg.find("cfg:3:") != std::string::npos);
}

TEST_CASE("config rejections name the offending path") {
    std::string base = kBaseConfig;

    SUBCASE("wrong schema version") {
        std::string bad = base;
        bad.replace(bad.find("\"schema\": 1"), 11, "\"schema\": 2");
        CHECK(parse_failure(bad).find("cfg.schema") != std::string::npos);
    }
    SUBCASE("unknown top-level key") {
        std::string bad = base;
        bad.insert(bad.rfind('}'), R"(, "velocity": 3)");
        CHECK(parse_failure(bad).find("cfg.velocity") != std::string::npos);
    }
    SUBCASE("overlapping zone interiors") {
        std::string bad = base;
        bad.replace(bad.find("[12, 0, 22, 10]"), 15, "[9, 0, 22, 10]");
        CHECK(parse_failure(bad).find("cfg.zones[1]") != std::string::npos);
    }
    SUBCASE("step length must divide the day") {
        std::string bad = base;
        bad.insert(bad.rfind('}'), R"(, "schedule": {"step_minutes": 7})");
        CHECK(parse_failure(bad).find("step_minutes") != std::string::npos);
    }
    SUBCASE("quarantine day beyond the horizon") {
        std::string bad = base;
        bad.insert(bad.rfind('}'), R"(, "quarantine": {"2": [0]})");
        CHECK(parse_failure(bad).find("cfg.quarantine.2") != std::string::npos);
    }
    SUBCASE("person index out of range") {
        std::string bad = base;
        bad.insert(bad.rfind('}'), R"(, "quarantine": {"1": [3]})");
        CHECK(parse_failure(bad).find("out of range") != std::string::npos);
    }
    SUBCASE("seeded infections clash with explicit statuses") {
        const char* bad = R"({
          "schema": 1, "seed": 1, "initial_infected": 1,
          "zones": [
            {"kind": "work", "rect": [0, 0, 10, 10]},
            {"kind": "community", "rect": [12, 0, 22, 10]},
            {"kind": "residential", "rect": [24, 0, 30, 6]}
          ],
          "people": [{"residence": 2, "workplace": 0, "status": "at_risk"}]
        })";
        CHECK(parse_failure(bad).find("cfg.initial_infected") != std::string::npos);
    }
    SUBCASE("a workplace pointing at a house") {
        const char* bad = R"({
          "schema": 1, "seed": 1,
          "zones": [
            {"kind": "work", "rect": [0, 0, 10, 10]},
            {"kind": "community", "rect": [12, 0, 22, 10]},
            {"kind": "residential", "rect": [24, 0, 30, 6]}
          ],
          "people": [{"residence": 2, "workplace": 2}]
        })";
        CHECK(parse_failure(bad).find("cfg.people[0].workplace") != std::string::npos);
    }
    SUBCASE("populated map without a community zone") {
        const char* bad = R"({
          "schema": 1, "seed": 1,
          "zones": [
            {"kind": "work", "rect": [0, 0, 10, 10]},
            {"kind": "residential", "rect": [24, 0, 30, 6]}
          ],
          "people": 1
        })";
        CHECK(parse_failure(bad).find("community") != std::string::npos);
    }
    SUBCASE("empty authority token list") {
        std::string bad = base;
        bad.insert(bad.rfind('}'), R"(, "authority_tokens": [])");
        CHECK(parse_failure(bad).find("cfg.authority_tokens") != std::string::npos);
    }
    SUBCASE("duplicate policy names") {
        std::string bad = base;
        bad.insert(bad.rfind('}'),
                   R"(, "case_study": [{"name": "a"}, {"name": "a"}])");
        CHECK(parse_failure(bad).find("duplicate") != std::string::npos);
    }
}

TEST_CASE("scenario hash tracks meaning, not formatting") {
    const Scenario a = scenario_from_json_text(kBaseConfig, "cfg");

    // Same content, different whitespace and key order.
    const char* reordered = R"({
      "people": 3,
      "seed":    5,
      "zones": [
        {"rect": [0, 0, 10, 10], "kind": "work"},
        {"kind": "community", "rect": [12, 0, 22, 10]},
        {"kind": "residential", "rect": [24, 0, 30, 6]},
        {"kind": "residential", "rect": [32, 0, 38, 6]}
      ],
      "schema": 1
    })";
    CHECK(scenario_hash(a) == scenario_hash(scenario_from_json_text(reordered, "cfg")));

    std::string tweaked = kBaseConfig;
    tweaked.insert(tweaked.rfind('}'), R"(, "d_limit_m": 2.0)");
    CHECK(scenario_hash(a) != scenario_hash(scenario_from_json_text(tweaked, "cfg")));

    CHECK(scenario_hash(a) != scenario_hash(scenario_from_json_text(kBaseConfig, "cfg", 6)));
}

TEST_CASE("the bundled default config loads") {
    const Scenario s = load_scenario_file(std::string(CTSIM_CONFIG_DIR) + "/default_10p.json");
    CHECK(s.population() == 10);
    CHECK(s.days == 2);
    CHECK(s.case_study.size() == 3);
    CHECK(s.infected_indices().size() == 2);
    s.validate();
}

TEST_CASE("a missing config file raises an io error") {
    CHECK_THROWS_AS(load_scenario_file("/nonexistent/nowhere.json"), IoError);
}
