#include "core/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/util.hpp"

namespace ctsim {
namespace {

using nlohmann::json;

// Translates a nlohmann parse error byte offset into line:column (1-based).
std::pair<int, int> offset_to_line_col(std::string_view text, std::size_t byte) {
    int line = 1;
    int col = 1;
    const std::size_t end = std::min(byte, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

std::string join_path(const std::string& base, const std::string& key) {
    return base + "." + key;
}

std::string join_path(const std::string& base, std::size_t index) {
    return base + "[" + std::to_string(index) + "]";
}

void require_keys(const json& obj, const std::string& path,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional) {
    for (const char* key : required) {
        if (!obj.contains(key)) fail(path, std::string("missing required key \"") + key + "\"");
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const std::string& key = it.key();
        auto known = [&](std::initializer_list<const char*> list) {
            return std::any_of(list.begin(), list.end(),
                               [&](const char* k) { return key == k; });
        };
        if (!known(required) && !known(optional))
            fail(join_path(path, key), "unknown key");
    }
}

const json& member(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing required key \"") + key + "\"");
    return *it;
}

double get_finite_number(const json& value, const std::string& path) {
    if (!value.is_number()) fail(path, "expected a number");
    double d = value.get<double>();
    if (!std::isfinite(d)) fail(path, "must be finite");
    return d;
}

std::int64_t get_integer(const json& value, const std::string& path) {
    if (!value.is_number_integer()) fail(path, "expected an integer");
    return value.get<std::int64_t>();
}

std::uint64_t get_u64(const json& value, const std::string& path) {
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    if (value.is_number_integer()) {
        std::int64_t v = value.get<std::int64_t>();
        if (v < 0) fail(path, "must be non-negative");
        return static_cast<std::uint64_t>(v);
    }
    fail(path, "expected an integer");
}

std::string get_string(const json& value, const std::string& path) {
    if (!value.is_string()) fail(path, "expected a string");
    return value.get<std::string>();
}

bool get_bool(const json& value, const std::string& path) {
    if (!value.is_boolean()) fail(path, "expected a boolean");
    return value.get<bool>();
}

std::size_t get_index(const json& value, const std::string& path, std::size_t bound,
                      const char* what) {
    std::int64_t v = get_integer(value, path);
    if (v < 0 || static_cast<std::size_t>(v) >= bound)
        fail(path, std::string(what) + " index " + std::to_string(v) + " out of range [0, " +
                       std::to_string(bound) + ")");
    return static_cast<std::size_t>(v);
}

Zone parse_zone(const json& value, const std::string& path) {
    if (!value.is_object()) fail(path, "expected an object");
    require_keys(value, path, {"kind", "rect"}, {});
    Zone zone;
    const std::string kind = get_string(member(value, path, "kind"), join_path(path, "kind"));
    auto parsed = zone_kind_from_string(kind);
    if (!parsed)
        fail(join_path(path, "kind"),
             "unknown zone kind \"" + kind + "\" (expected residential, work, or community)");
    zone.kind = *parsed;
    const json& rect = member(value, path, "rect");
    const std::string rect_path = join_path(path, "rect");
    if (!rect.is_array() || rect.size() != 4)
        fail(rect_path, "expected [min_x, min_y, max_x, max_y]");
    double coords[4];
    for (std::size_t i = 0; i < 4; ++i)
        coords[i] = get_finite_number(rect[i], join_path(rect_path, i));
    zone.bounds = Rect{coords[0], coords[1], coords[2], coords[3]};
    if (!(zone.bounds.x0 < zone.bounds.x1 && zone.bounds.y0 < zone.bounds.y1))
        fail(rect_path, "rect must have positive width and height");
    return zone;
}

RadioParams parse_radio(const json& value, const std::string& path) {
    if (!value.is_object()) fail(path, "expected an object");
    require_keys(value, path, {},
                 {"path_loss_exponent", "system_constant_dbm", "noise_sigma_db",
                  "wall_attenuation_db", "min_distance_m"});
    RadioParams params;
    if (value.contains("path_loss_exponent"))
        params.path_loss_exponent =
            get_finite_number(value["path_loss_exponent"], join_path(path, "path_loss_exponent"));
    if (value.contains("system_constant_dbm"))
        params.system_constant_dbm =
            get_finite_number(value["system_constant_dbm"], join_path(path, "system_constant_dbm"));
    if (value.contains("noise_sigma_db"))
        params.noise_sigma_db =
            get_finite_number(value["noise_sigma_db"], join_path(path, "noise_sigma_db"));
    if (value.contains("wall_attenuation_db"))
        params.wall_attenuation_db =
            get_finite_number(value["wall_attenuation_db"], join_path(path, "wall_attenuation_db"));
    if (value.contains("min_distance_m"))
        params.min_distance_m =
            get_finite_number(value["min_distance_m"], join_path(path, "min_distance_m"));
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return params;
}

std::vector<PersonSpec> parse_people(const json& value, const std::string& path,
                                     const std::vector<Zone>& zones) {
    std::vector<std::size_t> residential;
    std::vector<std::size_t> work;
    for (std::size_t i = 0; i < zones.size(); ++i) {
        if (zones[i].kind == ZoneKind::Residential) residential.push_back(i);
        if (zones[i].kind == ZoneKind::Work) work.push_back(i);
    }

    std::vector<PersonSpec> people;
    if (value.is_number_integer()) {
        std::int64_t count = value.get<std::int64_t>();
        if (count < 0) fail(path, "count must be non-negative");
        if (count > 0 && residential.empty())
            fail(path, "people count requires at least one residential zone");
        if (count > 0 && work.empty())
            fail(path, "people count requires at least one work zone");
        people.resize(static_cast<std::size_t>(count));
        for (std::size_t i = 0; i < people.size(); ++i) {
            people[i].residence_zone = residential[i % residential.size()];
            people[i].workplace_zone = work[i % work.size()];
        }
        return people;
    }
    if (!value.is_array()) fail(path, "expected an integer count or an array of person objects");
    people.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        const std::string person_path = join_path(path, i);
        const json& entry = value[i];
        if (!entry.is_object()) fail(person_path, "expected an object");
        require_keys(entry, person_path, {"residence", "workplace"}, {"status"});
        PersonSpec spec;
        spec.residence_zone = get_index(member(entry, person_path, "residence"),
                                        join_path(person_path, "residence"), zones.size(), "zone");
        spec.workplace_zone = get_index(member(entry, person_path, "workplace"),
                                        join_path(person_path, "workplace"), zones.size(), "zone");
        if (zones[spec.residence_zone].kind != ZoneKind::Residential)
            fail(join_path(person_path, "residence"), "zone is not residential");
        if (zones[spec.workplace_zone].kind != ZoneKind::Work)
            fail(join_path(person_path, "workplace"), "zone is not a work zone");
        if (entry.contains("status")) {
            const std::string status_path = join_path(person_path, "status");
            auto status = health_status_from_string(get_string(entry["status"], status_path));
            if (!status) fail(status_path, "unknown health status");
            spec.initial_status = *status;
        }
        people.push_back(spec);
    }
    return people;
}

std::vector<std::size_t> parse_index_list(const json& value, const std::string& path,
                                          std::size_t bound, const char* what) {
    if (!value.is_array()) fail(path, "expected an array");
    std::vector<std::size_t> out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i)
        out.push_back(get_index(value[i], join_path(path, i), bound, what));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

QuarantinePolicy parse_policy(const json& value, const std::string& path, std::size_t population) {
    if (!value.is_object()) fail(path, "expected an object");
    require_keys(value, path, {"name"},
                 {"isolate_infected", "isolate_top_at_risk", "isolate_all_at_risk", "isolate"});
    QuarantinePolicy policy;
    policy.name = get_string(member(value, path, "name"), join_path(path, "name"));
    if (policy.name.empty()) fail(join_path(path, "name"), "must be non-empty");
    if (value.contains("isolate_infected"))
        policy.infected = get_bool(value["isolate_infected"], join_path(path, "isolate_infected"));
    if (value.contains("isolate_top_at_risk")) {
        std::int64_t n = get_integer(value["isolate_top_at_risk"],
                                     join_path(path, "isolate_top_at_risk"));
        if (n < 0) fail(join_path(path, "isolate_top_at_risk"), "must be non-negative");
        policy.top_at_risk = static_cast<int>(n);
    }
    if (value.contains("isolate_all_at_risk"))
        policy.all_at_risk =
            get_bool(value["isolate_all_at_risk"], join_path(path, "isolate_all_at_risk"));
    if (value.contains("isolate"))
        policy.extra_indices =
            parse_index_list(value["isolate"], join_path(path, "isolate"), population, "person");
    return policy;
}

} // namespace

std::vector<std::size_t> Scenario::infected_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < people.size(); ++i)
        if (people[i].initial_status == HealthStatus::Infected) out.push_back(i);
    return out;
}

const std::vector<std::size_t>& Scenario::quarantined_on(int day) const {
    static const std::vector<std::size_t> kNone;
    if (day < 1 || static_cast<std::size_t>(day) > quarantine_by_day.size()) return kNone;
    return quarantine_by_day[static_cast<std::size_t>(day) - 1];
}

void Scenario::validate() const {
    if (days < 1) throw ConfigError("days must be >= 1");
    if (!(d_limit_m > 0.0) || !std::isfinite(d_limit_m))
        throw ConfigError("d_limit_m must be positive and finite");
    if (schedule.step_minutes < 1 || kMinutesPerDay % schedule.step_minutes != 0)
        throw ConfigError("schedule.step_minutes must divide " + std::to_string(kMinutesPerDay));
    try {
        radio.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("radio: ") + e.what());
    }

    for (std::size_t i = 0; i < zones.size(); ++i) {
        const Rect& r = zones[i].bounds;
        if (!(r.x0 < r.x1 && r.y0 < r.y1))
            throw ConfigError("zones[" + std::to_string(i) + "]: degenerate rect");
        for (std::size_t j = i + 1; j < zones.size(); ++j)
            if (zones[i].bounds.overlaps_interior(zones[j].bounds))
                throw ConfigError("zones[" + std::to_string(i) + "] and zones[" +
                                  std::to_string(j) + "] have overlapping interiors");
    }

    std::size_t community_count = 0;
    for (const Zone& zone : zones)
        if (zone.kind == ZoneKind::Community) ++community_count;
    if (!people.empty()) {
        if (community_count != 1)
            throw ConfigError("expected exactly one community zone, found " +
                              std::to_string(community_count));
        if (zones[community_zone].kind != ZoneKind::Community)
            throw ConfigError("community_zone does not point at the community zone");
    }

    for (std::size_t i = 0; i < people.size(); ++i) {
        const PersonSpec& p = people[i];
        if (p.residence_zone >= zones.size() ||
            zones[p.residence_zone].kind != ZoneKind::Residential)
            throw ConfigError("people[" + std::to_string(i) + "]: bad residence zone");
        if (p.workplace_zone >= zones.size() || zones[p.workplace_zone].kind != ZoneKind::Work)
            throw ConfigError("people[" + std::to_string(i) + "]: bad workplace zone");
    }

    if (ids.size() != people.size())
        throw ConfigError("expected one anonymous id per person");
    std::set<AnonymousId> unique_ids(ids.begin(), ids.end());
    if (unique_ids.size() != ids.size()) throw ConfigError("anonymous id collision");

    if (static_cast<int>(quarantine_by_day.size()) > days)
        throw ConfigError("quarantine entries extend past the last day");
    for (std::size_t d = 0; d < quarantine_by_day.size(); ++d)
        for (std::size_t idx : quarantine_by_day[d])
            if (idx >= people.size())
                throw ConfigError("quarantine day " + std::to_string(d + 1) +
                                  ": person index out of range");

    if (authority_tokens.empty()) throw ConfigError("at least one authority token is required");
    for (const std::string& token : authority_tokens)
        if (token.empty()) throw ConfigError("authority tokens must be non-empty");

    std::set<std::string> policy_names;
    for (const QuarantinePolicy& policy : case_study) {
        if (!policy_names.insert(policy.name).second)
            throw ConfigError("duplicate case study policy \"" + policy.name + "\"");
        for (std::size_t idx : policy.extra_indices)
            if (idx >= people.size())
                throw ConfigError("case study \"" + policy.name + "\": person index out of range");
    }
}

Scenario scenario_from_json_text(std::string_view text, const std::string& source_name,
                                 std::optional<std::uint64_t> seed_override) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = offset_to_line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigError(source_name + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": " + e.what());
    }
    if (!root.is_object()) fail(source_name, "top level must be an object");

    const std::string top = source_name;
    require_keys(root, top, {"schema", "seed", "zones", "people"},
                 {"days", "d_limit_m", "schedule", "radio", "quarantine", "authority_tokens",
                  "case_study", "initial_infected"});

    if (get_integer(member(root, top, "schema"), join_path(top, "schema")) != 1)
        fail(join_path(top, "schema"), "unsupported schema version (expected 1)");

    Scenario scenario;
    scenario.seed = get_u64(member(root, top, "seed"), join_path(top, "seed"));
    if (seed_override) scenario.seed = *seed_override;

    if (root.contains("days")) {
        std::int64_t days = get_integer(root["days"], join_path(top, "days"));
        if (days < 1) fail(join_path(top, "days"), "must be >= 1");
        scenario.days = static_cast<int>(days);
    }
    if (root.contains("d_limit_m")) {
        scenario.d_limit_m = get_finite_number(root["d_limit_m"], join_path(top, "d_limit_m"));
        if (!(scenario.d_limit_m > 0.0)) fail(join_path(top, "d_limit_m"), "must be positive");
    }
    if (root.contains("schedule")) {
        const json& sched = root["schedule"];
        const std::string sched_path = join_path(top, "schedule");
        if (!sched.is_object()) fail(sched_path, "expected an object");
        require_keys(sched, sched_path, {"step_minutes"}, {});
        std::int64_t step = get_integer(member(sched, sched_path, "step_minutes"),
                                        join_path(sched_path, "step_minutes"));
        if (step < 1 || kMinutesPerDay % step != 0)
            fail(join_path(sched_path, "step_minutes"),
                 "must be a positive divisor of " + std::to_string(kMinutesPerDay));
        scenario.schedule.step_minutes = static_cast<int>(step);
    }
    if (root.contains("radio"))
        scenario.radio = parse_radio(root["radio"], join_path(top, "radio"));

    const json& zones = member(root, top, "zones");
    const std::string zones_path = join_path(top, "zones");
    if (!zones.is_array()) fail(zones_path, "expected an array");
    scenario.zones.reserve(zones.size());
    for (std::size_t i = 0; i < zones.size(); ++i)
        scenario.zones.push_back(parse_zone(zones[i], join_path(zones_path, i)));
    for (std::size_t i = 0; i < scenario.zones.size(); ++i)
        for (std::size_t j = i + 1; j < scenario.zones.size(); ++j)
            if (scenario.zones[i].bounds.overlaps_interior(scenario.zones[j].bounds))
                fail(join_path(zones_path, j),
                     "interior overlaps zones[" + std::to_string(i) + "]");

    scenario.people = parse_people(member(root, top, "people"), join_path(top, "people"),
                                   scenario.zones);

    std::size_t community_count = 0;
    for (std::size_t i = 0; i < scenario.zones.size(); ++i) {
        if (scenario.zones[i].kind == ZoneKind::Community) {
            scenario.community_zone = i;
            ++community_count;
        }
    }
    if (!scenario.people.empty() && community_count != 1)
        fail(zones_path, "expected exactly one community zone, found " +
                             std::to_string(community_count));

    // Seeded initial infections. Explicit per-person statuses take precedence;
    // the count form marks the lowest draws in a seeded shuffle so the choice
    // is stable for a given (seed, population).
    if (root.contains("initial_infected")) {
        const std::string path = join_path(top, "initial_infected");
        std::int64_t count = get_integer(root["initial_infected"], path);
        if (count < 0 || static_cast<std::size_t>(count) > scenario.people.size())
            fail(path, "must be between 0 and the population size");
        bool any_explicit = std::any_of(scenario.people.begin(), scenario.people.end(),
                                        [](const PersonSpec& p) {
                                            return p.initial_status != HealthStatus::NotAtRisk;
                                        });
        if (any_explicit)
            fail(path, "cannot combine with explicit per-person statuses");
        std::vector<std::size_t> order(scenario.people.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            auto ka = rng::key(scenario.seed, rng::kStreamInfected, a);
            auto kb = rng::key(scenario.seed, rng::kStreamInfected, b);
            return ka != kb ? ka < kb : a < b;
        });
        for (std::int64_t i = 0; i < count; ++i)
            scenario.people[order[static_cast<std::size_t>(i)]].initial_status =
                HealthStatus::Infected;
    }

    if (root.contains("quarantine")) {
        const json& quarantine = root["quarantine"];
        const std::string q_path = join_path(top, "quarantine");
        if (!quarantine.is_object()) fail(q_path, "expected an object mapping day -> indices");
        for (auto it = quarantine.begin(); it != quarantine.end(); ++it) {
            const std::string day_path = join_path(q_path, it.key());
            auto day_value = parse_int64(it.key());
            if (!day_value) fail(day_path, "day keys must be integers");
            const std::int64_t day = *day_value;
            if (day < 1 || day > scenario.days)
                fail(day_path, "day out of range [1, " + std::to_string(scenario.days) + "]");
            if (scenario.quarantine_by_day.size() < static_cast<std::size_t>(scenario.days))
                scenario.quarantine_by_day.resize(static_cast<std::size_t>(scenario.days));
            scenario.quarantine_by_day[static_cast<std::size_t>(day) - 1] =
                parse_index_list(it.value(), day_path, scenario.people.size(), "person");
        }
    }
    if (scenario.quarantine_by_day.empty())
        scenario.quarantine_by_day.resize(static_cast<std::size_t>(scenario.days));

    if (root.contains("authority_tokens")) {
        const json& tokens = root["authority_tokens"];
        const std::string t_path = join_path(top, "authority_tokens");
        if (!tokens.is_array() || tokens.empty()) fail(t_path, "expected a non-empty array");
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            std::string token = get_string(tokens[i], join_path(t_path, i));
            if (token.empty()) fail(join_path(t_path, i), "must be non-empty");
            scenario.authority_tokens.push_back(std::move(token));
        }
    } else {
        scenario.authority_tokens.push_back("authority");
    }

    if (root.contains("case_study")) {
        const json& policies = root["case_study"];
        const std::string c_path = join_path(top, "case_study");
        if (!policies.is_array()) fail(c_path, "expected an array");
        for (std::size_t i = 0; i < policies.size(); ++i)
            scenario.case_study.push_back(
                parse_policy(policies[i], join_path(c_path, i), scenario.people.size()));
    }

    scenario.ids = generate_ids(scenario.seed, scenario.people.size());
    scenario.validate();
    return scenario;
}

Scenario load_scenario_file(const std::filesystem::path& path,
                            std::optional<std::uint64_t> seed_override) {
    return scenario_from_json_text(read_text_file(path), path.string(), seed_override);
}

std::string scenario_hash(const Scenario& scenario) {
    json doc;
    doc["seed"] = scenario.seed;
    doc["days"] = scenario.days;
    doc["d_limit_m"] = scenario.d_limit_m;
    doc["step_minutes"] = scenario.schedule.step_minutes;
    doc["radio"] = {scenario.radio.path_loss_exponent, scenario.radio.system_constant_dbm,
                    scenario.radio.noise_sigma_db, scenario.radio.wall_attenuation_db,
                    scenario.radio.min_distance_m};
    json zones = json::array();
    for (const Zone& zone : scenario.zones)
        zones.push_back({to_string(zone.kind), zone.bounds.x0, zone.bounds.y0, zone.bounds.x1,
                         zone.bounds.y1});
    doc["zones"] = std::move(zones);
    json people = json::array();
    for (const PersonSpec& person : scenario.people)
        people.push_back({person.residence_zone, person.workplace_zone,
                          to_string(person.initial_status)});
    doc["people"] = std::move(people);
    doc["quarantine"] = scenario.quarantine_by_day;
    json tokens = json::array();
    for (const std::string& token : scenario.authority_tokens)
        tokens.push_back(fnv1a_hex(token));
    doc["authority_tokens"] = std::move(tokens);
    json policies = json::array();
    for (const QuarantinePolicy& policy : scenario.case_study)
        policies.push_back({policy.name, policy.infected, policy.top_at_risk, policy.all_at_risk,
                            policy.extra_indices});
    doc["case_study"] = std::move(policies);
    return fnv1a_hex(doc.dump());
}

} // namespace ctsim
