#include "ctsim/ctsim.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "core/device.hpp"
#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/ids.hpp"
#include "core/mobility.hpp"
#include "core/radio.hpp"
#include "core/registry.hpp"
#include "core/scenario.hpp"
#include "core/tracing.hpp"

namespace {

thread_local std::string g_last_error;

ctsim_status set_error(ctsim_status status, const char* message) {
    g_last_error = message;
    return status;
}

// Translates any escaping exception into a status without ever letting it
// cross the C boundary.
template <class Fn>
ctsim_status guarded(Fn&& fn) {
    try {
        fn();
        return CTSIM_OK;
    } catch (const ctsim::ConfigError& e) {
        return set_error(CTSIM_ERR_CONFIG, e.what());
    } catch (const ctsim::IoError& e) {
        return set_error(CTSIM_ERR_IO, e.what());
    } catch (const ctsim::AuthError& e) {
        return set_error(CTSIM_ERR_AUTH, e.what());
    } catch (const ctsim::PreconditionError& e) {
        return set_error(CTSIM_ERR_PRECONDITION, e.what());
    } catch (const ctsim::InvariantError& e) {
        return set_error(CTSIM_ERR_INVARIANT, e.what());
    } catch (const std::invalid_argument& e) {
        return set_error(CTSIM_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return set_error(CTSIM_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return set_error(CTSIM_ERR_INVARIANT, e.what());
    } catch (...) {
        return set_error(CTSIM_ERR_INVARIANT, "unknown error");
    }
}

char* dup_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

ctsim::AnonymousId parse_id(const char* hex, const char* what) {
    require(hex != nullptr, what);
    auto id = ctsim::AnonymousId::from_hex(hex);
    if (!id) throw std::invalid_argument(std::string(what) + ": bad hex id");
    return *id;
}

ctsim::RadioParams to_params(const ctsim_radio_params* params) {
    require(params != nullptr, "params must not be NULL");
    ctsim::RadioParams out;
    out.path_loss_exponent = params->path_loss_exponent;
    out.system_constant_dbm = params->system_constant_dbm;
    out.noise_sigma_db = params->noise_sigma_db;
    out.wall_attenuation_db = params->wall_attenuation_db;
    out.min_distance_m = params->min_distance_m;
    out.validate();
    return out;
}

std::optional<std::uint64_t> seed_of(const ctsim_run_options* options) {
    if (options != nullptr && options->has_seed != 0) return options->seed;
    return std::nullopt;
}

} // namespace

struct ctsim_device {
    ctsim::DeviceState state;
};

struct ctsim_registry {
    ctsim::Registry registry;
};

extern "C" {

const char* ctsim_last_error(void) { return g_last_error.c_str(); }

void ctsim_string_free(char* s) { std::free(s); }

void ctsim_radio_params_default(ctsim_radio_params* out) {
    if (out == nullptr) return;
    const ctsim::RadioParams defaults;
    out->path_loss_exponent = defaults.path_loss_exponent;
    out->system_constant_dbm = defaults.system_constant_dbm;
    out->noise_sigma_db = defaults.noise_sigma_db;
    out->wall_attenuation_db = defaults.wall_attenuation_db;
    out->min_distance_m = defaults.min_distance_m;
}

ctsim_status ctsim_rssi_from_distance(const ctsim_radio_params* params, double distance_m,
                                      int walls, double noise_db, double* out_rssi_dbm) {
    return guarded([&] {
        require(out_rssi_dbm != nullptr, "out_rssi_dbm must not be NULL");
        *out_rssi_dbm = ctsim::rssi_from_distance(distance_m, walls, to_params(params), noise_db);
    });
}

ctsim_status ctsim_distance_from_rssi(const ctsim_radio_params* params, double rssi_dbm,
                                      double* out_distance_m) {
    return guarded([&] {
        require(out_distance_m != nullptr, "out_distance_m must not be NULL");
        *out_distance_m = ctsim::distance_from_rssi(rssi_dbm, to_params(params));
    });
}

uint64_t ctsim_pair_count(uint64_t n) { return ctsim::pair_count(n); }

ctsim_status ctsim_generate_ids(uint64_t seed, size_t count, char** out_ids) {
    return guarded([&] {
        require(out_ids != nullptr, "out_ids must not be NULL");
        std::string text;
        for (const ctsim::AnonymousId& id : ctsim::generate_ids(seed, count)) {
            text += id.hex();
            text.push_back('\n');
        }
        *out_ids = dup_string(text);
    });
}

ctsim_status ctsim_device_create(const char* own_id_hex, double d_limit_m, ctsim_device** out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        auto id = parse_id(own_id_hex, "own_id_hex");
        *out = new ctsim_device{ctsim::DeviceState(id, d_limit_m)};
    });
}

void ctsim_device_destroy(ctsim_device* device) { delete device; }

ctsim_status ctsim_device_on_beacon(ctsim_device* device, const char* peer_id_hex,
                                    double rssi_dbm, int64_t now_min,
                                    const ctsim_radio_params* params, int* out_recorded) {
    return guarded([&] {
        require(device != nullptr, "device must not be NULL");
        auto peer = parse_id(peer_id_hex, "peer_id_hex");
        const bool recorded = device->state.on_beacon(peer, rssi_dbm, now_min, to_params(params));
        if (out_recorded != nullptr) *out_recorded = recorded ? 1 : 0;
    });
}

ctsim_status ctsim_device_contact_count(const ctsim_device* device, size_t* out) {
    return guarded([&] {
        require(device != nullptr, "device must not be NULL");
        require(out != nullptr, "out must not be NULL");
        *out = device->state.contact_count();
    });
}

ctsim_status ctsim_device_dump_csv(const ctsim_device* device, char** out_csv) {
    return guarded([&] {
        require(device != nullptr, "device must not be NULL");
        require(out_csv != nullptr, "out_csv must not be NULL");
        *out_csv = dup_string(ctsim::device_dump_csv({&device->state, 1}));
    });
}

ctsim_status ctsim_registry_create(const char* const* tokens, size_t token_count,
                                   ctsim_registry** out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        require(tokens != nullptr || token_count == 0, "tokens must not be NULL");
        std::vector<std::string> list;
        list.reserve(token_count);
        for (size_t i = 0; i < token_count; ++i) {
            require(tokens[i] != nullptr, "token must not be NULL");
            list.emplace_back(tokens[i]);
        }
        *out = new ctsim_registry{ctsim::Registry(std::move(list))};
    });
}

void ctsim_registry_destroy(ctsim_registry* registry) { delete registry; }

ctsim_status ctsim_registry_flag_infected(ctsim_registry* registry, const char* id_hex,
                                          const char* token, int64_t now_min) {
    return guarded([&] {
        require(registry != nullptr, "registry must not be NULL");
        require(token != nullptr, "token must not be NULL");
        registry->registry.flag_infected(parse_id(id_hex, "id_hex"), token, now_min);
    });
}

ctsim_status ctsim_registry_upload_contacts(ctsim_registry* registry, const char* source_id_hex,
                                            const char* const* contact_ids_hex,
                                            size_t contact_count, const char* token,
                                            int64_t now_min, size_t* out_newly_marked) {
    return guarded([&] {
        require(registry != nullptr, "registry must not be NULL");
        require(token != nullptr, "token must not be NULL");
        require(contact_ids_hex != nullptr || contact_count == 0,
                "contact_ids_hex must not be NULL");
        std::vector<ctsim::AnonymousId> contacts;
        contacts.reserve(contact_count);
        for (size_t i = 0; i < contact_count; ++i)
            contacts.push_back(parse_id(contact_ids_hex[i], "contact id"));
        const auto marked = registry->registry.upload_contacts(
            parse_id(source_id_hex, "source_id_hex"), contacts, token, now_min);
        if (out_newly_marked != nullptr) *out_newly_marked = marked.size();
    });
}

ctsim_status ctsim_registry_query(const ctsim_registry* registry, const char* id_hex,
                                  ctsim_health* out_status) {
    return guarded([&] {
        require(registry != nullptr, "registry must not be NULL");
        require(out_status != nullptr, "out_status must not be NULL");
        const auto status = registry->registry.query_status(parse_id(id_hex, "id_hex"));
        *out_status = static_cast<ctsim_health>(static_cast<int>(status));
    });
}

ctsim_status ctsim_registry_snapshot_csv(const ctsim_registry* registry, char** out_csv) {
    return guarded([&] {
        require(registry != nullptr, "registry must not be NULL");
        require(out_csv != nullptr, "out_csv must not be NULL");
        *out_csv = dup_string(registry->registry.snapshot_csv());
    });
}

ctsim_status ctsim_run_simulation(const char* config_path, const char* out_dir,
                                  const ctsim_run_options* options, char** out_report_json) {
    return guarded([&] {
        require(config_path != nullptr, "config_path must not be NULL");
        const auto scenario = ctsim::load_scenario_file(config_path, seed_of(options));
        const auto report = ctsim::run_experiment(scenario);
        if (out_dir != nullptr) ctsim::write_report_files(report, scenario, out_dir);
        if (out_report_json != nullptr)
            *out_report_json = dup_string(ctsim::report_json(report, scenario));
    });
}

ctsim_status ctsim_run_case_study(const char* config_path, const char* out_dir,
                                  const ctsim_run_options* options, char** out_report_json) {
    return guarded([&] {
        require(config_path != nullptr, "config_path must not be NULL");
        const auto scenario = ctsim::load_scenario_file(config_path, seed_of(options));
        const auto report = ctsim::run_case_study(scenario);
        if (out_dir != nullptr) ctsim::write_report_files(report, scenario, out_dir);
        if (out_report_json != nullptr)
            *out_report_json = dup_string(ctsim::report_json(report, scenario));
    });
}

ctsim_status ctsim_run_registry_dump(const char* config_path, const ctsim_run_options* options,
                                     char** out_snapshot_csv) {
    return guarded([&] {
        require(config_path != nullptr, "config_path must not be NULL");
        require(out_snapshot_csv != nullptr, "out_snapshot_csv must not be NULL");
        const auto scenario = ctsim::load_scenario_file(config_path, seed_of(options));
        const auto report = ctsim::run_experiment(scenario);
        *out_snapshot_csv = dup_string(report.registry.snapshot_csv());
    });
}

ctsim_status ctsim_trace_events_csv(const char* events_csv_text, const char* seed_ids_csv,
                                    char** out_labeling_csv) {
    return guarded([&] {
        require(events_csv_text != nullptr, "events_csv_text must not be NULL");
        require(seed_ids_csv != nullptr, "seed_ids_csv must not be NULL");
        require(out_labeling_csv != nullptr, "out_labeling_csv must not be NULL");

        const auto rows = ctsim::parse_events_csv(events_csv_text);

        std::vector<ctsim::AnonymousId> seed_ids;
        {
            const std::string text = seed_ids_csv;
            std::size_t start = 0;
            while (start <= text.size()) {
                std::size_t pos = text.find(',', start);
                if (pos == std::string::npos) pos = text.size();
                const std::string item = text.substr(start, pos - start);
                if (!item.empty()) seed_ids.push_back(parse_id(item.c_str(), "seed id"));
                if (pos == text.size()) break;
                start = pos + 1;
            }
            if (seed_ids.empty()) throw std::invalid_argument("no seed ids given");
        }

        // Node universe: every id in the log plus every seed, sorted.
        std::vector<ctsim::AnonymousId> ids;
        for (const auto& row : rows) {
            ids.push_back(row.id_a);
            ids.push_back(row.id_b);
        }
        ids.insert(ids.end(), seed_ids.begin(), seed_ids.end());
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

        auto index_of = [&](const ctsim::AnonymousId& id) {
            return static_cast<std::size_t>(
                std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
        };
        std::vector<ctsim::TraceEdge> edges;
        edges.reserve(rows.size());
        for (const auto& row : rows) {
            if (!row.recorded) continue;
            const auto a = static_cast<std::uint32_t>(index_of(row.id_a));
            const auto b = static_cast<std::uint32_t>(index_of(row.id_b));
            edges.push_back(ctsim::TraceEdge{std::min(a, b), std::max(a, b), row.step});
        }
        std::vector<std::size_t> seeds;
        seeds.reserve(seed_ids.size());
        for (const auto& id : seed_ids) seeds.push_back(index_of(id));
        std::sort(seeds.begin(), seeds.end());
        seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

        const auto labels = ctsim::propagate_risk(ids.size(), edges, seeds);
        *out_labeling_csv = dup_string(ctsim::labeling_csv(labels, ids));
    });
}

ctsim_status ctsim_oracle_check(uint64_t seed, uint32_t instances, uint32_t* out_checked) {
    return guarded([&] {
        uint32_t checked = 0;
        for (uint32_t i = 0; i < instances; ++i) {
            const auto instance = ctsim::random_tracing_instance(seed + i);
            const auto fast =
                ctsim::propagate_risk(instance.node_count, instance.edges, instance.seeds);
            const auto slow =
                ctsim::oracle_propagate(instance.node_count, instance.edges, instance.seeds);
            if (fast != slow)
                throw ctsim::InvariantError(
                    "risk propagation disagrees with the oracle on instance " +
                    std::to_string(i) + " (seed " + std::to_string(seed + i) + ")");
            ++checked;
        }
        if (out_checked != nullptr) *out_checked = checked;
    });
}

} // extern "C"
