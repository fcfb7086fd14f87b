/* ctsim - deterministic contact-tracing simulation core.
 *
 * C surface over the C++ engine. All functions return ctsim_status; any
 * non-OK return leaves a human-readable message in ctsim_last_error()
 * (thread-local). Strings returned through char** out parameters are
 * heap-allocated and must be released with ctsim_string_free().
 */
#ifndef CTSIM_H
#define CTSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CTSIM_API __declspec(dllexport)
#else
#define CTSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ctsim_status {
    CTSIM_OK = 0,
    CTSIM_ERR_INVALID_ARGUMENT = 1,
    CTSIM_ERR_CONFIG = 2,
    CTSIM_ERR_IO = 3,
    CTSIM_ERR_INVARIANT = 4,
    CTSIM_ERR_AUTH = 5,
    CTSIM_ERR_PRECONDITION = 6
} ctsim_status;

/* Health statuses as returned by registry queries. */
typedef enum ctsim_health {
    CTSIM_HEALTH_NOT_AT_RISK = 0,
    CTSIM_HEALTH_AT_RISK = 1,
    CTSIM_HEALTH_INFECTED = 2
} ctsim_health;

/* Message describing the calling thread's most recent failure; never NULL. */
CTSIM_API const char* ctsim_last_error(void);
CTSIM_API void ctsim_string_free(char* s);

/* ---- radio channel ---------------------------------------------------- */

typedef struct ctsim_radio_params {
    double path_loss_exponent;
    double system_constant_dbm;
    double noise_sigma_db;
    double wall_attenuation_db;
    double min_distance_m;
} ctsim_radio_params;

CTSIM_API void ctsim_radio_params_default(ctsim_radio_params* out);

/* RSSI at distance_m through `walls` walls with `noise_db` added. */
CTSIM_API ctsim_status ctsim_rssi_from_distance(const ctsim_radio_params* params,
                                                double distance_m, int walls, double noise_db,
                                                double* out_rssi_dbm);

/* Distance estimate implied by an RSSI reading. */
CTSIM_API ctsim_status ctsim_distance_from_rssi(const ctsim_radio_params* params,
                                                double rssi_dbm, double* out_distance_m);

/* Unordered pairs among n entities: n*(n-1)/2. */
CTSIM_API uint64_t ctsim_pair_count(uint64_t n);

/* `count` anonymous ids for `seed`, newline-separated 32-char hex. */
CTSIM_API ctsim_status ctsim_generate_ids(uint64_t seed, size_t count, char** out_ids);

/* ---- wearable device -------------------------------------------------- */

typedef struct ctsim_device ctsim_device;

CTSIM_API ctsim_status ctsim_device_create(const char* own_id_hex, double d_limit_m,
                                           ctsim_device** out);
CTSIM_API void ctsim_device_destroy(ctsim_device* device);

/* Feeds one received beacon; out_recorded reports whether the contact was
 * stored or counted as risky (estimated distance strictly under the limit). */
CTSIM_API ctsim_status ctsim_device_on_beacon(ctsim_device* device, const char* peer_id_hex,
                                              double rssi_dbm, int64_t now_min,
                                              const ctsim_radio_params* params,
                                              int* out_recorded);
CTSIM_API ctsim_status ctsim_device_contact_count(const ctsim_device* device, size_t* out);

/* Contact store as CSV: own_id,peer_id,first_contact_min,encounter_count. */
CTSIM_API ctsim_status ctsim_device_dump_csv(const ctsim_device* device, char** out_csv);

/* ---- central registry -------------------------------------------------- */

typedef struct ctsim_registry ctsim_registry;

CTSIM_API ctsim_status ctsim_registry_create(const char* const* tokens, size_t token_count,
                                             ctsim_registry** out);
CTSIM_API void ctsim_registry_destroy(ctsim_registry* registry);

CTSIM_API ctsim_status ctsim_registry_flag_infected(ctsim_registry* registry, const char* id_hex,
                                                    const char* token, int64_t now_min);

/* Uploads a flagged source's contact list; newly marked count on success. */
CTSIM_API ctsim_status ctsim_registry_upload_contacts(ctsim_registry* registry,
                                                      const char* source_id_hex,
                                                      const char* const* contact_ids_hex,
                                                      size_t contact_count, const char* token,
                                                      int64_t now_min, size_t* out_newly_marked);

/* Public read; unknown ids are NOT_AT_RISK. */
CTSIM_API ctsim_status ctsim_registry_query(const ctsim_registry* registry, const char* id_hex,
                                            ctsim_health* out_status);

/* Snapshot CSV: id,status,flagged_at_min,flagged_by_hash. */
CTSIM_API ctsim_status ctsim_registry_snapshot_csv(const ctsim_registry* registry,
                                                   char** out_csv);

/* ---- whole-scenario runs ----------------------------------------------- */

typedef struct ctsim_run_options {
    int has_seed;  /* nonzero: `seed` replaces the config seed */
    uint64_t seed;
} ctsim_run_options;

/* Simulates all configured days, writes the report files into out_dir
 * (created if missing; pass NULL to skip file output) and returns the
 * report JSON. */
CTSIM_API ctsim_status ctsim_run_simulation(const char* config_path, const char* out_dir,
                                            const ctsim_run_options* options,
                                            char** out_report_json);

/* Day-1 plus the configured day-2 quarantine policies. */
CTSIM_API ctsim_status ctsim_run_case_study(const char* config_path, const char* out_dir,
                                            const ctsim_run_options* options,
                                            char** out_report_json);

/* Runs the full pipeline and returns only the registry snapshot CSV. */
CTSIM_API ctsim_status ctsim_run_registry_dump(const char* config_path,
                                               const ctsim_run_options* options,
                                               char** out_snapshot_csv);

/* Risk labeling over an event-log CSV (text, not a path). seed_ids_csv is a
 * comma-separated list of 32-char hex ids; unknown ids become isolated
 * nodes. Returns the labeling CSV. */
CTSIM_API ctsim_status ctsim_trace_events_csv(const char* events_csv_text,
                                              const char* seed_ids_csv,
                                              char** out_labeling_csv);

/* Differential self-check of the two risk-propagation implementations over
 * `instances` random instances. CTSIM_ERR_INVARIANT on any mismatch. */
CTSIM_API ctsim_status ctsim_oracle_check(uint64_t seed, uint32_t instances,
                                          uint32_t* out_checked);

#ifdef __cplusplus
}
#endif

#endif /* CTSIM_H */
