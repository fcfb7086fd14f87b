// Command-line front end. Links only the public C API, so it doubles as a
// living example of driving the shared library.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ctsim/ctsim.h"

namespace {

// Exit codes: 0 success, 2 config error, 3 I/O error, 4 invariant violation.
int exit_code_for(ctsim_status status) {
    switch (status) {
    case CTSIM_OK: return 0;
    case CTSIM_ERR_INVALID_ARGUMENT:
    case CTSIM_ERR_CONFIG: return 2;
    case CTSIM_ERR_IO: return 3;
    case CTSIM_ERR_INVARIANT:
    case CTSIM_ERR_AUTH:
    case CTSIM_ERR_PRECONDITION: return 4;
    }
    return 4;
}

int report_failure(ctsim_status status) {
    std::cerr << "error: " << ctsim_last_error() << "\n";
    return exit_code_for(status);
}

struct OwnedString {
    char* value = nullptr;
    ~OwnedString() { ctsim_string_free(value); }
};

ctsim_run_options options_for(const std::optional<std::uint64_t>& seed) {
    ctsim_run_options options{};
    if (seed) {
        options.has_seed = 1;
        options.seed = *seed;
    }
    return options;
}

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream file(out_path, std::ios::binary);
    file << text;
    if (!file) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic proximity contact-tracing simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string out_path;
    std::string events_path;
    std::string seeds_csv;
    std::optional<std::uint64_t> seed;
    std::uint32_t instances = 200;
    std::uint64_t check_seed = 1;

    auto* simulate = app.add_subcommand("simulate", "Run all configured days and emit reports");
    simulate->add_option("--config", config_path, "Scenario config file")->required();
    simulate->add_option("--out", out_dir, "Output directory")->required();
    simulate->add_option("--seed", seed, "Override the config seed");

    auto* case_study = app.add_subcommand(
        "case-study", "Day-1 baseline plus the configured day-2 quarantine policies");
    case_study->add_option("--config", config_path, "Scenario config file")->required();
    case_study->add_option("--out", out_dir, "Output directory")->required();
    case_study->add_option("--seed", seed, "Override the config seed");

    auto* trace = app.add_subcommand("trace", "Risk labels from an event-log CSV");
    trace->add_option("--events", events_path, "Event log CSV file")->required();
    trace->add_option("--seeds", seeds_csv, "Comma-separated infected ids")->required();
    trace->add_option("--out", out_path, "Labeling CSV path (default: stdout)");

    auto* registry_dump =
        app.add_subcommand("registry-dump", "Run the pipeline and print the registry snapshot");
    registry_dump->add_option("--config", config_path, "Scenario config file")->required();
    registry_dump->add_option("--seed", seed, "Override the config seed");
    registry_dump->add_option("--out", out_path, "Snapshot path (default: stdout)");

    auto* oracle_check = app.add_subcommand(
        "oracle-check", "Differential check of risk propagation against the replay oracle");
    oracle_check->add_option("--instances", instances, "Random instances to check");
    oracle_check->add_option("--seed", check_seed, "Base seed for instance generation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (simulate->parsed() || case_study->parsed()) {
        const auto options = options_for(seed);
        OwnedString report;
        const ctsim_status status =
            simulate->parsed()
                ? ctsim_run_simulation(config_path.c_str(), out_dir.c_str(), &options,
                                       &report.value)
                : ctsim_run_case_study(config_path.c_str(), out_dir.c_str(), &options,
                                       &report.value);
        if (status != CTSIM_OK) return report_failure(status);
        std::cout << report.value;
        return 0;
    }

    if (trace->parsed()) {
        std::ifstream file(events_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot read " << events_path << "\n";
            return 3;
        }
        std::ostringstream buffer;
        buffer << file.rdbuf();
        const std::string events_text = buffer.str();

        OwnedString labeling;
        const ctsim_status status =
            ctsim_trace_events_csv(events_text.c_str(), seeds_csv.c_str(), &labeling.value);
        if (status != CTSIM_OK) return report_failure(status);
        return emit(labeling.value, out_path);
    }

    if (registry_dump->parsed()) {
        const auto options = options_for(seed);
        OwnedString snapshot;
        const ctsim_status status =
            ctsim_run_registry_dump(config_path.c_str(), &options, &snapshot.value);
        if (status != CTSIM_OK) return report_failure(status);
        return emit(snapshot.value, out_path);
    }

    if (oracle_check->parsed()) {
        std::uint32_t checked = 0;
        const ctsim_status status = ctsim_oracle_check(check_seed, instances, &checked);
        if (status != CTSIM_OK) return report_failure(status);
        std::cout << "oracle-check: " << checked << " instances, all labelings identical\n";
        return 0;
    }

    return 2;
}
