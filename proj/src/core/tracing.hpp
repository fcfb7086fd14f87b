#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "core/health.hpp"
#include "core/mobility.hpp"

namespace ctsim {

/// Undirected contact at one step, by person index.
struct TraceEdge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::int64_t step = 0;

    bool operator==(const TraceEdge&) const = default;
};

struct RiskLabel {
    HealthStatus status = HealthStatus::NotAtRisk;
    /// 0 for seeds, the causing contact's step for AtRisk, nullopt otherwise.
    std::optional<std::int64_t> acquisition_step;

    bool operator==(const RiskLabel&) const = default;
};

/// Keeps only device-recorded events; ignores near misses that were logged
/// for diagnostics but never stored by a device.
std::vector<TraceEdge> edges_from_events(std::span<const ContactEvent> events);

/// Temporal closure: a node is exposed from step t onward if it shares an
/// edge at step t with a node already exposed at or before t; seeds are
/// Infected and exposed from step 0. Earliest-exposure search over the
/// adjacency lists, so the result is a fixpoint independent of edge order.
std::vector<RiskLabel> propagate_risk(std::size_t node_count, std::span<const TraceEdge> edges,
                                      std::span<const std::size_t> seeds);

/// Same contract, deliberately different algorithm: chronological replay
/// with repeated sweeps inside each step until nothing changes. Quadratic
/// and only meant for small instances, as the verification baseline.
std::vector<RiskLabel> oracle_propagate(std::size_t node_count, std::span<const TraceEdge> edges,
                                        std::span<const std::size_t> seeds);

/// Random small instance for differential testing, fully determined by
/// `seed`. Node count 2..max_nodes, steps within [0, max_step], 1-3 seeds.
struct TracingInstance {
    std::size_t node_count = 0;
    std::vector<TraceEdge> edges;
    std::vector<std::size_t> seeds;
};
TracingInstance random_tracing_instance(std::uint64_t seed, std::size_t max_nodes = 12,
                                        std::int64_t max_step = 50);

} // namespace ctsim
