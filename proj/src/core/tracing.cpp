#include "core/tracing.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

#include "core/rng.hpp"

namespace ctsim {

std::vector<TraceEdge> edges_from_events(std::span<const ContactEvent> events) {
    std::vector<TraceEdge> edges;
    edges.reserve(events.size());
    for (const ContactEvent& event : events)
        if (event.recorded) edges.push_back(TraceEdge{event.a, event.b, event.step});
    return edges;
}

namespace {

void check_instance(std::size_t node_count, std::span<const TraceEdge> edges,
                    std::span<const std::size_t> seeds) {
    for (const TraceEdge& e : edges) {
        if (e.a >= node_count || e.b >= node_count)
            throw std::out_of_range("edge endpoint out of range");
        if (e.a == e.b) throw std::invalid_argument("self-edge in contact graph");
        if (e.step < 0) throw std::invalid_argument("negative step");
    }
    for (std::size_t s : seeds)
        if (s >= node_count) throw std::out_of_range("seed out of range");
}

std::vector<RiskLabel> labels_from(const std::vector<std::int64_t>& acquired,
                                   std::span<const std::size_t> seeds) {
    constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();
    std::vector<RiskLabel> labels(acquired.size());
    for (std::size_t i = 0; i < acquired.size(); ++i) {
        if (acquired[i] == kNever) continue;
        labels[i].status = HealthStatus::AtRisk;
        labels[i].acquisition_step = acquired[i];
    }
    for (std::size_t s : seeds) labels[s].status = HealthStatus::Infected;
    return labels;
}

} // namespace

std::vector<RiskLabel> propagate_risk(std::size_t node_count, std::span<const TraceEdge> edges,
                                      std::span<const std::size_t> seeds) {
    check_instance(node_count, edges, seeds);
    constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();

    struct Adj {
        std::uint32_t to;
        std::int64_t step;
    };
    std::vector<std::vector<Adj>> adjacency(node_count);
    for (const TraceEdge& e : edges) {
        adjacency[e.a].push_back({e.b, e.step});
        adjacency[e.b].push_back({e.a, e.step});
    }

    std::vector<std::int64_t> acquired(node_count, kNever);
    using Item = std::pair<std::int64_t, std::uint32_t>; // (exposure step, node)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
    for (std::size_t s : seeds) {
        if (acquired[s] != 0) {
            acquired[s] = 0;
            frontier.emplace(0, static_cast<std::uint32_t>(s));
        }
    }

    // Earliest-arrival search: an edge at step t transmits exposure from a
    // node exposed at or before t, and the receiving side is exposed at t.
    // Candidate times never precede the popped minimum, so each node settles
    // at its final acquisition step the first time it leaves the queue.
    while (!frontier.empty()) {
        auto [at, node] = frontier.top();
        frontier.pop();
        if (at != acquired[node]) continue;
        for (const Adj& a : adjacency[node]) {
            if (a.step < at) continue;
            if (a.step < acquired[a.to]) {
                acquired[a.to] = a.step;
                frontier.emplace(a.step, a.to);
            }
        }
    }
    return labels_from(acquired, seeds);
}

std::vector<RiskLabel> oracle_propagate(std::size_t node_count, std::span<const TraceEdge> edges,
                                        std::span<const std::size_t> seeds) {
    check_instance(node_count, edges, seeds);
    constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();

    std::vector<TraceEdge> ordered(edges.begin(), edges.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const TraceEdge& x, const TraceEdge& y) { return x.step < y.step; });

    std::vector<std::int64_t> acquired(node_count, kNever);
    for (std::size_t s : seeds) acquired[s] = 0;

    std::size_t begin = 0;
    while (begin < ordered.size()) {
        const std::int64_t step = ordered[begin].step;
        std::size_t end = begin;
        while (end < ordered.size() && ordered[end].step == step) ++end;

        // Sweep this step's edges until a full pass changes nothing, so
        // same-step chains saturate no matter how the edges are listed.
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = begin; i < end; ++i) {
                const TraceEdge& e = ordered[i];
                const bool a_exposed = acquired[e.a] <= step;
                const bool b_exposed = acquired[e.b] <= step;
                if (a_exposed && !b_exposed) {
                    acquired[e.b] = step;
                    changed = true;
                } else if (b_exposed && !a_exposed) {
                    acquired[e.a] = step;
                    changed = true;
                }
            }
        }
        begin = end;
    }
    return labels_from(acquired, seeds);
}

TracingInstance random_tracing_instance(std::uint64_t seed, std::size_t max_nodes,
                                        std::int64_t max_step) {
    if (max_nodes < 2) throw std::invalid_argument("need at least two nodes");
    TracingInstance instance;
    const std::uint64_t tag = 0x7e57ca5e;
    auto draw = [&](std::uint64_t slot, std::uint64_t i) {
        return rng::key(seed, tag, slot, i);
    };

    instance.node_count = 2 + draw(0, 0) % (max_nodes - 1);
    const std::uint64_t max_edges = pair_count(instance.node_count) * 3; // repeats allowed
    const std::uint64_t edge_count = draw(1, 0) % (max_edges + 1);
    instance.edges.reserve(edge_count);
    for (std::uint64_t i = 0; i < edge_count; ++i) {
        auto a = static_cast<std::uint32_t>(draw(2, i) % instance.node_count);
        auto b = static_cast<std::uint32_t>(draw(3, i) % (instance.node_count - 1));
        if (b >= a) ++b; // uniform over the other nodes, never a self-edge
        instance.edges.push_back(TraceEdge{
            std::min(a, b), std::max(a, b),
            static_cast<std::int64_t>(draw(4, i) % static_cast<std::uint64_t>(max_step + 1))});
    }

    const std::uint64_t seed_count = 1 + draw(5, 0) % 3;
    for (std::uint64_t i = 0; i < seed_count; ++i)
        instance.seeds.push_back(static_cast<std::size_t>(draw(6, i) % instance.node_count));
    std::sort(instance.seeds.begin(), instance.seeds.end());
    instance.seeds.erase(std::unique(instance.seeds.begin(), instance.seeds.end()),
                         instance.seeds.end());
    return instance;
}

} // namespace ctsim
