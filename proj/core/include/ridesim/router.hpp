#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "ridesim/road_network.hpp"

namespace ridesim {

enum class TravelTimeMode {
    Freeflow,  // ignore the overlay; every edge at its free-flow speed
    Live,      // current overlay speeds; blocked edges untraversable
};

const char* to_string(TravelTimeMode mode);

/// Shortest-path travel times over the road graph. Each edge costs
/// length / effective-speed for the queried mode. Single-source results are
/// computed on demand and cached; the live cache is dropped whenever the
/// overlay version moves.
///
/// Not thread-safe: callers serialize queries (the engine is single-threaded
/// by design, queries are read-only with respect to the overlay).
class Router {
public:
    Router(const RoadGraph& graph, const SpeedOverlay& overlay);

    /// Seconds from `from` to `to`, kUnreachable if no route exists (only
    /// possible in Live mode when blocked edges cut the graph).
    double travel_time(TravelTimeMode mode, NodeIndex from, NodeIndex to) const;

    /// Edge sequence of the shortest path; empty when from == to, nullopt
    /// when unreachable. Deterministic among equal-cost paths.
    std::optional<std::vector<EdgeIndex>> path(TravelTimeMode mode, NodeIndex from,
                                               NodeIndex to) const;

    const RoadGraph& graph() const { return *graph_; }
    const SpeedOverlay& overlay() const { return *overlay_; }

    std::size_t cache_size(TravelTimeMode mode) const;

private:
    struct Sssp {
        std::vector<double> dist;
        std::vector<EdgeIndex> parent_edge;
    };

    const Sssp& single_source(TravelTimeMode mode, NodeIndex src) const;
    double edge_speed(TravelTimeMode mode, EdgeIndex e) const;

    const RoadGraph* graph_;
    const SpeedOverlay* overlay_;
    mutable std::unordered_map<NodeIndex, Sssp> freeflow_cache_;
    mutable std::unordered_map<NodeIndex, Sssp> live_cache_;
    mutable std::uint64_t live_cache_version_ = 0;
};

}  // namespace ridesim
