#include "ridesim/router.hpp"

#include <algorithm>
#include <queue>

namespace ridesim {

const char* to_string(TravelTimeMode mode) {
    return mode == TravelTimeMode::Freeflow ? "freeflow" : "live";
}

Router::Router(const RoadGraph& graph, const SpeedOverlay& overlay)
    : graph_(&graph), overlay_(&overlay) {}

double Router::edge_speed(TravelTimeMode mode, EdgeIndex e) const {
    return mode == TravelTimeMode::Freeflow ? graph_->edge(e).freeflow_mps
                                            : overlay_->effective_mps(e);
}

const Router::Sssp& Router::single_source(TravelTimeMode mode, NodeIndex src) const {
    auto& cache = mode == TravelTimeMode::Freeflow ? freeflow_cache_ : live_cache_;
    if (mode == TravelTimeMode::Live && live_cache_version_ != overlay_->version()) {
        live_cache_.clear();
        live_cache_version_ = overlay_->version();
    }
    if (auto it = cache.find(src); it != cache.end()) return it->second;

    Sssp result;
    result.dist.assign(graph_->node_count(), kUnreachable);
    result.parent_edge.assign(graph_->node_count(), kInvalidEdge);
    result.dist[static_cast<std::size_t>(src)] = 0;

    // (distance, node) keys make the pop order, and therefore the parent
    // tree, deterministic when distances tie.
    using Item = std::pair<double, NodeIndex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0.0, src);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > result.dist[static_cast<std::size_t>(u)]) continue;
        for (EdgeIndex ei : graph_->out_edges(u)) {
            const double speed = edge_speed(mode, ei);
            if (!(speed > 0)) continue;  // blocked
            const GraphEdge& e = graph_->edge(ei);
            const double nd = d + e.length_m / speed;
            if (nd < result.dist[static_cast<std::size_t>(e.to)]) {
                result.dist[static_cast<std::size_t>(e.to)] = nd;
                result.parent_edge[static_cast<std::size_t>(e.to)] = ei;
                heap.emplace(nd, e.to);
            }
        }
    }
    return cache.emplace(src, std::move(result)).first->second;
}

double Router::travel_time(TravelTimeMode mode, NodeIndex from, NodeIndex to) const {
    return single_source(mode, from).dist[static_cast<std::size_t>(to)];
}

std::optional<std::vector<EdgeIndex>> Router::path(TravelTimeMode mode, NodeIndex from,
                                                   NodeIndex to) const {
    const Sssp& sssp = single_source(mode, from);
    if (sssp.dist[static_cast<std::size_t>(to)] == kUnreachable) return std::nullopt;
    std::vector<EdgeIndex> edges;
    NodeIndex cur = to;
    while (cur != from) {
        const EdgeIndex ei = sssp.parent_edge[static_cast<std::size_t>(cur)];
        edges.push_back(ei);
        cur = graph_->edge(ei).from;
    }
    std::reverse(edges.begin(), edges.end());
    return edges;
}

std::size_t Router::cache_size(TravelTimeMode mode) const {
    return mode == TravelTimeMode::Freeflow ? freeflow_cache_.size() : live_cache_.size();
}

}  // namespace ridesim
