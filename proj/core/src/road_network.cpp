#include "ridesim/road_network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <json.hpp>

namespace ridesim {

NodeIndex RoadGraph::add_node(std::string id, LatLon pos) {
    if (node_by_id_.contains(id)) throw Error("duplicate node id: " + id);
    const auto idx = static_cast<NodeIndex>(nodes_.size());
    node_by_id_.emplace(id, idx);
    nodes_.push_back(GraphNode{std::move(id), pos});
    out_edges_.emplace_back();
    return idx;
}

EdgeIndex RoadGraph::add_edge(std::string id, std::string_view from_id, std::string_view to_id,
                              double length_m, double freeflow_mps) {
    if (edge_by_id_.contains(id)) throw Error("duplicate edge id: " + id);
    const NodeIndex from = find_node(from_id);
    if (from == kInvalidNode) {
        throw Error("edge " + id + ": unknown from-node '" + std::string(from_id) + "'");
    }
    const NodeIndex to = find_node(to_id);
    if (to == kInvalidNode) {
        throw Error("edge " + id + ": unknown to-node '" + std::string(to_id) + "'");
    }
    if (!(length_m > 0)) throw Error("edge " + id + ": length must be > 0");
    if (!(freeflow_mps > 0)) throw Error("edge " + id + ": freeflow speed must be > 0");
    const auto idx = static_cast<EdgeIndex>(edges_.size());
    edge_by_id_.emplace(id, idx);
    edges_.push_back(GraphEdge{std::move(id), from, to, length_m, freeflow_mps});
    out_edges_[static_cast<std::size_t>(from)].push_back(idx);
    return idx;
}

namespace {

// Marks everything reachable from node 0 following edges via `next`.
template <typename NextFn>
std::vector<char> reach_from_zero(std::size_t n, NextFn next) {
    std::vector<char> seen(n, 0);
    if (n == 0) return seen;
    std::deque<NodeIndex> frontier{0};
    seen[0] = 1;
    while (!frontier.empty()) {
        const NodeIndex u = frontier.front();
        frontier.pop_front();
        for (NodeIndex v : next(u)) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                frontier.push_back(v);
            }
        }
    }
    return seen;
}

}  // namespace

void RoadGraph::validate() const {
    if (nodes_.empty()) throw Error("graph has no nodes");
    if (edges_.empty()) throw Error("graph has no edges");

    // Strong connectivity: forward and reverse reachability from node 0.
    std::vector<std::vector<NodeIndex>> fwd(nodes_.size()), rev(nodes_.size());
    for (const GraphEdge& e : edges_) {
        fwd[static_cast<std::size_t>(e.from)].push_back(e.to);
        rev[static_cast<std::size_t>(e.to)].push_back(e.from);
    }
    const auto seen_fwd = reach_from_zero(nodes_.size(), [&](NodeIndex u) -> const std::vector<NodeIndex>& {
        return fwd[static_cast<std::size_t>(u)];
    });
    const auto seen_rev = reach_from_zero(nodes_.size(), [&](NodeIndex u) -> const std::vector<NodeIndex>& {
        return rev[static_cast<std::size_t>(u)];
    });
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!seen_fwd[i]) {
            throw Error("graph is not strongly connected: node '" + nodes_[i].id +
                        "' is unreachable from '" + nodes_[0].id + "'");
        }
        if (!seen_rev[i]) {
            throw Error("graph is not strongly connected: node '" + nodes_[0].id +
                        "' is unreachable from '" + nodes_[i].id + "'");
        }
    }
}

NodeIndex RoadGraph::find_node(std::string_view id) const {
    auto it = node_by_id_.find(std::string(id));
    return it == node_by_id_.end() ? kInvalidNode : it->second;
}

EdgeIndex RoadGraph::find_edge(std::string_view id) const {
    auto it = edge_by_id_.find(std::string(id));
    return it == edge_by_id_.end() ? kInvalidEdge : it->second;
}

NodeIndex RoadGraph::require_node(std::string_view id) const {
    const NodeIndex n = find_node(id);
    if (n == kInvalidNode) throw Error("unknown node id: '" + std::string(id) + "'");
    return n;
}

EdgeIndex RoadGraph::require_edge(std::string_view id) const {
    const EdgeIndex e = find_edge(id);
    if (e == kInvalidEdge) throw Error("unknown edge id: '" + std::string(id) + "'");
    return e;
}

NodeIndex RoadGraph::nearest_node(const LatLon& p) const {
    if (nodes_.empty()) throw Error("nearest_node on empty graph");
    NodeIndex best = 0;
    double best_dist = haversine_m(p, nodes_[0].pos);
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        const double d = haversine_m(p, nodes_[i].pos);
        if (d < best_dist ||
            (d == best_dist && nodes_[i].id < nodes_[static_cast<std::size_t>(best)].id)) {
            best = static_cast<NodeIndex>(i);
            best_dist = d;
        }
    }
    return best;
}

RoadGraph RoadGraph::load(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw Error("graph file " + path + ": " + e.what());
    }
    RoadGraph g;
    try {
        if (!doc.contains("nodes") || !doc.contains("edges")) {
            throw Error("expected top-level 'nodes' and 'edges' arrays");
        }
        for (const auto& n : doc.at("nodes")) {
            std::string id = n.at("id").is_string() ? n.at("id").get<std::string>()
                                                    : n.at("id").dump();
            g.add_node(std::move(id), LatLon{n.at("lat").get<double>(), n.at("lon").get<double>()});
        }
        for (const auto& e : doc.at("edges")) {
            std::string id = e.at("id").is_string() ? e.at("id").get<std::string>()
                                                    : e.at("id").dump();
            std::string from = e.at("from").is_string() ? e.at("from").get<std::string>()
                                                        : e.at("from").dump();
            std::string to = e.at("to").is_string() ? e.at("to").get<std::string>()
                                                    : e.at("to").dump();
            g.add_edge(std::move(id), from, to, e.at("length_m").get<double>(),
                       e.at("speed_mps").get<double>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error("graph file " + path + ": " + e.what());
    } catch (const Error& e) {
        throw Error("graph file " + path + ": " + e.what());
    }
    try {
        g.validate();
    } catch (const Error& e) {
        throw Error("graph file " + path + ": " + e.what());
    }
    return g;
}

std::string RoadGraph::to_json_text() const {
    nlohmann::json doc;
    doc["nodes"] = nlohmann::json::array();
    for (const GraphNode& n : nodes_) {
        doc["nodes"].push_back({{"id", n.id}, {"lat", n.pos.lat}, {"lon", n.pos.lon}});
    }
    doc["edges"] = nlohmann::json::array();
    for (const GraphEdge& e : edges_) {
        doc["edges"].push_back({{"id", e.id},
                                {"from", nodes_[static_cast<std::size_t>(e.from)].id},
                                {"to", nodes_[static_cast<std::size_t>(e.to)].id},
                                {"length_m", e.length_m},
                                {"speed_mps", e.freeflow_mps}});
    }
    return doc.dump(2) + "\n";
}

void RoadGraph::save(const std::string& path) const {
    write_text_file(path, to_json_text());
}

SpeedOverlay::SpeedOverlay(const RoadGraph& graph, double max_speed_ratio)
    : graph_(&graph), cells_(graph.edge_count()), max_speed_ratio_(max_speed_ratio) {
    if (!(max_speed_ratio_ > 0)) throw Error("max_speed_ratio must be > 0");
}

ApplyResult SpeedOverlay::apply(const TrafficEvent& event) {
    const EdgeIndex e = graph_->require_edge(event.edge_id);
    if (event.speed_mps < 0) throw Error("traffic event on " + event.edge_id + ": negative speed");
    if (event.timestamp_s < 0) throw Error("traffic event on " + event.edge_id + ": negative timestamp");
    const GraphEdge& edge = graph_->edge(e);
    if (event.speed_mps > max_speed_ratio_ * edge.freeflow_mps) {
        return ApplyResult::Implausible;
    }
    Cell& cell = cells_[static_cast<std::size_t>(e)];
    if (cell.set) {
        // Newest observation wins; equal timestamps resolved by source tag.
        if (event.timestamp_s < cell.timestamp_s ||
            (event.timestamp_s == cell.timestamp_s && event.source <= cell.source)) {
            return ApplyResult::Stale;
        }
    }
    const double previous = effective_mps(e);
    cell.set = true;
    cell.speed_mps = event.speed_mps;
    cell.timestamp_s = event.timestamp_s;
    cell.source = event.source;
    if (effective_mps(e) != previous) ++version_;
    return ApplyResult::Applied;
}

double SpeedOverlay::effective_mps(EdgeIndex e) const {
    const Cell& cell = cells_[static_cast<std::size_t>(e)];
    return cell.set ? cell.speed_mps : graph_->edge(e).freeflow_mps;
}

void SpeedOverlay::reset() {
    bool any = false;
    for (const Cell& c : cells_) any = any || c.set;
    cells_.assign(graph_->edge_count(), Cell{});
    if (any) ++version_;
}

GridShape grid_shape(const GeoBox& box, double spacing_m) {
    if (!box.valid()) throw Error("degenerate bounding box");
    if (!(spacing_m > 0)) throw Error("grid spacing must be > 0");
    const double lat_extent = haversine_m({box.sw.lat, box.sw.lon}, {box.ne.lat, box.sw.lon});
    const double mid_lat = (box.sw.lat + box.ne.lat) / 2;
    const double lon_extent = haversine_m({mid_lat, box.sw.lon}, {mid_lat, box.ne.lon});
    const int lat_steps = std::max(1, static_cast<int>(std::llround(lat_extent / spacing_m)));
    const int lon_steps = std::max(1, static_cast<int>(std::llround(lon_extent / spacing_m)));
    return GridShape{lat_steps + 1, lon_steps + 1};
}

std::string grid_node_id(int row, int col) {
    return "n" + std::to_string(row) + "_" + std::to_string(col);
}

RoadGraph generate_grid_graph(const GridSpec& spec) {
    const GridShape shape = grid_shape(spec.box, spec.spacing_m);
    if (!(spec.default_speed_mps > 0)) throw Error("grid default speed must be > 0");

    // Corridor hops override the default speed in both directions.
    std::unordered_map<std::string, double> corridor_speed;
    for (const GridCorridor& corridor : spec.corridors) {
        if (!(corridor.speed_mps > 0)) throw Error("corridor speed must be > 0");
        for (std::size_t i = 0; i + 1 < corridor.node_path.size(); ++i) {
            const std::string& a = corridor.node_path[i];
            const std::string& b = corridor.node_path[i + 1];
            corridor_speed[a + "-" + b] = corridor.speed_mps;
            corridor_speed[b + "-" + a] = corridor.speed_mps;
        }
    }

    RoadGraph g;
    const double dlat = (spec.box.ne.lat - spec.box.sw.lat) / (shape.rows - 1);
    const double dlon = (spec.box.ne.lon - spec.box.sw.lon) / (shape.cols - 1);
    for (int r = 0; r < shape.rows; ++r) {
        for (int c = 0; c < shape.cols; ++c) {
            g.add_node(grid_node_id(r, c),
                       LatLon{spec.box.sw.lat + r * dlat, spec.box.sw.lon + c * dlon});
        }
    }

    std::size_t corridor_hits = 0;
    auto add_directed = [&](const std::string& a, const std::string& b) {
        const LatLon pa = g.node(g.require_node(a)).pos;
        const LatLon pb = g.node(g.require_node(b)).pos;
        double speed = spec.default_speed_mps;
        if (auto it = corridor_speed.find(a + "-" + b); it != corridor_speed.end()) {
            speed = it->second;
            ++corridor_hits;
        }
        g.add_edge(a + "-" + b, a, b, haversine_m(pa, pb), speed);
    };
    for (int r = 0; r < shape.rows; ++r) {
        for (int c = 0; c < shape.cols; ++c) {
            const std::string here = grid_node_id(r, c);
            if (c + 1 < shape.cols) {
                const std::string east = grid_node_id(r, c + 1);
                add_directed(here, east);
                add_directed(east, here);
            }
            if (r + 1 < shape.rows) {
                const std::string north = grid_node_id(r + 1, c);
                add_directed(here, north);
                add_directed(north, here);
            }
        }
    }
    if (corridor_hits != corridor_speed.size()) {
        throw Error("corridor path references node pairs that are not grid neighbors");
    }

    g.validate();
    return g;
}

}  // namespace ridesim
