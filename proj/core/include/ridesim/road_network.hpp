#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ridesim/geo.hpp"
#include "ridesim/util.hpp"

namespace ridesim {

using NodeIndex = std::int32_t;
using EdgeIndex = std::int32_t;
inline constexpr NodeIndex kInvalidNode = -1;
inline constexpr EdgeIndex kInvalidEdge = -1;
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct GraphNode {
    std::string id;
    LatLon pos;
};

struct GraphEdge {
    std::string id;
    NodeIndex from = kInvalidNode;
    NodeIndex to = kInvalidNode;
    double length_m = 0;
    double freeflow_mps = 0;
};

/// Directed road network. Node and edge ids are the external names used in
/// files and error messages; all in-memory references are dense indices.
///
/// A graph is usable once validate() has passed: ids unique, endpoints
/// resolve, lengths and speeds positive, and the graph strongly connected
/// (every trip must be routable).
class RoadGraph {
public:
    NodeIndex add_node(std::string id, LatLon pos);
    EdgeIndex add_edge(std::string id, std::string_view from_id, std::string_view to_id,
                       double length_m, double freeflow_mps);

    void validate() const;

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const GraphNode& node(NodeIndex i) const { return nodes_[static_cast<std::size_t>(i)]; }
    const GraphEdge& edge(EdgeIndex i) const { return edges_[static_cast<std::size_t>(i)]; }
    std::span<const EdgeIndex> out_edges(NodeIndex i) const {
        return out_edges_[static_cast<std::size_t>(i)];
    }

    NodeIndex find_node(std::string_view id) const;  // kInvalidNode if absent
    EdgeIndex find_edge(std::string_view id) const;  // kInvalidEdge if absent
    NodeIndex require_node(std::string_view id) const;
    EdgeIndex require_edge(std::string_view id) const;

    /// Node minimizing haversine distance to p; ties go to the
    /// lexicographically smaller node id.
    NodeIndex nearest_node(const LatLon& p) const;

    static RoadGraph load(const std::string& path);
    void save(const std::string& path) const;
    std::string to_json_text() const;

private:
    std::vector<GraphNode> nodes_;
    std::vector<GraphEdge> edges_;
    std::vector<std::vector<EdgeIndex>> out_edges_;
    std::unordered_map<std::string, NodeIndex> node_by_id_;
    std::unordered_map<std::string, EdgeIndex> edge_by_id_;
};

/// One observed speed on one edge. Speed 0 means the edge is blocked.
struct TrafficEvent {
    double timestamp_s = 0;
    std::string edge_id;
    double speed_mps = 0;
    std::string source;  // camera or vehicle identifier
};

enum class ApplyResult {
    Applied,      // became the edge's effective speed
    Stale,        // an equal-or-newer observation already holds
    Implausible,  // speed above the plausibility ceiling, rejected
};

/// Live per-edge speeds layered over the graph's free-flow speeds. An edge's
/// effective speed is the latest applied observation, else free flow. Among
/// observations with equal timestamps the lexicographically greater source
/// tag wins, so replaying a log yields the same overlay in any order.
class SpeedOverlay {
public:
    explicit SpeedOverlay(const RoadGraph& graph, double max_speed_ratio = 2.0);

    /// Throws Error on an unknown edge id or a negative speed.
    ApplyResult apply(const TrafficEvent& event);

    double effective_mps(EdgeIndex e) const;
    bool has_override(EdgeIndex e) const { return cells_[static_cast<std::size_t>(e)].set; }
    bool blocked(EdgeIndex e) const { return effective_mps(e) <= 0.0; }

    /// Bumped every time an effective speed actually changes; consumers use
    /// it to invalidate shortest-path caches.
    std::uint64_t version() const { return version_; }

    const RoadGraph& graph() const { return *graph_; }
    double max_speed_ratio() const { return max_speed_ratio_; }
    void reset();

private:
    struct Cell {
        double speed_mps = 0;
        double timestamp_s = 0;
        std::string source;
        bool set = false;
    };

    const RoadGraph* graph_;
    std::vector<Cell> cells_;
    double max_speed_ratio_;
    std::uint64_t version_ = 0;
};

struct GridCorridor {
    std::vector<std::string> node_path;  // consecutive node ids; both directions of each hop
    double speed_mps = 0;
};

struct GridSpec {
    GeoBox box;
    double spacing_m = 1000;
    double default_speed_mps = 13.9;
    std::vector<GridCorridor> corridors;
};

/// Row/column extent of the grid a GridSpec produces. Row 0 is the southern
/// edge, column 0 the western edge.
struct GridShape {
    int rows = 0;
    int cols = 0;
};
GridShape grid_shape(const GeoBox& box, double spacing_m);
std::string grid_node_id(int row, int col);

/// Planar grid with bidirectional edges covering the bounding box. Node
/// count follows from the haversine extent divided by the spacing; corridor
/// hops get the corridor speed.
RoadGraph generate_grid_graph(const GridSpec& spec);

}  // namespace ridesim
