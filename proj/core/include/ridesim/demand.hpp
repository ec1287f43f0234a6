#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ridesim/geo.hpp"
#include "ridesim/rng.hpp"
#include "ridesim/road_network.hpp"

namespace ridesim {

/// One demand region: bounding box plus its column of the regional
/// probability table. `destination_row` holds the configured values verbatim;
/// rows that do not sum to 1 are renormalized at sampling time.
struct Region {
    std::string code;
    GeoBox box;
    double vehicle_prob = 0;                // initial vehicle location
    double origin_prob = 0;                 // trip origin
    std::vector<double> destination_row;    // P(destination region | this origin)
};

/// The six Brainport regions (Eindhoven, Larger Eindhoven, Helmond, Neunen,
/// Geldrop, Whole area) with their configured probabilities.
std::vector<Region> builtin_regions();

std::vector<Region> load_regions(const std::string& path);
void save_regions(const std::string& path, const std::vector<Region>& regions);

/// Validated sampling view over a region table.
class RegionSampler {
public:
    explicit RegionSampler(std::vector<Region> regions);

    std::size_t sample_vehicle_region(Rng& rng) const;
    std::size_t sample_origin_region(Rng& rng) const;
    std::size_t sample_destination_region(std::size_t origin, Rng& rng) const;
    LatLon sample_point(std::size_t region, Rng& rng) const;

    /// Renormalized destination row for one origin (sums to 1).
    std::vector<double> destination_distribution(std::size_t origin) const;

    const std::vector<Region>& regions() const { return regions_; }
    std::size_t size() const { return regions_.size(); }

private:
    std::vector<Region> regions_;
};

struct TripRequest {
    int id = -1;
    LatLon origin;
    LatLon destination;
    double submission_s = 0;
    double pickup_deadline_s = 0;  // submission + max wait
    int party_size = 1;

    bool operator==(const TripRequest&) const = default;
};

struct RequestTrace {
    std::vector<TripRequest> requests;  // ordered by submission time
    std::uint64_t seed = 0;
    double horizon_s = 0;

    void save(const std::string& path) const;
    static RequestTrace load(const std::string& path, double max_wait_s);
};

struct TraceSpec {
    double horizon_s = 3600;
    double window_s = 10;
    int min_per_window = 1;
    int max_per_window = 4;
    double max_wait_s = 420;
    std::uint64_t seed = 1;
};

/// Draws a full request trace: per window a uniform request count, origin
/// region by the origin column, destination region by the origin's row,
/// points uniform in the region boxes, submission times uniform in the
/// window. When `graph` is given, destinations that would map to the same
/// node as the origin are redrawn.
RequestTrace generate_trace(const RegionSampler& sampler, const TraceSpec& spec,
                            const RoadGraph* graph = nullptr);

/// Initial fleet positions: region by the vehicle column, point uniform in
/// the region box.
std::vector<LatLon> init_vehicle_positions(const RegionSampler& sampler, int fleet_size,
                                           std::uint64_t seed);

}  // namespace ridesim
