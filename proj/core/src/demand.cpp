#include "ridesim/demand.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace ridesim {

std::vector<Region> builtin_regions() {
    // Brainport table: bbox NE / SW, vehicle-init and origin probabilities,
    // destination row in region order E, L, H, N, G, W. Row L's destination
    // entries sum to 0.73 as configured; the sampler renormalizes.
    return {
        {"E", {{51.4584, 5.5157}, {51.4154, 5.4453}}, 0.30, 0.30, {0.30, 0.30, 0.05, 0.15, 0.15, 0.05}},
        {"L", {{51.4927, 5.5323}, {51.4106, 5.4310}}, 0.20, 0.20, {0.03, 0.30, 0.05, 0.15, 0.15, 0.05}},
        {"H", {{51.5016, 5.7155}, {51.4511, 5.6008}}, 0.20, 0.20, {0.10, 0.10, 0.60, 0.05, 0.05, 0.10}},
        {"N", {{51.4814, 5.5756}, {51.4566, 5.5302}}, 0.10, 0.10, {0.30, 0.30, 0.05, 0.20, 0.05, 0.10}},
        {"G", {{51.4366, 5.5831}, {51.4068, 5.5342}}, 0.10, 0.10, {0.30, 0.30, 0.05, 0.05, 0.20, 0.10}},
        {"W", {{51.5021, 5.7249}, {51.4018, 5.3950}}, 0.10, 0.10, {0.30, 0.20, 0.20, 0.10, 0.10, 0.10}},
    };
}

std::vector<Region> load_regions(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw Error("region file " + path + ": " + e.what());
    }
    std::vector<Region> regions;
    try {
        for (const auto& r : doc.at("regions")) {
            Region region;
            region.code = r.at("code").get<std::string>();
            region.box.ne = {r.at("ne_lat").get<double>(), r.at("ne_lon").get<double>()};
            region.box.sw = {r.at("sw_lat").get<double>(), r.at("sw_lon").get<double>()};
            region.vehicle_prob = r.at("vehicle").get<double>();
            region.origin_prob = r.at("origin").get<double>();
            region.destination_row = r.at("destination").get<std::vector<double>>();
            regions.push_back(std::move(region));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error("region file " + path + ": " + e.what());
    }
    return regions;
}

void save_regions(const std::string& path, const std::vector<Region>& regions) {
    nlohmann::json doc;
    doc["regions"] = nlohmann::json::array();
    for (const Region& r : regions) {
        doc["regions"].push_back({{"code", r.code},
                                  {"ne_lat", r.box.ne.lat},
                                  {"ne_lon", r.box.ne.lon},
                                  {"sw_lat", r.box.sw.lat},
                                  {"sw_lon", r.box.sw.lon},
                                  {"vehicle", r.vehicle_prob},
                                  {"origin", r.origin_prob},
                                  {"destination", r.destination_row}});
    }
    write_text_file(path, doc.dump(2) + "\n");
}

namespace {

constexpr double kProbTol = 1e-9;

double column_sum(const std::vector<Region>& regions, double Region::*member) {
    double sum = 0;
    for (const Region& r : regions) sum += r.*member;
    return sum;
}

}  // namespace

RegionSampler::RegionSampler(std::vector<Region> regions) : regions_(std::move(regions)) {
    if (regions_.empty()) throw Error("region table is empty");
    for (const Region& r : regions_) {
        if (!r.box.valid()) throw Error("region " + r.code + ": NE corner must be north-east of SW");
        if (r.destination_row.size() != regions_.size()) {
            throw Error("region " + r.code + ": destination row has wrong length");
        }
        double row_sum = 0;
        for (double p : r.destination_row) {
            if (p < 0) throw Error("region " + r.code + ": negative destination probability");
            row_sum += p;
        }
        if (row_sum <= 0) throw Error("region " + r.code + ": destination row sums to zero");
    }
    if (std::abs(column_sum(regions_, &Region::vehicle_prob) - 1.0) > kProbTol) {
        throw Error("vehicle-init probabilities must sum to 1");
    }
    if (std::abs(column_sum(regions_, &Region::origin_prob) - 1.0) > kProbTol) {
        throw Error("origin probabilities must sum to 1");
    }
}

std::size_t RegionSampler::sample_vehicle_region(Rng& rng) const {
    std::vector<double> w(regions_.size());
    for (std::size_t i = 0; i < regions_.size(); ++i) w[i] = regions_[i].vehicle_prob;
    return rng.categorical(w);
}

std::size_t RegionSampler::sample_origin_region(Rng& rng) const {
    std::vector<double> w(regions_.size());
    for (std::size_t i = 0; i < regions_.size(); ++i) w[i] = regions_[i].origin_prob;
    return rng.categorical(w);
}

std::size_t RegionSampler::sample_destination_region(std::size_t origin, Rng& rng) const {
    return rng.categorical(regions_[origin].destination_row);
}

LatLon RegionSampler::sample_point(std::size_t region, Rng& rng) const {
    const GeoBox& box = regions_[region].box;
    const double lat = rng.uniform(box.sw.lat, box.ne.lat);
    const double lon = rng.uniform(box.sw.lon, box.ne.lon);
    return {lat, lon};
}

std::vector<double> RegionSampler::destination_distribution(std::size_t origin) const {
    std::vector<double> row = regions_[origin].destination_row;
    double sum = 0;
    for (double p : row) sum += p;
    for (double& p : row) p /= sum;
    return row;
}

RequestTrace generate_trace(const RegionSampler& sampler, const TraceSpec& spec,
                            const RoadGraph* graph) {
    if (!(spec.window_s > 0)) throw Error("trace window must be > 0");
    if (spec.min_per_window < 0 || spec.max_per_window < spec.min_per_window) {
        throw Error("requests-per-window range is empty");
    }
    if (!(spec.max_wait_s > 0)) throw Error("max wait must be > 0");
    const double windows_exact = spec.horizon_s / spec.window_s;
    const auto windows = static_cast<std::int64_t>(std::llround(windows_exact));
    if (windows <= 0 || std::abs(windows_exact - static_cast<double>(windows)) > 1e-9) {
        throw Error("horizon must be a positive multiple of the window length");
    }

    Rng rng(spec.seed);
    RequestTrace trace;
    trace.seed = spec.seed;
    trace.horizon_s = spec.horizon_s;
    for (std::int64_t w = 0; w < windows; ++w) {
        const double window_start = static_cast<double>(w) * spec.window_s;
        const auto count = rng.uniform_int(spec.min_per_window, spec.max_per_window);
        for (std::int64_t k = 0; k < count; ++k) {
            const std::size_t origin_region = sampler.sample_origin_region(rng);
            const LatLon origin = sampler.sample_point(origin_region, rng);
            std::size_t dest_region = sampler.sample_destination_region(origin_region, rng);
            LatLon destination = sampler.sample_point(dest_region, rng);
            if (graph != nullptr) {
                // Zero-length trips (both endpoints on the same node) are
                // redrawn: the trace must stay meaningful after mapping.
                const NodeIndex origin_node = graph->nearest_node(origin);
                int attempts = 0;
                while (graph->nearest_node(destination) == origin_node) {
                    if (++attempts > 100) {
                        throw Error("could not draw a destination distinct from origin node; "
                                    "graph too coarse for the region table");
                    }
                    dest_region = sampler.sample_destination_region(origin_region, rng);
                    destination = sampler.sample_point(dest_region, rng);
                }
            }
            TripRequest req;
            req.origin = origin;
            req.destination = destination;
            req.submission_s = rng.uniform(window_start, window_start + spec.window_s);
            req.pickup_deadline_s = req.submission_s + spec.max_wait_s;
            trace.requests.push_back(req);
        }
    }
    std::stable_sort(trace.requests.begin(), trace.requests.end(),
                     [](const TripRequest& a, const TripRequest& b) {
                         return a.submission_s < b.submission_s;
                     });
    for (std::size_t i = 0; i < trace.requests.size(); ++i) {
        trace.requests[i].id = static_cast<int>(i);
    }
    return trace;
}

std::vector<LatLon> init_vehicle_positions(const RegionSampler& sampler, int fleet_size,
                                           std::uint64_t seed) {
    if (fleet_size < 1) throw Error("fleet size must be >= 1");
    Rng rng(seed);
    std::vector<LatLon> positions;
    positions.reserve(static_cast<std::size_t>(fleet_size));
    for (int i = 0; i < fleet_size; ++i) {
        const std::size_t region = sampler.sample_vehicle_region(rng);
        positions.push_back(sampler.sample_point(region, rng));
    }
    return positions;
}

void RequestTrace::save(const std::string& path) const {
    std::ostringstream out;
    out << "request_id,submission_s,origin_lat,origin_lon,dest_lat,dest_lon\n";
    for (const TripRequest& r : requests) {
        out << r.id << ',' << num_to_string(r.submission_s) << ',' << num_to_string(r.origin.lat)
            << ',' << num_to_string(r.origin.lon) << ',' << num_to_string(r.destination.lat)
            << ',' << num_to_string(r.destination.lon) << '\n';
    }
    write_text_file(path, out.str());
}

RequestTrace RequestTrace::load(const std::string& path, double max_wait_s) {
    if (!(max_wait_s > 0)) throw Error("max wait must be > 0");
    const std::string text = read_text_file(path);
    RequestTrace trace;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    double prev_submission = -1;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        const std::string_view line(text.data() + pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1 && line.starts_with("request_id")) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 6) {
            throw Error("trace " + path + " line " + std::to_string(line_no) +
                        ": expected 6 fields, got " + std::to_string(fields.size()));
        }
        TripRequest r;
        r.id = static_cast<int>(parse_int(fields[0], "request_id"));
        r.submission_s = parse_double(fields[1], "submission_s");
        r.origin = {parse_double(fields[2], "origin_lat"), parse_double(fields[3], "origin_lon")};
        r.destination = {parse_double(fields[4], "dest_lat"), parse_double(fields[5], "dest_lon")};
        r.pickup_deadline_s = r.submission_s + max_wait_s;
        if (r.submission_s < prev_submission) {
            throw Error("trace " + path + " line " + std::to_string(line_no) +
                        ": submission times must be non-decreasing");
        }
        prev_submission = r.submission_s;
        trace.requests.push_back(r);
        trace.horizon_s = std::max(trace.horizon_s, r.submission_s);
    }
    return trace;
}

}  // namespace ridesim
