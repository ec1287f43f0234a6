#pragma once

namespace ridesim {

inline constexpr double kEarthRadiusM = 6371000.0;

struct LatLon {
    double lat = 0;  // degrees
    double lon = 0;  // degrees

    bool operator==(const LatLon&) const = default;
};

/// Great-circle distance in meters (haversine, R = 6,371,000 m).
double haversine_m(const LatLon& a, const LatLon& b);

/// Axis-aligned lat/lon rectangle given by its NE and SW corners.
struct GeoBox {
    LatLon ne;
    LatLon sw;

    bool valid() const { return ne.lat > sw.lat && ne.lon > sw.lon; }
    bool contains(const LatLon& p) const {
        return p.lat >= sw.lat && p.lat <= ne.lat && p.lon >= sw.lon && p.lon <= ne.lon;
    }
};

}  // namespace ridesim
