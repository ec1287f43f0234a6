#include "ridesim/geo.hpp"

#include <cmath>

namespace ridesim {

double haversine_m(const LatLon& a, const LatLon& b) {
    constexpr double kDegToRad = 0.017453292519943295;
    const double lat1 = a.lat * kDegToRad;
    const double lat2 = b.lat * kDegToRad;
    const double dlat = (b.lat - a.lat) * kDegToRad;
    const double dlon = (b.lon - a.lon) * kDegToRad;
    const double s1 = std::sin(dlat / 2);
    const double s2 = std::sin(dlon / 2);
    const double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
    return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

}  // namespace ridesim
