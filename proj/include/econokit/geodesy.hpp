#pragma once

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "econokit/dates.hpp"
#include "econokit/ingest.hpp"

namespace econokit {

inline constexpr double kEarthRadiusKm = 6371.2;

// Latitude/longitude in degrees, lat in [-90, 90], lon in [-180, 180].
struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;
};

// Great-circle distance on the spherical Earth model, in km. Uses the
// two-argument arctangent form, which stays correct for obtuse central
// angles (beyond the quarter circumference) where the plain arctan flips
// quadrant.
double great_circle_km(GeoPoint a, GeoPoint b);

// IATA code -> coordinates, parsed from a `iata,lat,lon` sidecar.
class AirportTable {
public:
    static AirportTable parse(std::istream& in);

    void add(std::string iata, GeoPoint p);
    std::optional<GeoPoint> find(std::string_view iata) const;
    std::size_t size() const { return coords_.size(); }

private:
    std::unordered_map<std::string, GeoPoint> coords_;
};

struct PriceDistancePoint {
    Date departure_date;
    std::string dep_iata;
    std::string arr_iata;
    Cabin cabin = Cabin::Economy;
    std::string carrier;
    double distance_km = 0.0;
    double price = 0.0;
    bool zero_distance = false;  // identical endpoint coordinates, suspicious
};

struct UnknownAirport {
    std::size_t record_index = 0;
    std::string iata;
};

struct PriceDistanceResult {
    std::vector<PriceDistancePoint> points;  // input order preserved
    std::vector<UnknownAirport> errors;      // collected, not fatal
};

PriceDistanceResult price_distance_pairs(std::span<const FlightRecord> flights,
                                         const AirportTable& airports,
                                         std::optional<Cabin> cabin_filter = std::nullopt,
                                         std::optional<Date> departure_filter = std::nullopt);

}  // namespace econokit
