#include "econokit/geodesy.hpp"

#include <cmath>
#include <numbers>

#include "econokit/csv.hpp"
#include "econokit/errors.hpp"

namespace econokit {

double great_circle_km(GeoPoint a, GeoPoint b) {
    constexpr double rad = std::numbers::pi / 180.0;
    const double phi_s = a.lat * rad;
    const double phi_f = b.lat * rad;
    const double dlam = (a.lon - b.lon) * rad;
    const double num = std::hypot(std::cos(phi_f) * std::sin(dlam),
                                  std::cos(phi_s) * std::sin(phi_f) -
                                      std::sin(phi_s) * std::cos(phi_f) * std::cos(dlam));
    const double den =
        std::sin(phi_s) * std::sin(phi_f) + std::cos(phi_s) * std::cos(phi_f) * std::cos(dlam);
    return kEarthRadiusKm * std::atan2(num, den);
}

AirportTable AirportTable::parse(std::istream& in) {
    CsvReader reader(in);
    std::vector<std::string> fields;
    std::size_t line = 0;
    if (!reader.next(fields, line)) {
        throw MalformedRow("no records: input is empty, missing the header row", 1);
    }
    const std::vector<std::string> header = {"iata", "lat", "lon"};
    if (fields != header) {
        throw MalformedRow("header must be exactly `iata,lat,lon`", line);
    }
    AirportTable table;
    while (reader.next(fields, line)) {
        if (fields.size() != 3) {
            throw MalformedRow("expected 3 columns, got " + std::to_string(fields.size()), line);
        }
        if (fields[0].empty()) {
            throw MalformedRow("empty IATA code", line);
        }
        char* end = nullptr;
        const double lat = std::strtod(fields[1].c_str(), &end);
        if (end != fields[1].c_str() + fields[1].size() || !std::isfinite(lat)) {
            throw MalformedRow("invalid latitude `" + fields[1] + "`", line);
        }
        const double lon = std::strtod(fields[2].c_str(), &end);
        if (end != fields[2].c_str() + fields[2].size() || !std::isfinite(lon)) {
            throw MalformedRow("invalid longitude `" + fields[2] + "`", line);
        }
        if (lat < -90.0 || lat > 90.0) {
            throw MalformedRow("latitude out of [-90,90]", line);
        }
        if (lon < -180.0 || lon > 180.0) {
            throw MalformedRow("longitude out of [-180,180]", line);
        }
        if (table.coords_.count(fields[0]) != 0) {
            throw DuplicateKey("duplicate IATA code " + fields[0], line);
        }
        table.add(fields[0], GeoPoint{lat, lon});
    }
    return table;
}

void AirportTable::add(std::string iata, GeoPoint p) {
    coords_.emplace(std::move(iata), p);
}

std::optional<GeoPoint> AirportTable::find(std::string_view iata) const {
    auto it = coords_.find(std::string(iata));
    return it == coords_.end() ? std::nullopt : std::optional<GeoPoint>(it->second);
}

PriceDistanceResult price_distance_pairs(std::span<const FlightRecord> flights,
                                         const AirportTable& airports,
                                         std::optional<Cabin> cabin_filter,
                                         std::optional<Date> departure_filter) {
    PriceDistanceResult result;
    for (std::size_t idx = 0; idx < flights.size(); ++idx) {
        const auto& f = flights[idx];
        if (cabin_filter && f.cabin != *cabin_filter) {
            continue;
        }
        if (departure_filter && f.departure_date != *departure_filter) {
            continue;
        }
        const auto dep = airports.find(f.dep_iata);
        const auto arr = airports.find(f.arr_iata);
        bool missing = false;
        if (!dep) {
            result.errors.push_back(UnknownAirport{idx, f.dep_iata});
            missing = true;
        }
        if (!arr) {
            result.errors.push_back(UnknownAirport{idx, f.arr_iata});
            missing = true;
        }
        if (missing) {
            continue;
        }
        PriceDistancePoint point;
        point.departure_date = f.departure_date;
        point.dep_iata = f.dep_iata;
        point.arr_iata = f.arr_iata;
        point.cabin = f.cabin;
        point.carrier = f.carrier;
        point.distance_km = great_circle_km(*dep, *arr);
        point.price = f.price;
        point.zero_distance = point.distance_km == 0.0;
        result.points.push_back(std::move(point));
    }
    return result;
}

}  // namespace econokit
