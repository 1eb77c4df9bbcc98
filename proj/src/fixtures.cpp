#include "econokit/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "econokit/csv.hpp"
#include "econokit/dates.hpp"
#include "econokit/errors.hpp"
#include "econokit/geodesy.hpp"
#include "econokit/ingest.hpp"

namespace econokit {

namespace {

Date at(const char* iso) { return *Date::try_parse(iso); }

// Explicit draws on top of mt19937_64 keep the byte output independent of
// the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {  // (0, 1]
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }
    double normal(double mu, double sigma) {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return mu + sigma * std::sqrt(-2.0 * std::log(u1)) *
                        std::cos(2.0 * std::numbers::pi * u2);
    }
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }
    std::size_t weighted(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) {
            total += w;
        }
        double r = uniform01() * total;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            r -= weights[i];
            if (r <= 0.0) {
                return i;
            }
        }
        return weights.size() - 1;
    }

private:
    std::mt19937_64 engine_;
};

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << content;
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

bool is_weekday(Date d) {
    // 1970-01-01 was a Thursday; Monday..Friday
    const int wd = ((d.days() % 7) + 7 + 3) % 7;  // 0 = Monday
    return wd < 5;
}

std::size_t make_ohlc(const std::filesystem::path& path, Rng& rng) {
    struct Plan {
        const char* ticker;
        std::vector<std::pair<int, double>> regimes;  // (days, sigma)
    };
    const Plan plans[] = {
        {"4001", {{200, 0.010}, {160, 0.040}, {160, 0.015}}},
        {"6758", {{260, 0.012}, {260, 0.030}}},
        {"8301", {{520, 0.020}}},
    };
    std::vector<OhlcRecord> records;
    for (const auto& plan : plans) {
        Date day = at("2008-01-07");
        double level = 100.0 + 50.0 * static_cast<double>(&plan - plans);
        for (const auto& [length, sigma] : plan.regimes) {
            for (int i = 0; i < length; ++i) {
                while (!is_weekday(day)) {
                    day = day + 1;
                }
                const double r = rng.normal(0.0, sigma);
                records.push_back(OhlcRecord{day, plan.ticker, level, level * std::exp(r)});
                level *= std::exp(r);
                day = day + 1;
            }
        }
    }
    std::ostringstream out;
    write_ohlc(out, records);
    write_file(path, out.str());
    return records.size();
}

std::size_t make_ticks(const std::filesystem::path& path, Rng& rng) {
    struct Pair {
        const char* base;
        const char* quote;
    };
    const Pair pairs[] = {{"EUR", "USD"}, {"USD", "JPY"}, {"GBP", "USD"}, {"EUR", "JPY"},
                          {"AUD", "USD"}, {"CHF", "USD"}, {"AUD", "JPY"}, {"GBP", "JPY"}};
    const std::vector<double> early = {0.40, 0.25, 0.15, 0.10, 0.06, 0.04, 0.0, 0.0};
    const std::vector<double> late = {0.15, 0.45, 0.02, 0.20, 0.0, 0.03, 0.10, 0.05};

    std::vector<TickEvent> events;
    const Date first_monday = at("2011-02-14");
    for (int week = 0; week < 6; ++week) {
        const auto& weights = week < 3 ? early : late;
        const std::int64_t week_start =
            static_cast<std::int64_t>((first_monday + week * 7).days()) * 86400;
        std::vector<std::int64_t> offsets;
        for (int k = 0; k < 1500; ++k) {
            offsets.push_back(static_cast<std::int64_t>(rng.below(7 * 86400)));
        }
        std::sort(offsets.begin(), offsets.end());
        for (const auto offset : offsets) {
            const auto& pair = pairs[rng.weighted(weights)];
            events.push_back(TickEvent{Timestamp::from_seconds(week_start + offset), pair.base,
                                       pair.quote,
                                       rng.uniform01() < 0.75 ? TickKind::Quotation
                                                              : TickKind::Transaction});
        }
    }
    std::ostringstream out;
    write_ticks(out, events);
    write_file(path, out.str());
    return events.size();
}

std::size_t make_district_map(const std::filesystem::path& path) {
    std::ostringstream out;
    const std::string header[] = {"postal_prefix", "district"};
    write_csv_row(out, header);
    for (int i = 1; i <= 21; ++i) {
        char prefix[8];
        char name[8];
        std::snprintf(prefix, sizeof(prefix), "9%02d", i);
        std::snprintf(name, sizeof(name), "D%02d", i);
        const std::string row[] = {prefix, name};
        write_csv_row(out, row);
    }
    write_file(path, out.str());
    return 21;
}

std::size_t make_bookings(const std::filesystem::path& path, Rng& rng) {
    // district weights per period; a few districts collapse after the
    // break, a few grow, one appears only after, one disappears entirely
    std::vector<double> before(21);
    std::vector<double> after(21);
    for (int i = 0; i < 21; ++i) {
        before[static_cast<std::size_t>(i)] = 10.0 + static_cast<double>((i * 7) % 30);
        after[static_cast<std::size_t>(i)] = before[static_cast<std::size_t>(i)];
    }
    after[4] *= 0.3;
    after[13] *= 0.35;
    after[8] = 0.0;   // gone after
    after[1] *= 2.0;
    after[17] *= 1.8;
    before[20] = 0.0;  // only appears after
    after[20] = 12.0;

    const char* plan_names[] = {"Twin standard", "Twin, breakfast included",
                                "Single \"quiet side\"", "Double with onsen"};
    const char* meals[] = {"none", "breakfast", "half-board"};

    std::vector<BookingRecord> records;
    auto emit_period = [&](Date month_start, const std::vector<double>& weights, int n) {
        for (int k = 0; k < n; ++k) {
            const std::size_t district = rng.weighted(weights);
            BookingRecord rec;
            rec.stay_date = month_start + static_cast<std::int32_t>(rng.below(31));
            rec.collect_date = rec.stay_date - static_cast<std::int32_t>(1 + rng.below(28));
            char hotel[16];
            std::snprintf(hotel, sizeof(hotel), "H%05llu",
                          static_cast<unsigned long long>(rng.below(400)));
            rec.hotel_id = hotel;
            rec.hotel_name = std::string("Hotel ") + hotel;
            rec.hotel_name_kana = "ホテル";
            char postal[32];
            std::snprintf(postal, sizeof(postal), "9%02zu-%04llu", district + 1,
                          static_cast<unsigned long long>(rng.below(10000)));
            rec.postal_code = postal;
            rec.address = "Tohoku";
            rec.url = std::string("http://example.jp/") + hotel;
            rec.latitude = 37.0 + 3.0 * rng.uniform01();
            rec.longitude = 139.5 + 2.5 * rng.uniform01();
            rec.plan_name = plan_names[rng.below(4)];
            rec.meal = meals[rng.below(3)];
            rec.rate = 5000.0 + 500.0 * static_cast<double>(rng.below(40));
            rec.best_rate = rec.rate - 250.0 * static_cast<double>(rng.below(4));
            records.push_back(std::move(rec));
        }
    };
    emit_period(at("2010-05-01"), before, 1200);
    emit_period(at("2011-05-01"), after, 1100);

    // a handful of bookings outside every mapped prefix
    for (int k = 0; k < 5; ++k) {
        BookingRecord rec = records[static_cast<std::size_t>(k) * 3];
        rec.postal_code = "999-0001";
        rec.hotel_id = "H9999" + std::to_string(k);
        records.push_back(std::move(rec));
    }
    std::ostringstream out;
    write_bookings(out, records);
    write_file(path, out.str());
    return records.size();
}

std::size_t make_airports(const std::filesystem::path& path) {
    struct Airport {
        const char* iata;
        double lat;
        double lon;
    };
    const Airport airports[] = {
        {"NRT", 35.7647, 140.3864}, {"HND", 35.5494, 139.7798}, {"KIX", 34.4347, 135.2440},
        {"ICN", 37.4602, 126.4407}, {"PEK", 40.0799, 116.6031}, {"PVG", 31.1443, 121.8083},
        {"HKG", 22.3080, 113.9185}, {"TPE", 25.0777, 121.2330}, {"SIN", 1.3644, 103.9915},
        {"BKK", 13.6900, 100.7501}, {"DEL", 28.5562, 77.1000},  {"DXB", 25.2532, 55.3657},
        {"LHR", 51.4706, -0.4619},  {"CDG", 49.0097, 2.5479},   {"FRA", 50.0379, 8.5622},
        {"JFK", 40.6413, -73.7781}, {"LAX", 33.9416, -118.4085}, {"SFO", 37.6213, -122.3790},
        {"SYD", -33.9399, 151.1753}, {"GRU", -23.4356, -46.4731},
    };
    std::ostringstream out;
    const std::string header[] = {"iata", "lat", "lon"};
    write_csv_row(out, header);
    for (const auto& a : airports) {
        const std::string row[] = {a.iata, format_double(a.lat), format_double(a.lon)};
        write_csv_row(out, row);
    }
    write_file(path, out.str());
    return std::size(airports);
}

std::size_t make_flights(const std::filesystem::path& path, Rng& rng) {
    const char* departures[] = {"NRT", "HND", "KIX"};
    const char* arrivals[] = {"ICN", "PEK", "PVG", "HKG", "TPE", "SIN", "BKK", "DEL", "DXB",
                              "LHR", "CDG", "FRA", "JFK", "LAX", "SFO", "SYD", "GRU"};
    struct Coord {
        const char* iata;
        GeoPoint p;
    };
    const Coord coords[] = {
        {"NRT", {35.7647, 140.3864}}, {"HND", {35.5494, 139.7798}}, {"KIX", {34.4347, 135.2440}},
        {"ICN", {37.4602, 126.4407}}, {"PEK", {40.0799, 116.6031}}, {"PVG", {31.1443, 121.8083}},
        {"HKG", {22.3080, 113.9185}}, {"TPE", {25.0777, 121.2330}}, {"SIN", {1.3644, 103.9915}},
        {"BKK", {13.6900, 100.7501}}, {"DEL", {28.5562, 77.1000}},  {"DXB", {25.2532, 55.3657}},
        {"LHR", {51.4706, -0.4619}},  {"CDG", {49.0097, 2.5479}},   {"FRA", {50.0379, 8.5622}},
        {"JFK", {40.6413, -73.7781}}, {"LAX", {33.9416, -118.4085}}, {"SFO", {37.6213, -122.3790}},
        {"SYD", {-33.9399, 151.1753}}, {"GRU", {-23.4356, -46.4731}},
    };
    auto coord_of = [&](const std::string& iata) {
        for (const auto& c : coords) {
            if (iata == c.iata) {
                return c.p;
            }
        }
        return GeoPoint{};
    };
    const char* carriers[] = {"NH", "JL", "AA", "BA", "SQ", "QF", "AF", "KE"};

    std::vector<FlightRecord> records;
    for (int k = 0; k < 1000; ++k) {
        FlightRecord rec;
        rec.collect_date = at("2010-07-29") + static_cast<std::int32_t>(rng.below(60));
        rec.departure_date = rec.collect_date + 28;
        rec.dep_iata = departures[rng.below(3)];
        rec.arr_iata = arrivals[rng.below(std::size(arrivals))];
        const double cabin_draw = rng.uniform01();
        rec.cabin = cabin_draw < 0.7 ? Cabin::Economy
                                     : (cabin_draw < 0.9 ? Cabin::Business : Cabin::First);
        rec.carrier = carriers[rng.below(std::size(carriers))];
        const double distance = great_circle_km(coord_of(rec.dep_iata), coord_of(rec.arr_iata));
        const double multiplier =
            rec.cabin == Cabin::Economy ? 1.0 : (rec.cabin == Cabin::Business ? 2.5 : 4.0);
        const double noisy = 12.0 * distance * multiplier * std::exp(rng.normal(0.0, 0.15));
        rec.price = 100.0 * std::floor((20000.0 + noisy) / 100.0);
        records.push_back(std::move(rec));
    }
    // a few rows referencing airports missing from the sidecar
    for (int k = 0; k < 4; ++k) {
        FlightRecord rec = records[static_cast<std::size_t>(k) * 5];
        rec.arr_iata = k % 2 ? "ZZZ" : "QQQ";
        records.push_back(std::move(rec));
    }
    std::ostringstream out;
    write_flights(out, records);
    write_file(path, out.str());
    return records.size();
}

}  // namespace

void generate_fixtures(const std::filesystem::path& dir, std::uint64_t seed) {
    std::filesystem::create_directories(dir);
    Rng rng(seed);
    nlohmann::json manifest;
    manifest["seed"] = seed;
    manifest["generator"] = "econokit gen-fixtures";
    manifest["rows"]["ohlc_synthetic.csv"] = make_ohlc(dir / "ohlc_synthetic.csv", rng);
    manifest["rows"]["ticks_synthetic.csv"] = make_ticks(dir / "ticks_synthetic.csv", rng);
    manifest["rows"]["district_map.csv"] = make_district_map(dir / "district_map.csv");
    manifest["rows"]["bookings_synthetic.csv"] =
        make_bookings(dir / "bookings_synthetic.csv", rng);
    manifest["rows"]["airports.csv"] = make_airports(dir / "airports.csv");
    manifest["rows"]["flights_synthetic.csv"] = make_flights(dir / "flights_synthetic.csv", rng);
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace econokit
