#pragma once

#include <cstdint>
#include <filesystem>

namespace econokit {

// Writes the bundled synthetic input set into `dir`: ohlc_synthetic.csv,
// ticks_synthetic.csv, bookings_synthetic.csv, district_map.csv,
// flights_synthetic.csv, airports.csv and a manifest.json recording the
// seed and row counts. Fully deterministic for a given seed.
void generate_fixtures(const std::filesystem::path& dir, std::uint64_t seed);

}  // namespace econokit
