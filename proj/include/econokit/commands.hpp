#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "econokit/dates.hpp"
#include "econokit/ingest.hpp"
#include "econokit/segmentation.hpp"

namespace econokit {

// Everything a subcommand run needs; populated by the CLI front end.
struct RunConfig {
    std::filesystem::path input;
    std::filesystem::path district_map;
    std::filesystem::path airports;
    std::filesystem::path output_dir = ".";

    double delta_c = 10.0;        // segmentation acceptance threshold
    int t_min = 2;                // minimum points per side of a split
    std::int64_t bin_width = 60;  // activity bin width, seconds
    QuintileCounting quintile_counting = QuintileCounting::SpanDays;
    TickKind kind = TickKind::Quotation;
    WeekRule week_rule = WeekRule::IsoMonday;

    std::optional<DateRange> before;
    std::optional<DateRange> after;
    std::optional<Cabin> cabin_filter;
    std::optional<Date> departure_filter;

    int threads = 1;
    bool summary_json = false;  // machine-readable run summary on stdout

    std::uint64_t seed = 42;  // gen-fixtures only

    void validate() const;  // throws Error on out-of-range parameters
};

// Exit codes: 0 success, 1 input/validation error, 2 I/O failure.
int run_segment(const RunConfig& config);
int run_market(const RunConfig& config);
int run_impact(const RunConfig& config);
int run_geodesic(const RunConfig& config);
int run_gen_fixtures(const RunConfig& config);

}  // namespace econokit
