// Command-line front end: segment, market, impact, geodesic, gen-fixtures.

#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "econokit/commands.hpp"

namespace {

using econokit::Cabin;
using econokit::Date;
using econokit::DateRange;
using econokit::QuintileCounting;
using econokit::RunConfig;
using econokit::TickKind;

int default_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

// CLI11 validator-friendly date slot
struct DateFlag {
    std::string text;
    std::optional<Date> get() const {
        if (text.empty()) {
            return std::nullopt;
        }
        return Date::try_parse(text);
    }
};

bool fill_range(const DateFlag& start, const DateFlag& end, std::optional<DateRange>& out,
                const char* what) {
    if (start.text.empty() && end.text.empty()) {
        return true;
    }
    const auto s = start.get();
    const auto e = end.get();
    if (!s || !e) {
        std::cerr << "error: invalid or incomplete " << what << " range (use YYYY-MM-DD)\n";
        return false;
    }
    if (*e < *s) {
        std::cerr << "error: " << what << " range ends before it starts\n";
        return false;
    }
    out = DateRange{*s, *e};
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic CSV analytics: return-series segmentation, market-state "
                 "similarity, district impact ratios and price/distance pairing"};
    app.require_subcommand(1);

    RunConfig config;
    config.threads = default_threads();
    std::string kind = "quotation";
    std::string cabin;
    std::string departure_date;
    std::string summary_format;
    bool quintile_at_start = false;
    DateFlag before_start;
    DateFlag before_end;
    DateFlag after_start;
    DateFlag after_end;

    auto add_common = [&](CLI::App* cmd, bool with_threads) {
        cmd->add_option("--out", config.output_dir, "Output directory")->capture_default_str();
        cmd->add_option("--summary", summary_format,
                        "Run summary format on stdout (only `json`)");
        if (with_threads) {
            cmd->add_option("--threads", config.threads, "Worker thread count")
                ->capture_default_str();
        }
    };

    auto* segment = app.add_subcommand("segment", "Segment OHLC log-return series into "
                                                  "variance regimes");
    segment->add_option("input", config.input, "OHLC CSV (date,ticker,open,close)")->required();
    segment->add_option("--delta-c", config.delta_c, "Split acceptance threshold")
        ->capture_default_str();
    segment->add_option("--t-min", config.t_min, "Minimum points per side of a split")
        ->capture_default_str();
    segment->add_flag("--quintile-at-start", quintile_at_start,
                      "Count a segment only on its start day instead of every day it spans");
    add_common(segment, true);

    auto* market = app.add_subcommand("market", "Weekly activity densities and market-state "
                                                "similarity from tick data");
    market->add_option("input", config.input, "Tick CSV (timestamp,base,quote,kind)")
        ->required();
    market->add_option("--bin-width", config.bin_width, "Activity bin width in seconds")
        ->capture_default_str();
    market->add_option("--kind", kind, "Event kind: quotation|transaction (or Q|T)")
        ->capture_default_str();
    std::string week_start = "monday";
    market->add_option("--week-start", week_start, "Observation week start: monday|sunday")
        ->capture_default_str();
    add_common(market, true);

    auto* impact = app.add_subcommand("impact", "Before/after district impact ratios from "
                                                "hotel bookings");
    impact->add_option("input", config.input, "Booking CSV (14 columns)")->required();
    impact->add_option("--district-map", config.district_map,
                       "District map CSV (postal_prefix,district)")
        ->required();
    impact->add_option("--before-start", before_start.text, "Before period start (YYYY-MM-DD)")
        ->required();
    impact->add_option("--before-end", before_end.text, "Before period end")->required();
    impact->add_option("--after-start", after_start.text, "After period start")->required();
    impact->add_option("--after-end", after_end.text, "After period end")->required();
    add_common(impact, false);

    auto* geodesic = app.add_subcommand("geodesic", "Great-circle distance vs price for "
                                                    "flight records");
    geodesic->add_option("input", config.input, "Flight CSV")->required();
    geodesic->add_option("--airports", config.airports, "Airport coordinates CSV (iata,lat,lon)")
        ->required();
    geodesic->add_option("--cabin", cabin, "Keep only one cabin: economy|business|first");
    geodesic->add_option("--departure-date", departure_date,
                         "Keep only one departure date (YYYY-MM-DD)");
    add_common(geodesic, false);

    auto* gen = app.add_subcommand("gen-fixtures", "Write the bundled synthetic input set");
    std::string gen_out = "fixtures";
    gen->add_option("--out", gen_out, "Target directory")->capture_default_str();
    gen->add_option("--seed", config.seed, "Generator seed")->capture_default_str();
    gen->add_option("--summary", summary_format, "Run summary format on stdout (only `json`)");

    CLI11_PARSE(app, argc, argv);

    if (!summary_format.empty()) {
        if (summary_format != "json") {
            std::cerr << "error: --summary only supports json\n";
            return 1;
        }
        config.summary_json = true;
    }

    config.quintile_counting =
        quintile_at_start ? QuintileCounting::StartDayOnly : QuintileCounting::SpanDays;
    if (kind == "quotation" || kind == "Q") {
        config.kind = TickKind::Quotation;
    } else if (kind == "transaction" || kind == "T") {
        config.kind = TickKind::Transaction;
    } else {
        std::cerr << "error: --kind must be quotation or transaction\n";
        return 1;
    }
    if (week_start == "monday") {
        config.week_rule = econokit::WeekRule::IsoMonday;
    } else if (week_start == "sunday") {
        config.week_rule = econokit::WeekRule::SundayStart;
    } else {
        std::cerr << "error: --week-start must be monday or sunday\n";
        return 1;
    }
    if (!cabin.empty()) {
        const auto parsed = econokit::cabin_from_string(cabin);
        if (!parsed) {
            std::cerr << "error: --cabin must be economy, business or first\n";
            return 1;
        }
        config.cabin_filter = *parsed;
    }
    if (!departure_date.empty()) {
        const auto parsed = Date::try_parse(departure_date);
        if (!parsed) {
            std::cerr << "error: --departure-date must be YYYY-MM-DD\n";
            return 1;
        }
        config.departure_filter = *parsed;
    }
    if (!fill_range(before_start, before_end, config.before, "before") ||
        !fill_range(after_start, after_end, config.after, "after")) {
        return 1;
    }

    if (segment->parsed()) {
        return econokit::run_segment(config);
    }
    if (market->parsed()) {
        return econokit::run_market(config);
    }
    if (impact->parsed()) {
        return econokit::run_impact(config);
    }
    if (geodesic->parsed()) {
        return econokit::run_geodesic(config);
    }
    if (gen->parsed()) {
        config.output_dir = gen_out;
        return econokit::run_gen_fixtures(config);
    }
    return 1;
}
