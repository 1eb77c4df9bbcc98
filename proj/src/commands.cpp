#include "econokit/commands.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "econokit/csv.hpp"
#include "econokit/errors.hpp"
#include "econokit/fixtures.hpp"
#include "econokit/geodesy.hpp"
#include "econokit/impact.hpp"
#include "econokit/market_state.hpp"
#include "econokit/parallel.hpp"

namespace econokit {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

int guard(const std::function<int()>& body) {
    try {
        return body();
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

// temp file + rename, so interrupted runs never leave half-written outputs
void write_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open " + tmp.string() + " for writing");
        }
        out << content;
        out.flush();
        if (!out) {
            throw IoError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                      ec.message());
    }
}

template <typename Fn>
auto parse_input(const fs::path& path, Fn&& parser) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    try {
        return parser(in);
    } catch (const ParseError& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

void require_records(std::size_t n, const fs::path& path) {
    if (n == 0) {
        throw Error("no records in " + path.string());
    }
}

void emit_summary(const RunConfig& config, json summary) {
    if (config.summary_json) {
        std::cout << summary.dump() << "\n";
    }
}

std::string range_id(const DateRange& r) {
    return r.start.to_string() + ".." + r.end.to_string();
}

std::string similarity_csv(const SimilarityMatrix& m) {
    std::ostringstream out;
    std::vector<std::string> row;
    row.push_back("period");
    for (const auto& p : m.periods) {
        row.push_back(p);
    }
    write_csv_row(out, row);
    for (std::size_t a = 0; a < m.periods.size(); ++a) {
        row.clear();
        row.push_back(m.periods[a]);
        for (std::size_t b = 0; b < m.periods.size(); ++b) {
            row.push_back(format_double(m.at(a, b)));
        }
        write_csv_row(out, row);
    }
    return out.str();
}

}  // namespace

void RunConfig::validate() const {
    if (!(delta_c > 0.0)) {
        throw Error("--delta-c must be positive");
    }
    if (t_min < 2) {
        throw Error("--t-min must be at least 2");
    }
    if (bin_width < 1) {
        throw Error("--bin-width must be at least 1 second");
    }
    if (threads < 1) {
        throw Error("--threads must be at least 1");
    }
}

int run_segment(const RunConfig& config) {
    return guard([&] {
        config.validate();
        const auto records =
            parse_input(config.input, [](std::istream& in) { return parse_ohlc(in); });
        require_records(records.size(), config.input);

        const auto tickers = tickers_of(records);
        // group once so a full-exchange file stays near-linear
        std::map<std::string_view, std::vector<OhlcRecord>> grouped;
        for (const auto& r : records) {
            grouped[r.ticker].push_back(r);
        }
        std::vector<LabelledSeries> labelled(tickers.size());
        parallel_for(tickers.size(), config.threads, [&](std::size_t i) {
            const auto& mine = grouped.at(tickers[i]);
            const auto series = log_returns(mine, tickers[i]);
            auto seg = segment_series(series.values, config.delta_c, config.t_min);
            quintile_labels(seg.segments);
            labelled[i] = LabelledSeries{tickers[i], series.dates, std::move(seg.segments)};
        });

        std::set<Date> calendar_set;
        for (const auto& r : records) {
            calendar_set.insert(r.date);
        }
        const std::vector<Date> calendar(calendar_set.begin(), calendar_set.end());
        const auto counts = regime_counts(labelled, calendar, config.quintile_counting);

        std::ostringstream seg_out;
        const std::string seg_header[] = {"ticker", "start_date", "end_date",
                                          "mean",   "variance",   "quintile"};
        write_csv_row(seg_out, seg_header);
        std::size_t n_segments = 0;
        for (const auto& ls : labelled) {
            for (const auto& s : ls.segments) {
                const std::string row[] = {ls.ticker,
                                           ls.dates[s.start].to_string(),
                                           ls.dates[s.end].to_string(),
                                           format_double(s.mean),
                                           format_double(s.variance),
                                           std::to_string(s.label)};
                write_csv_row(seg_out, row);
                ++n_segments;
            }
        }

        std::ostringstream counts_out;
        const std::string counts_header[] = {"date", "starts", "q1", "q2", "q3", "q4", "q5"};
        write_csv_row(counts_out, counts_header);
        for (std::size_t d = 0; d < counts.dates.size(); ++d) {
            std::vector<std::string> row = {counts.dates[d].to_string(),
                                            std::to_string(counts.starts[d])};
            for (std::size_t k = 0; k < 5; ++k) {
                row.push_back(std::to_string(counts.quintile[k][d]));
            }
            write_csv_row(counts_out, row);
        }

        const fs::path seg_path = config.output_dir / "segments.csv";
        const fs::path counts_path = config.output_dir / "regime_counts.csv";
        write_atomic(seg_path, seg_out.str());
        write_atomic(counts_path, counts_out.str());

        std::cerr << "segment: " << tickers.size() << " tickers, " << n_segments
                  << " segments -> " << seg_path.string() << ", " << counts_path.string()
                  << "\n";
        emit_summary(config,
                     json{{"command", "segment"},
                          {"input", config.input.string()},
                          {"outputs", {seg_path.string(), counts_path.string()}},
                          {"parameters",
                           {{"delta_c", config.delta_c},
                            {"t_min", config.t_min},
                            {"quintile_counting",
                             config.quintile_counting == QuintileCounting::SpanDays
                                 ? "span"
                                 : "start"},
                            {"threads", config.threads}}},
                          {"counts",
                           {{"records", records.size()},
                            {"tickers", tickers.size()},
                            {"segments", n_segments},
                            {"dropped_rows", 0}}}});
        return 0;
    });
}

int run_market(const RunConfig& config) {
    return guard([&] {
        config.validate();
        const auto events =
            parse_input(config.input, [](std::istream& in) { return parse_ticks(in); });
        require_records(events.size(), config.input);

        const auto currencies = currencies_of(events);
        const auto tensor = bin_activity(events, currencies, config.bin_width,
                                         week_partition(config.week_rule), config.kind);
        const auto periods = tensor.periods();
        if (periods.empty()) {
            throw Error("no events of the selected kind in " + config.input.string());
        }

        std::ostringstream activity_out;
        const std::string activity_header[] = {"period", "currency_i", "currency_j", "a_ij"};
        write_csv_row(activity_out, activity_header);
        std::ostringstream occurrence_out;
        const std::string occurrence_header[] = {"period", "currency", "k_i"};
        write_csv_row(occurrence_out, occurrence_header);
        for (const auto& period : periods) {
            const auto a = activity_density(tensor, period);
            const auto k = occurrence_rates(a);
            const std::size_t n = currencies.size();
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    const std::string row[] = {period, currencies[i], currencies[j],
                                               format_double(a.at(i, j))};
                    write_csv_row(activity_out, row);
                }
            }
            for (std::size_t i = 0; i < n; ++i) {
                const std::string row[] = {period, currencies[i], format_double(k.k[i])};
                write_csv_row(occurrence_out, row);
            }
        }

        const auto pairs = similarity_matrix(tensor, SimilarityKind::Pairs, config.threads);
        const auto currencies_sim =
            similarity_matrix(tensor, SimilarityKind::Currencies, config.threads);
        for (const auto& dropped : pairs.dropped_periods) {
            std::cerr << "warning: period " << dropped << " has no activity, dropped\n";
        }

        const fs::path activity_path = config.output_dir / "activity.csv";
        const fs::path occurrence_path = config.output_dir / "occurrence.csv";
        const fs::path pairs_path = config.output_dir / "similarity_pairs.csv";
        const fs::path curr_path = config.output_dir / "similarity_currencies.csv";
        write_atomic(activity_path, activity_out.str());
        write_atomic(occurrence_path, occurrence_out.str());
        write_atomic(pairs_path, similarity_csv(pairs.matrix));
        write_atomic(curr_path, similarity_csv(currencies_sim.matrix));

        std::cerr << "market: " << events.size() << " events, " << periods.size()
                  << " periods, " << currencies.size() << " currencies -> "
                  << activity_path.string() << ", " << occurrence_path.string() << ", "
                  << pairs_path.string() << ", " << curr_path.string() << "\n";
        emit_summary(
            config,
            json{{"command", "market"},
                 {"input", config.input.string()},
                 {"outputs",
                  {activity_path.string(), occurrence_path.string(), pairs_path.string(),
                   curr_path.string()}},
                 {"parameters",
                  {{"bin_width", config.bin_width},
                   {"kind", config.kind == TickKind::Quotation ? "quotation" : "transaction"},
                   {"threads", config.threads}}},
                 {"counts",
                  {{"records", events.size()},
                   {"periods", periods.size()},
                   {"currencies", currencies.size()},
                   {"dropped_periods", pairs.dropped_periods.size()},
                   {"dropped_rows", 0}}}});
        return 0;
    });
}

int run_impact(const RunConfig& config) {
    return guard([&] {
        config.validate();
        if (!config.before || !config.after) {
            throw Error("impact requires --before-start/--before-end/--after-start/--after-end");
        }
        const auto bookings =
            parse_input(config.input, [](std::istream& in) { return parse_bookings(in); });
        require_records(bookings.size(), config.input);
        const auto districts = parse_input(config.district_map,
                                           [](std::istream& in) { return DistrictMap::parse(in); });

        const auto before =
            count_by_district(bookings, districts, *config.before, range_id(*config.before));
        const auto after =
            count_by_district(bookings, districts, *config.after, range_id(*config.after));
        const std::size_t unmapped = before.unmapped.size() + after.unmapped.size();
        if (unmapped > 0) {
            std::cerr << "warning: " << unmapped
                      << " bookings matched no district (excluded from counts)\n";
        }

        const auto p_before = relative_frequency(before);
        const auto p_after = relative_frequency(after);
        const auto ratios = impact_ratio(p_after, p_before);

        std::ostringstream out;
        const std::string header[] = {"district", "p_before", "p_after", "q"};
        write_csv_row(out, header);
        for (std::size_t i = 0; i < ratios.districts.size(); ++i) {
            const std::string row[] = {ratios.districts[i], format_double(p_before.p[i]),
                                       format_double(p_after.p[i]),
                                       ratios.q[i] ? format_double(*ratios.q[i]) : "undefined"};
            write_csv_row(out, row);
        }
        const fs::path impact_path = config.output_dir / "impact.csv";
        write_atomic(impact_path, out.str());

        std::cerr << "impact: " << bookings.size() << " bookings, "
                  << ratios.districts.size() << " districts -> " << impact_path.string()
                  << "\n";
        emit_summary(config,
                     json{{"command", "impact"},
                          {"input", config.input.string()},
                          {"outputs", {impact_path.string()}},
                          {"parameters",
                           {{"before", range_id(*config.before)},
                            {"after", range_id(*config.after)}}},
                          {"counts",
                           {{"records", bookings.size()},
                            {"districts", ratios.districts.size()},
                            {"unmapped", unmapped},
                            {"dropped_rows", unmapped}}}});
        return 0;
    });
}

int run_geodesic(const RunConfig& config) {
    return guard([&] {
        config.validate();
        std::vector<std::size_t> record_lines;
        const auto flights = parse_input(
            config.input, [&](std::istream& in) { return parse_flights(in, &record_lines); });
        require_records(flights.size(), config.input);
        const auto airports = parse_input(
            config.airports, [](std::istream& in) { return AirportTable::parse(in); });

        const auto result =
            price_distance_pairs(flights, airports, config.cabin_filter, config.departure_filter);

        std::ostringstream out;
        const std::string header[] = {"departure_date", "dep_iata", "arr_iata", "cabin",
                                      "carrier",        "distance_km", "price"};
        write_csv_row(out, header);
        std::size_t suspicious = 0;
        for (const auto& p : result.points) {
            const std::string row[] = {p.departure_date.to_string(),
                                       p.dep_iata,
                                       p.arr_iata,
                                       std::string(cabin_name(p.cabin)),
                                       p.carrier,
                                       format_double(p.distance_km),
                                       format_double(p.price)};
            write_csv_row(out, row);
            if (p.zero_distance) {
                ++suspicious;
            }
        }
        std::ostringstream err_out;
        const std::string err_header[] = {"line", "iata"};
        write_csv_row(err_out, err_header);
        for (const auto& e : result.errors) {
            const std::string row[] = {std::to_string(record_lines[e.record_index]), e.iata};
            write_csv_row(err_out, row);
        }

        const fs::path points_path = config.output_dir / "price_distance.csv";
        const fs::path errors_path = config.output_dir / "errors.csv";
        write_atomic(points_path, out.str());
        write_atomic(errors_path, err_out.str());

        if (!result.errors.empty()) {
            std::cerr << "warning: " << result.errors.size()
                      << " unknown airport references listed in " << errors_path.string()
                      << "\n";
        }
        if (suspicious > 0) {
            std::cerr << "warning: " << suspicious
                      << " flights with zero distance (identical endpoint coordinates)\n";
        }
        std::cerr << "geodesic: " << result.points.size() << " points -> "
                  << points_path.string() << "\n";
        emit_summary(config,
                     json{{"command", "geodesic"},
                          {"input", config.input.string()},
                          {"outputs", {points_path.string(), errors_path.string()}},
                          {"parameters",
                           {{"cabin", config.cabin_filter
                                          ? std::string(cabin_name(*config.cabin_filter))
                                          : "all"},
                            {"departure_date", config.departure_filter
                                                   ? config.departure_filter->to_string()
                                                   : "all"}}},
                          {"counts",
                           {{"records", flights.size()},
                            {"points", result.points.size()},
                            {"unknown_airport_rows", result.errors.size()},
                            {"zero_distance", suspicious},
                            {"dropped_rows", result.errors.size()}}}});
        if (result.points.empty() && !result.errors.empty()) {
            std::cerr << "error: every record failed airport resolution\n";
            return 1;
        }
        return 0;
    });
}

int run_gen_fixtures(const RunConfig& config) {
    return guard([&] {
        generate_fixtures(config.output_dir, config.seed);
        std::cerr << "gen-fixtures: wrote synthetic inputs to " << config.output_dir.string()
                  << " (seed " << config.seed << ")\n";
        emit_summary(config, json{{"command", "gen-fixtures"},
                                  {"outputs", {config.output_dir.string()}},
                                  {"parameters", {{"seed", config.seed}}}});
        return 0;
    });
}

}  // namespace econokit
