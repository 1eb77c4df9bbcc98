#include "econokit/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "econokit/csv.hpp"
#include "econokit/errors.hpp"

namespace econokit {

namespace {

std::optional<double> parse_double(std::string_view s) {
    if (s.empty()) {
        return std::nullopt;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

// Reads and checks the mandatory header row.
void expect_header(CsvReader& reader, std::span<const std::string> expected,
                   std::vector<std::string>& fields) {
    std::size_t line = 0;
    if (!reader.next(fields, line)) {
        throw MalformedRow("no records: input is empty, missing the header row", 1);
    }
    if (!std::equal(fields.begin(), fields.end(), expected.begin(), expected.end())) {
        std::string want;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0) {
                want += ',';
            }
            want += expected[i];
        }
        throw MalformedRow("header must be exactly `" + want + "`", line);
    }
}

void expect_columns(const std::vector<std::string>& fields, std::size_t n, std::size_t line) {
    if (fields.size() != n) {
        throw MalformedRow("expected " + std::to_string(n) + " columns, got " +
                               std::to_string(fields.size()),
                           line);
    }
}

Date parse_date_field(const std::string& s, const char* what, std::size_t line) {
    auto d = Date::try_parse(s);
    if (!d) {
        throw MalformedRow(std::string("invalid ") + what + " `" + s + "`", line);
    }
    return *d;
}

double parse_number_field(const std::string& s, const char* what, std::size_t line) {
    auto v = parse_double(s);
    if (!v) {
        throw MalformedRow(std::string("invalid ") + what + " `" + s + "`", line);
    }
    return *v;
}

const std::vector<std::string> kOhlcHeader = {"date", "ticker", "open", "close"};
const std::vector<std::string> kTickHeader = {"timestamp", "base", "quote", "kind"};
const std::vector<std::string> kBookingHeader = {
    "collect_date", "stay_date", "hotel_id", "hotel_name", "hotel_name_kana",
    "postal_code",  "address",   "url",      "latitude",   "longitude",
    "plan_name",    "meal",      "best_rate", "rate"};
const std::vector<std::string> kFlightHeader = {"collect_date", "departure_date", "dep_iata",
                                                "arr_iata",     "cabin",          "carrier",
                                                "price"};

}  // namespace

// ---------------------------------------------------------------------------
// OHLC
// ---------------------------------------------------------------------------

std::vector<OhlcRecord> parse_ohlc(std::istream& in) {
    CsvReader reader(in);
    std::vector<std::string> fields;
    expect_header(reader, kOhlcHeader, fields);

    std::vector<OhlcRecord> records;
    std::set<std::pair<std::int32_t, std::string>> seen;
    std::size_t line = 0;
    while (reader.next(fields, line)) {
        expect_columns(fields, 4, line);
        OhlcRecord rec;
        rec.date = parse_date_field(fields[0], "date", line);
        rec.ticker = fields[1];
        if (rec.ticker.empty()) {
            throw MalformedRow("empty ticker", line);
        }
        rec.open = parse_number_field(fields[2], "open price", line);
        rec.close = parse_number_field(fields[3], "close price", line);
        if (rec.open <= 0.0 || rec.close <= 0.0) {
            throw MalformedRow("non-positive price", line);
        }
        if (!seen.emplace(rec.date.days(), rec.ticker).second) {
            throw DuplicateKey("duplicate (date,ticker) " + rec.date.to_string() + "," +
                                   rec.ticker,
                               line);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

void write_ohlc(std::ostream& out, std::span<const OhlcRecord> records) {
    write_csv_row(out, kOhlcHeader);
    for (const auto& r : records) {
        const std::string row[] = {r.date.to_string(), r.ticker, format_double(r.open),
                                   format_double(r.close)};
        write_csv_row(out, row);
    }
}

ReturnSeries log_returns(std::span<const OhlcRecord> records, std::string_view ticker) {
    std::vector<const OhlcRecord*> mine;
    for (const auto& r : records) {
        if (r.ticker == ticker) {
            mine.push_back(&r);
        }
    }
    if (mine.empty()) {
        throw EmptySeries("no records for ticker `" + std::string(ticker) + "`");
    }
    std::stable_sort(mine.begin(), mine.end(),
                     [](const OhlcRecord* a, const OhlcRecord* b) { return a->date < b->date; });
    ReturnSeries series;
    series.ticker = std::string(ticker);
    series.dates.reserve(mine.size());
    series.values.reserve(mine.size());
    for (const auto* r : mine) {
        series.dates.push_back(r->date);
        series.values.push_back(std::log(r->close) - std::log(r->open));
    }
    return series;
}

std::vector<std::string> tickers_of(std::span<const OhlcRecord> records) {
    std::set<std::string> unique;
    for (const auto& r : records) {
        unique.insert(r.ticker);
    }
    return {unique.begin(), unique.end()};
}

// ---------------------------------------------------------------------------
// Ticks
// ---------------------------------------------------------------------------

std::vector<TickEvent> parse_ticks(std::istream& in) {
    CsvReader reader(in);
    std::vector<std::string> fields;
    expect_header(reader, kTickHeader, fields);

    std::vector<TickEvent> events;
    std::size_t line = 0;
    while (reader.next(fields, line)) {
        expect_columns(fields, 4, line);
        TickEvent ev;
        auto ts = Timestamp::try_parse(fields[0]);
        if (!ts) {
            throw MalformedRow("invalid timestamp `" + fields[0] + "`", line);
        }
        ev.timestamp = *ts;
        ev.base = fields[1];
        ev.quote = fields[2];
        if (ev.base.empty() || ev.quote.empty()) {
            throw MalformedRow("empty currency code", line);
        }
        if (ev.base == ev.quote) {
            throw MalformedRow("self-dealing pair " + ev.base + "/" + ev.quote, line);
        }
        if (fields[3] == "Q") {
            ev.kind = TickKind::Quotation;
        } else if (fields[3] == "T") {
            ev.kind = TickKind::Transaction;
        } else {
            throw MalformedRow("kind must be Q or T, got `" + fields[3] + "`", line);
        }
        events.push_back(std::move(ev));
    }
    return events;
}

void write_ticks(std::ostream& out, std::span<const TickEvent> events) {
    write_csv_row(out, kTickHeader);
    for (const auto& ev : events) {
        const std::string row[] = {ev.timestamp.to_string(), ev.base, ev.quote,
                                   ev.kind == TickKind::Quotation ? "Q" : "T"};
        write_csv_row(out, row);
    }
}

std::vector<std::string> currencies_of(std::span<const TickEvent> events) {
    std::set<std::string> unique;
    for (const auto& ev : events) {
        unique.insert(ev.base);
        unique.insert(ev.quote);
    }
    return {unique.begin(), unique.end()};
}

PeriodRef iso_week_partition(Timestamp ts) {
    const Date monday = iso_week_monday(ts.date());
    return PeriodRef{iso_week_of(ts.date()).id(),
                     ts.seconds() - static_cast<std::int64_t>(monday.days()) * 86400};
}

PeriodFn week_partition(WeekRule rule) {
    if (rule == WeekRule::IsoMonday) {
        return iso_week_partition;
    }
    return [](Timestamp ts) {
        const Date shifted = ts.date() + 1;
        const Date start = iso_week_monday(shifted) - 1;  // the Sunday
        return PeriodRef{iso_week_of(shifted).id(),
                         ts.seconds() - static_cast<std::int64_t>(start.days()) * 86400};
    };
}

// ---------------------------------------------------------------------------
// ActivityTensor
// ---------------------------------------------------------------------------

ActivityTensor::ActivityTensor(std::vector<std::string> currencies,
                               std::int64_t bin_width_seconds)
    : currencies_(std::move(currencies)), bin_width_(bin_width_seconds) {
    if (bin_width_ <= 0) {
        throw Error("bin width must be positive");
    }
}

std::vector<std::string> ActivityTensor::periods() const {
    std::vector<std::string> ids;
    ids.reserve(periods_.size());
    for (const auto& [id, data] : periods_) {
        ids.push_back(id);
    }
    return ids;
}

std::uint32_t ActivityTensor::pair_key(std::size_t i, std::size_t j) const {
    if (i > j) {
        std::swap(i, j);
    }
    return static_cast<std::uint32_t>(i * currencies_.size() + j);
}

void ActivityTensor::add(std::size_t i, std::size_t j, std::int64_t bin,
                         const std::string& period, std::uint64_t n) {
    if (i == j) {
        throw Error("self pair is not countable (diagonal is fixed at zero)");
    }
    auto& data = periods_[period];
    data.bins[bin][pair_key(i, j)] += n;
    data.events += n;
}

std::uint64_t ActivityTensor::count(std::size_t i, std::size_t j, std::int64_t bin,
                                    const std::string& period) const {
    if (i == j) {
        return 0;
    }
    auto pit = periods_.find(period);
    if (pit == periods_.end()) {
        return 0;
    }
    auto bit = pit->second.bins.find(bin);
    if (bit == pit->second.bins.end()) {
        return 0;
    }
    auto cit = bit->second.find(pair_key(i, j));
    return cit == bit->second.end() ? 0 : cit->second;
}

std::vector<std::uint64_t> ActivityTensor::pair_totals(const std::string& period) const {
    const std::size_t n = currencies_.size();
    std::vector<std::uint64_t> totals(n * n, 0);
    auto pit = periods_.find(period);
    if (pit == periods_.end()) {
        return totals;
    }
    for (const auto& [bin, pairs] : pit->second.bins) {
        for (const auto& [key, c] : pairs) {
            const std::size_t i = key / n;
            const std::size_t j = key % n;
            totals[i * n + j] += c;
            totals[j * n + i] += c;
        }
    }
    return totals;
}

std::uint64_t ActivityTensor::event_count(const std::string& period) const {
    auto pit = periods_.find(period);
    return pit == periods_.end() ? 0 : pit->second.events;
}

ActivityTensor bin_activity(std::span<const TickEvent> events,
                            std::vector<std::string> currencies, std::int64_t bin_width_seconds,
                            const PeriodFn& partition, TickKind kind) {
    ActivityTensor tensor(std::move(currencies), bin_width_seconds);
    std::unordered_map<std::string_view, std::size_t> index;
    for (std::size_t i = 0; i < tensor.currencies().size(); ++i) {
        index.emplace(tensor.currencies()[i], i);
    }
    for (const auto& ev : events) {
        if (ev.kind != kind) {
            continue;
        }
        auto bi = index.find(ev.base);
        auto qi = index.find(ev.quote);
        if (bi == index.end()) {
            throw UnknownCurrency("unknown currency `" + ev.base + "`");
        }
        if (qi == index.end()) {
            throw UnknownCurrency("unknown currency `" + ev.quote + "`");
        }
        const PeriodRef ref = partition(ev.timestamp);
        std::int64_t bin = ref.offset_seconds / bin_width_seconds;
        if (ref.offset_seconds < 0 && ref.offset_seconds % bin_width_seconds != 0) {
            --bin;  // floor for partitions that hand out negative offsets
        }
        tensor.add(bi->second, qi->second, bin, ref.id);
    }
    return tensor;
}

// ---------------------------------------------------------------------------
// Bookings
// ---------------------------------------------------------------------------

std::vector<BookingRecord> parse_bookings(std::istream& in) {
    CsvReader reader(in);
    std::vector<std::string> fields;
    expect_header(reader, kBookingHeader, fields);

    std::vector<BookingRecord> records;
    std::size_t line = 0;
    while (reader.next(fields, line)) {
        expect_columns(fields, 14, line);
        BookingRecord rec;
        rec.collect_date = parse_date_field(fields[0], "collect_date", line);
        rec.stay_date = parse_date_field(fields[1], "stay_date", line);
        if (rec.stay_date < rec.collect_date) {
            throw MalformedRow("stay_date precedes collect_date", line);
        }
        rec.hotel_id = fields[2];
        rec.hotel_name = fields[3];
        rec.hotel_name_kana = fields[4];
        rec.postal_code = fields[5];
        rec.address = fields[6];
        rec.url = fields[7];
        rec.latitude = parse_number_field(fields[8], "latitude", line);
        rec.longitude = parse_number_field(fields[9], "longitude", line);
        if (rec.latitude < -90.0 || rec.latitude > 90.0) {
            throw MalformedRow("latitude out of [-90,90]", line);
        }
        if (rec.longitude < -180.0 || rec.longitude > 180.0) {
            throw MalformedRow("longitude out of [-180,180]", line);
        }
        rec.plan_name = fields[10];
        rec.meal = fields[11];
        rec.best_rate = parse_number_field(fields[12], "best_rate", line);
        rec.rate = parse_number_field(fields[13], "rate", line);
        if (rec.best_rate < 0.0 || rec.rate < 0.0) {
            throw MalformedRow("negative rate", line);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

void write_bookings(std::ostream& out, std::span<const BookingRecord> records) {
    write_csv_row(out, kBookingHeader);
    for (const auto& r : records) {
        const std::string row[] = {r.collect_date.to_string(),
                                   r.stay_date.to_string(),
                                   r.hotel_id,
                                   r.hotel_name,
                                   r.hotel_name_kana,
                                   r.postal_code,
                                   r.address,
                                   r.url,
                                   format_double(r.latitude),
                                   format_double(r.longitude),
                                   r.plan_name,
                                   r.meal,
                                   format_double(r.best_rate),
                                   format_double(r.rate)};
        write_csv_row(out, row);
    }
}

// ---------------------------------------------------------------------------
// DistrictMap / count_by_district
// ---------------------------------------------------------------------------

DistrictMap DistrictMap::parse(std::istream& in) {
    CsvReader reader(in);
    std::vector<std::string> fields;
    const std::vector<std::string> header = {"postal_prefix", "district"};
    expect_header(reader, header, fields);

    DistrictMap map;
    std::size_t line = 0;
    while (reader.next(fields, line)) {
        expect_columns(fields, 2, line);
        if (fields[0].empty() || fields[1].empty()) {
            throw MalformedRow("empty postal_prefix or district", line);
        }
        map.add_rule(fields[0], fields[1]);
    }
    return map;
}

void DistrictMap::add_rule(std::string postal_prefix, const std::string& district) {
    auto it = std::find(districts_.begin(), districts_.end(), district);
    std::size_t idx;
    if (it == districts_.end()) {
        idx = districts_.size();
        districts_.push_back(district);
    } else {
        idx = static_cast<std::size_t>(it - districts_.begin());
    }
    rules_.emplace_back(std::move(postal_prefix), idx);
}

std::optional<std::size_t> DistrictMap::district_of(std::string_view postal_code) const {
    std::optional<std::size_t> best;
    std::size_t best_len = 0;
    for (const auto& [prefix, idx] : rules_) {
        if (postal_code.substr(0, prefix.size()) == prefix && prefix.size() >= best_len) {
            // ties between equal-length prefixes resolve to the later rule;
            // equal prefixes should not be duplicated in a sane map
            best = idx;
            best_len = prefix.size();
        }
    }
    return best;
}

DistrictCounts count_by_district(std::span<const BookingRecord> bookings,
                                 const DistrictMap& districts, DateRange period,
                                 std::string period_id) {
    DistrictCounts out;
    out.period_id = std::move(period_id);
    out.districts = districts.districts();
    const std::int32_t n_days = period.end - period.start + 1;
    if (n_days <= 0) {
        throw Error("period end precedes period start");
    }
    out.dates.reserve(static_cast<std::size_t>(n_days));
    for (std::int32_t i = 0; i < n_days; ++i) {
        out.dates.push_back(period.start + i);
    }
    out.counts.assign(out.districts.size(),
                      std::vector<std::uint64_t>(static_cast<std::size_t>(n_days), 0));
    for (std::size_t idx = 0; idx < bookings.size(); ++idx) {
        const auto& rec = bookings[idx];
        if (!period.contains(rec.stay_date)) {
            continue;
        }
        const auto district = districts.district_of(rec.postal_code);
        if (!district) {
            out.unmapped.push_back(UnmappedBooking{idx, rec.hotel_id, rec.postal_code});
            continue;
        }
        out.counts[*district][static_cast<std::size_t>(rec.stay_date - period.start)] += 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Flights
// ---------------------------------------------------------------------------

std::string_view cabin_name(Cabin c) {
    switch (c) {
        case Cabin::Economy:
            return "economy";
        case Cabin::Business:
            return "business";
        case Cabin::First:
            return "first";
    }
    return "economy";
}

std::optional<Cabin> cabin_from_string(std::string_view s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "economy") {
        return Cabin::Economy;
    }
    if (lower == "business") {
        return Cabin::Business;
    }
    if (lower == "first") {
        return Cabin::First;
    }
    return std::nullopt;
}

std::vector<FlightRecord> parse_flights(std::istream& in, std::vector<std::size_t>* lines) {
    CsvReader reader(in);
    std::vector<std::string> fields;
    expect_header(reader, kFlightHeader, fields);

    std::vector<FlightRecord> records;
    std::size_t line = 0;
    while (reader.next(fields, line)) {
        expect_columns(fields, 7, line);
        FlightRecord rec;
        rec.collect_date = parse_date_field(fields[0], "collect_date", line);
        rec.departure_date = parse_date_field(fields[1], "departure_date", line);
        rec.dep_iata = fields[2];
        rec.arr_iata = fields[3];
        if (rec.dep_iata.empty() || rec.arr_iata.empty()) {
            throw MalformedRow("empty airport code", line);
        }
        if (rec.dep_iata == rec.arr_iata) {
            throw MalformedRow("departure equals arrival airport", line);
        }
        auto cabin = cabin_from_string(fields[4]);
        if (!cabin) {
            throw MalformedRow("cabin must be economy, business or first; got `" + fields[4] +
                                   "`",
                               line);
        }
        rec.cabin = *cabin;
        rec.carrier = fields[5];
        rec.price = parse_number_field(fields[6], "price", line);
        if (rec.price < 0.0) {
            throw MalformedRow("negative price", line);
        }
        records.push_back(std::move(rec));
        if (lines) {
            lines->push_back(line);
        }
    }
    return records;
}

void write_flights(std::ostream& out, std::span<const FlightRecord> records) {
    write_csv_row(out, kFlightHeader);
    for (const auto& r : records) {
        const std::string row[] = {r.collect_date.to_string(),
                                   r.departure_date.to_string(),
                                   r.dep_iata,
                                   r.arr_iata,
                                   std::string(cabin_name(r.cabin)),
                                   r.carrier,
                                   format_double(r.price)};
        write_csv_row(out, row);
    }
}

}  // namespace econokit
