#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "econokit/dates.hpp"

namespace econokit {

// ---------------------------------------------------------------------------
// Daily open/close prices
// ---------------------------------------------------------------------------

struct OhlcRecord {
    Date date;
    std::string ticker;
    double open = 0.0;   // > 0
    double close = 0.0;  // > 0
    bool operator==(const OhlcRecord&) const = default;
};

// Header: date,ticker,open,close
std::vector<OhlcRecord> parse_ohlc(std::istream& in);
void write_ohlc(std::ostream& out, std::span<const OhlcRecord> records);

// One instrument's daily log-return series, dates strictly increasing.
struct ReturnSeries {
    std::string ticker;
    std::vector<Date> dates;
    std::vector<double> values;  // ln(close) - ln(open), one per date
};

ReturnSeries log_returns(std::span<const OhlcRecord> records, std::string_view ticker);
std::vector<std::string> tickers_of(std::span<const OhlcRecord> records);  // sorted unique

// ---------------------------------------------------------------------------
// Tick events and activity binning
// ---------------------------------------------------------------------------

enum class TickKind { Quotation, Transaction };

struct TickEvent {
    Timestamp timestamp;
    std::string base;
    std::string quote;  // != base
    TickKind kind = TickKind::Quotation;
    bool operator==(const TickEvent&) const = default;
};

// Header: timestamp,base,quote,kind   (kind is Q or T)
std::vector<TickEvent> parse_ticks(std::istream& in);
void write_ticks(std::ostream& out, std::span<const TickEvent> events);
std::vector<std::string> currencies_of(std::span<const TickEvent> events);  // sorted unique

// Assigns a timestamp to its observation period and gives the offset in
// seconds from the period start.
struct PeriodRef {
    std::string id;
    std::int64_t offset_seconds = 0;
};
using PeriodFn = std::function<PeriodRef(Timestamp)>;

// ISO-8601 weeks starting Monday 00:00:00; period ids look like "2011-W11".
PeriodRef iso_week_partition(Timestamp ts);

enum class WeekRule { IsoMonday, SundayStart };

// IsoMonday gives iso_week_partition; SundayStart shifts the week to run
// Sunday 00:00:00 .. Saturday 24:00:00, labelled by the ISO id of the week
// holding its Monday.
PeriodFn week_partition(WeekRule rule);

// Binned pair activity counts f[i][j][t][S]. Counts are stored once per
// unordered pair and exposed symmetrically; the diagonal is always zero.
class ActivityTensor {
public:
    ActivityTensor(std::vector<std::string> currencies, std::int64_t bin_width_seconds);

    const std::vector<std::string>& currencies() const { return currencies_; }
    std::vector<std::string> periods() const;  // sorted ascending
    std::int64_t bin_width() const { return bin_width_; }

    void add(std::size_t i, std::size_t j, std::int64_t bin, const std::string& period,
             std::uint64_t n = 1);

    std::uint64_t count(std::size_t i, std::size_t j, std::int64_t bin,
                        const std::string& period) const;
    // N*N row-major matrix of per-pair totals over all bins; symmetric, zero
    // diagonal. Summing it gives 2x the number of events in the period.
    std::vector<std::uint64_t> pair_totals(const std::string& period) const;
    std::uint64_t event_count(const std::string& period) const;

private:
    struct PeriodData {
        std::unordered_map<std::int64_t, std::unordered_map<std::uint32_t, std::uint64_t>> bins;
        std::uint64_t events = 0;
    };
    std::uint32_t pair_key(std::size_t i, std::size_t j) const;

    std::vector<std::string> currencies_;
    std::int64_t bin_width_;
    std::map<std::string, PeriodData> periods_;
};

ActivityTensor bin_activity(std::span<const TickEvent> events,
                            std::vector<std::string> currencies, std::int64_t bin_width_seconds,
                            const PeriodFn& partition, TickKind kind);

// ---------------------------------------------------------------------------
// Hotel booking records and district aggregation
// ---------------------------------------------------------------------------

struct BookingRecord {
    Date collect_date;
    Date stay_date;  // >= collect_date
    std::string hotel_id;
    std::string hotel_name;
    std::string hotel_name_kana;
    std::string postal_code;
    std::string address;
    std::string url;
    double latitude = 0.0;   // [-90, 90]
    double longitude = 0.0;  // [-180, 180]
    std::string plan_name;
    std::string meal;
    double best_rate = 0.0;  // >= 0
    double rate = 0.0;       // >= 0
    bool operator==(const BookingRecord&) const = default;
};

// 14-column header: collect_date,stay_date,hotel_id,hotel_name,
// hotel_name_kana,postal_code,address,url,latitude,longitude,plan_name,
// meal,best_rate,rate
std::vector<BookingRecord> parse_bookings(std::istream& in);
void write_bookings(std::ostream& out, std::span<const BookingRecord> records);

// Postal-prefix rules resolving bookings to districts; the longest matching
// prefix wins.
class DistrictMap {
public:
    // Header: postal_prefix,district
    static DistrictMap parse(std::istream& in);

    void add_rule(std::string postal_prefix, const std::string& district);
    const std::vector<std::string>& districts() const { return districts_; }
    std::optional<std::size_t> district_of(std::string_view postal_code) const;

private:
    std::vector<std::string> districts_;  // first-appearance order
    std::vector<std::pair<std::string, std::size_t>> rules_;
};

struct UnmappedBooking {
    std::size_t record_index = 0;
    std::string hotel_id;
    std::string postal_code;
};

// Per-district per-day available-hotel counts x_i(t,s) over one period.
struct DistrictCounts {
    std::string period_id;
    std::vector<std::string> districts;
    std::vector<Date> dates;                          // every day in the period
    std::vector<std::vector<std::uint64_t>> counts;   // [district][day]
    std::vector<UnmappedBooking> unmapped;            // reported, excluded
};

DistrictCounts count_by_district(std::span<const BookingRecord> bookings,
                                 const DistrictMap& districts, DateRange period,
                                 std::string period_id);

// ---------------------------------------------------------------------------
// Flight records
// ---------------------------------------------------------------------------

enum class Cabin { Economy, Business, First };

std::string_view cabin_name(Cabin c);
std::optional<Cabin> cabin_from_string(std::string_view s);

struct FlightRecord {
    Date collect_date;
    Date departure_date;
    std::string dep_iata;
    std::string arr_iata;  // != dep_iata
    Cabin cabin = Cabin::Economy;
    std::string carrier;
    double price = 0.0;  // >= 0
    bool operator==(const FlightRecord&) const = default;
};

// Header: collect_date,departure_date,dep_iata,arr_iata,cabin,carrier,price
// When `lines` is given it receives the 1-based input line of each record.
std::vector<FlightRecord> parse_flights(std::istream& in,
                                        std::vector<std::size_t>* lines = nullptr);
void write_flights(std::ostream& out, std::span<const FlightRecord> records);

}  // namespace econokit
