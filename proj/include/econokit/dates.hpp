#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace econokit {

// Calendar day, stored as days since 1970-01-01 (proleptic Gregorian).
class Date {
public:
    Date() = default;
    static Date from_days(std::int32_t days) { return Date(days); }
    static std::optional<Date> try_parse(std::string_view iso);  // "YYYY-MM-DD"

    std::int32_t days() const { return days_; }
    std::string to_string() const;

    Date operator+(std::int32_t n) const { return Date(days_ + n); }
    Date operator-(std::int32_t n) const { return Date(days_ - n); }
    std::int32_t operator-(Date other) const { return days_ - other.days_; }
    auto operator<=>(const Date&) const = default;

private:
    explicit Date(std::int32_t days) : days_(days) {}
    std::int32_t days_ = 0;
};

// Instant with one-second resolution, seconds since 1970-01-01T00:00:00Z.
class Timestamp {
public:
    Timestamp() = default;
    static Timestamp from_seconds(std::int64_t s) { return Timestamp(s); }
    // "YYYY-MM-DDTHH:MM:SS" with optional trailing 'Z'.
    static std::optional<Timestamp> try_parse(std::string_view iso);

    std::int64_t seconds() const { return secs_; }
    Date date() const;
    std::string to_string() const;

    auto operator<=>(const Timestamp&) const = default;

private:
    explicit Timestamp(std::int64_t s) : secs_(s) {}
    std::int64_t secs_ = 0;
};

// Inclusive date range.
struct DateRange {
    Date start;
    Date end;
    bool contains(Date d) const { return start <= d && d <= end; }
};

struct IsoWeek {
    int year = 0;
    int week = 0;  // 1..53
    std::string id() const;  // "2011-W11"
    auto operator<=>(const IsoWeek&) const = default;
};

IsoWeek iso_week_of(Date d);
Date iso_week_monday(Date d);  // Monday of d's ISO week

}  // namespace econokit
