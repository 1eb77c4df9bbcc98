#include "econokit/dates.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace econokit {

namespace {

namespace chr = std::chrono;

bool parse_int(std::string_view s, int& out) {
    if (s.empty()) {
        return false;
    }
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

std::optional<std::int32_t> civil_to_days(int y, int m, int d) {
    const chr::year_month_day ymd{chr::year{y}, chr::month{static_cast<unsigned>(m)},
                                  chr::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) {
        return std::nullopt;
    }
    return static_cast<std::int32_t>(chr::sys_days{ymd}.time_since_epoch().count());
}

}  // namespace

std::optional<Date> Date::try_parse(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') {
        return std::nullopt;
    }
    int y = 0;
    int m = 0;
    int d = 0;
    if (!parse_int(iso.substr(0, 4), y) || !parse_int(iso.substr(5, 2), m) ||
        !parse_int(iso.substr(8, 2), d)) {
        return std::nullopt;
    }
    auto days = civil_to_days(y, m, d);
    if (!days) {
        return std::nullopt;
    }
    return Date::from_days(*days);
}

std::string Date::to_string() const {
    const chr::year_month_day ymd{chr::sys_days{chr::days{days_}}};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::optional<Timestamp> Timestamp::try_parse(std::string_view iso) {
    if (iso.size() >= 1 && iso.back() == 'Z') {
        iso.remove_suffix(1);
    }
    if (iso.size() != 19 || iso[10] != 'T' || iso[13] != ':' || iso[16] != ':') {
        return std::nullopt;
    }
    auto date = Date::try_parse(iso.substr(0, 10));
    if (!date) {
        return std::nullopt;
    }
    int h = 0;
    int mi = 0;
    int s = 0;
    if (!parse_int(iso.substr(11, 2), h) || !parse_int(iso.substr(14, 2), mi) ||
        !parse_int(iso.substr(17, 2), s)) {
        return std::nullopt;
    }
    if (h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 59) {
        return std::nullopt;
    }
    return Timestamp::from_seconds(static_cast<std::int64_t>(date->days()) * 86400 + h * 3600 +
                                   mi * 60 + s);
}

Date Timestamp::date() const {
    // floor division: timestamps before the epoch land on the previous day
    std::int64_t d = secs_ / 86400;
    if (secs_ % 86400 < 0) {
        --d;
    }
    return Date::from_days(static_cast<std::int32_t>(d));
}

std::string Timestamp::to_string() const {
    const Date d = date();
    const std::int64_t rem = secs_ - static_cast<std::int64_t>(d.days()) * 86400;
    char buf[24];
    std::snprintf(buf, sizeof(buf), "T%02d:%02d:%02d", static_cast<int>(rem / 3600),
                  static_cast<int>((rem / 60) % 60), static_cast<int>(rem % 60));
    return d.to_string() + buf;
}

std::string IsoWeek::id() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-W%02d", year, week);
    return buf;
}

Date iso_week_monday(Date d) {
    const chr::sys_days sd{chr::days{d.days()}};
    const chr::weekday wd{sd};
    // iso_encoding: Monday = 1 .. Sunday = 7
    const int back = static_cast<int>(wd.iso_encoding()) - 1;
    return d - back;
}

IsoWeek iso_week_of(Date d) {
    // The Thursday of d's week fixes the ISO year; January 4 is always in
    // week 1 of its ISO year.
    const Date monday = iso_week_monday(d);
    const Date thursday = monday + 3;
    const chr::year_month_day ymd{chr::sys_days{chr::days{thursday.days()}}};
    const int iso_year = static_cast<int>(ymd.year());
    const Date jan4 = Date::from_days(*civil_to_days(iso_year, 1, 4));
    const Date week1_monday = iso_week_monday(jan4);
    const int week = (monday - week1_monday) / 7 + 1;
    return IsoWeek{iso_year, week};
}

}  // namespace econokit
