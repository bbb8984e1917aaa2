#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace atkde {

/// Absolute instant: microseconds since the Unix epoch, UTC.
using Micros = std::int64_t;

/// Calendar day: days since 1970-01-01.
using CivilDay = std::int64_t;

inline constexpr std::int64_t kMicrosPerSecond = 1'000'000;
inline constexpr std::int64_t kMicrosPerHour = 3600 * kMicrosPerSecond;
inline constexpr std::int64_t kMicrosPerDay = 86400 * kMicrosPerSecond;

constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

/// Days since epoch for a proleptic Gregorian date.
CivilDay days_from_civil(int year, unsigned month, unsigned day);

/// Inverse of days_from_civil.
void civil_from_days(CivilDay z, int& year, unsigned& month, unsigned& day);

/// ISO weekday: Monday = 1 .. Sunday = 7.
constexpr int weekday_mon1(CivilDay day) {
    return static_cast<int>(((day % 7) + 10) % 7) + 1;
}

constexpr CivilDay day_of(Micros t) { return floor_div(t, kMicrosPerDay); }

constexpr std::int64_t time_of_day(Micros t) {
    return t - day_of(t) * kMicrosPerDay;
}

constexpr Micros instant_at(CivilDay day, std::int64_t tod_micros) {
    return day * kMicrosPerDay + tod_micros;
}

/// Parses ISO-8601 timestamps ("2024-01-01T09:00:00Z", optional fractional
/// seconds, optional numeric offset, 'T' or ' ' separator). Missing offset is
/// read as UTC. Throws ParseError.
Micros parse_iso8601(std::string_view s);

/// Parses a plain "YYYY-MM-DD" date. Throws ParseError.
CivilDay parse_date(std::string_view s);

/// "YYYY-MM-DDTHH:MM:SSZ", with ".ffffff" inserted when sub-second.
std::string format_iso8601(Micros t);

/// "YYYY-MM-DD".
std::string format_date(CivilDay day);

/// "HH:MM:SS[.ffffff]" clock time from microseconds past midnight.
std::string format_time_of_day(std::int64_t tod_micros);

}  // namespace atkde
