#include "atkde/time.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "atkde/errors.hpp"

namespace atkde {

// Howard Hinnant's civil-days algorithms.
CivilDay days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<CivilDay>(era) * 146097 + static_cast<CivilDay>(doe) - 719468;
}

void civil_from_days(CivilDay z, int& year, unsigned& month, unsigned& day) {
    z += 719468;
    const CivilDay era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const CivilDay y = static_cast<CivilDay>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    day = doy - (153 * mp + 2) / 5 + 1;
    month = mp + (mp < 10 ? 3 : -9);
    year = static_cast<int>(y + (month <= 2));
}

namespace {

int parse_digits(std::string_view s, std::size_t pos, std::size_t len) {
    if (pos + len > s.size()) throw ParseError("truncated timestamp: '" + std::string(s) + "'");
    int value = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError("invalid timestamp: '" + std::string(s) + "'");
        value = value * 10 + (s[i] - '0');
    }
    return value;
}

void validate_date(int year, unsigned month, unsigned day, std::string_view s) {
    static constexpr std::array<unsigned, 12> dim = {31, 28, 31, 30, 31, 30,
                                                     31, 31, 30, 31, 30, 31};
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    unsigned max_day = dim[month - 1] + (month == 2 && leap ? 1 : 0);
    if (month < 1 || month > 12 || day < 1 || day > max_day)
        throw ParseError("invalid date: '" + std::string(s) + "'");
}

}  // namespace

CivilDay parse_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-')
        throw ParseError("invalid date: '" + std::string(s) + "'");
    int year = parse_digits(s, 0, 4);
    unsigned month = static_cast<unsigned>(parse_digits(s, 5, 2));
    unsigned day = static_cast<unsigned>(parse_digits(s, 8, 2));
    validate_date(year, month, day, s);
    return days_from_civil(year, month, day);
}

Micros parse_iso8601(std::string_view s) {
    if (s.size() < 19) throw ParseError("invalid timestamp: '" + std::string(s) + "'");
    if (s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') || s[13] != ':' ||
        s[16] != ':')
        throw ParseError("invalid timestamp: '" + std::string(s) + "'");

    int year = parse_digits(s, 0, 4);
    unsigned month = static_cast<unsigned>(parse_digits(s, 5, 2));
    unsigned day = static_cast<unsigned>(parse_digits(s, 8, 2));
    validate_date(year, month, day, s);
    int hour = parse_digits(s, 11, 2);
    int minute = parse_digits(s, 14, 2);
    int second = parse_digits(s, 17, 2);
    if (hour > 23 || minute > 59 || second > 60)
        throw ParseError("invalid timestamp: '" + std::string(s) + "'");
    if (second == 60) second = 59;  // fold leap seconds

    std::size_t pos = 19;
    std::int64_t frac_micros = 0;
    if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
        ++pos;
        std::int64_t scale = 100000;
        std::size_t digits = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            if (digits < 6) frac_micros += (s[pos] - '0') * scale;
            scale /= 10;
            ++pos;
            ++digits;
        }
        if (digits == 0) throw ParseError("invalid timestamp: '" + std::string(s) + "'");
    }

    std::int64_t offset_micros = 0;
    if (pos < s.size()) {
        char c = s[pos];
        if (c == 'Z' || c == 'z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            int sign = c == '+' ? 1 : -1;
            ++pos;
            int oh = parse_digits(s, pos, 2);
            pos += 2;
            int om = 0;
            if (pos < s.size() && s[pos] == ':') ++pos;
            if (pos + 2 <= s.size()) {
                om = parse_digits(s, pos, 2);
                pos += 2;
            }
            offset_micros = sign * (oh * 3600LL + om * 60LL) * kMicrosPerSecond;
        }
    }
    if (pos != s.size()) throw ParseError("trailing garbage in timestamp: '" + std::string(s) + "'");

    Micros t = days_from_civil(year, month, day) * kMicrosPerDay +
               (hour * 3600LL + minute * 60LL + second) * kMicrosPerSecond + frac_micros;
    return t - offset_micros;
}

std::string format_date(CivilDay day) {
    int y;
    unsigned m, d;
    civil_from_days(day, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", y, m, d);
    return buf;
}

std::string format_time_of_day(std::int64_t tod) {
    std::int64_t secs = tod / kMicrosPerSecond;
    std::int64_t frac = tod % kMicrosPerSecond;
    char buf[24];
    if (frac == 0) {
        std::snprintf(buf, sizeof(buf), "%02lld:%02lld:%02lld",
                      static_cast<long long>(secs / 3600), static_cast<long long>(secs / 60 % 60),
                      static_cast<long long>(secs % 60));
    } else {
        std::snprintf(buf, sizeof(buf), "%02lld:%02lld:%02lld.%06lld",
                      static_cast<long long>(secs / 3600), static_cast<long long>(secs / 60 % 60),
                      static_cast<long long>(secs % 60), static_cast<long long>(frac));
    }
    return buf;
}

std::string format_iso8601(Micros t) {
    CivilDay day = day_of(t);
    return format_date(day) + "T" + format_time_of_day(time_of_day(t)) + "Z";
}

}  // namespace atkde
