#include <doctest.h>

#include "atkde/errors.hpp"
#include "atkde/time.hpp"

using namespace atkde;

TEST_CASE("civil day conversions round trip") {
    CHECK(days_from_civil(1970, 1, 1) == 0);
    CHECK(days_from_civil(1970, 1, 2) == 1);
    CHECK(days_from_civil(2024, 1, 1) == 19723);
    for (CivilDay d = -1000; d <= 40000; d += 37) {
        int y;
        unsigned m, dd;
        civil_from_days(d, y, m, dd);
        CHECK(days_from_civil(y, m, dd) == d);
    }
}

TEST_CASE("weekday is ISO Monday=1") {
    CHECK(weekday_mon1(days_from_civil(2024, 1, 1)) == 1);  // Monday
    CHECK(weekday_mon1(days_from_civil(2024, 1, 7)) == 7);  // Sunday
    CHECK(weekday_mon1(days_from_civil(1970, 1, 1)) == 4);  // Thursday
}

TEST_CASE("floor_div handles negatives") {
    CHECK(floor_div(7, 2) == 3);
    CHECK(floor_div(-7, 2) == -4);
    CHECK(floor_div(-4, 2) == -2);
}

TEST_CASE("parse_iso8601 basic forms") {
    Micros t = parse_iso8601("2024-01-01T09:00:00Z");
    CHECK(day_of(t) == days_from_civil(2024, 1, 1));
    CHECK(time_of_day(t) == 9 * kMicrosPerHour);

    CHECK(parse_iso8601("2024-01-01 09:00:00") == t);          // space separator, implied UTC
    CHECK(parse_iso8601("2024-01-01T10:00:00+01:00") == t);    // offset normalization
    CHECK(parse_iso8601("2024-01-01T08:30:00-00:30") == t);
    CHECK(parse_iso8601("2024-01-01T09:00:00.250Z") == t + 250'000);
    CHECK(parse_iso8601("2024-01-01T09:00:00.000001Z") == t + 1);
}

TEST_CASE("parse_iso8601 rejects garbage") {
    CHECK_THROWS_AS(parse_iso8601("not-a-date"), ParseError);
    CHECK_THROWS_AS(parse_iso8601("2024-13-01T00:00:00Z"), ParseError);
    CHECK_THROWS_AS(parse_iso8601("2024-01-32T00:00:00Z"), ParseError);
    CHECK_THROWS_AS(parse_iso8601(""), ParseError);
}

TEST_CASE("format round trips") {
    Micros t = parse_iso8601("2024-06-15T13:45:30Z");
    CHECK(parse_iso8601(format_iso8601(t)) == t);
    CHECK(format_iso8601(t) == "2024-06-15T13:45:30Z");
    Micros frac = t + 123456;
    CHECK(parse_iso8601(format_iso8601(frac)) == frac);

    CHECK(parse_date("2024-06-15") == days_from_civil(2024, 6, 15));
    CHECK(format_date(days_from_civil(2024, 6, 15)) == "2024-06-15");
    CHECK_THROWS_AS(parse_date("2024/06/15"), ParseError);
}

TEST_CASE("instant_at and time_of_day invert") {
    CivilDay d = days_from_civil(2024, 3, 10);
    Micros t = instant_at(d, 5 * kMicrosPerHour + 123);
    CHECK(day_of(t) == d);
    CHECK(time_of_day(t) == 5 * kMicrosPerHour + 123);
}
