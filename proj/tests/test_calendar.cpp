#include <random>

#include "doctest.h"
#include "law/calendar.hpp"
#include "law/error.hpp"
#include "oracles.hpp"

using namespace law;

TEST_CASE("canonical rendering is zero padded DD/MM/YYYY") {
    CHECK(to_string(make_date(1, 3, 2010)) == "01/03/2010");
    CHECK(to_string(make_date(13, 6, 2005)) == "13/06/2005");
}

TEST_CASE("render then parse is the identity") {
    std::mt19937 rng(11);
    for (int i = 0; i < 2000; ++i) {
        long n = std::uniform_int_distribution<long>(0, day_number(make_date(31, 12, 2100)))(rng);
        CalendarDate d = from_day_number(n);
        REQUIRE(is_valid(d));
        auto back = parse_canonical(to_string(d));
        REQUIRE(back.has_value());
        CHECK(*back == d);
        CHECK(day_number(d) == n);
    }
}

TEST_CASE("parse_canonical rejects malformed and invalid input") {
    CHECK_FALSE(parse_canonical("31/02/2020"));
    CHECK_FALSE(parse_canonical("1/3/2010"));
    CHECK_FALSE(parse_canonical("01-03-2010"));
    CHECK_FALSE(parse_canonical("01/03/1899"));
    CHECK_THROWS_AS(make_date(29, 2, 2021), Error);
}

TEST_CASE("calendar add with month-end clamping") {
    CHECK(add(make_date(13, 6, 2005), {3, DurationUnit::years}) == make_date(13, 6, 2008));
    CHECK(add(make_date(29, 2, 2020), {1, DurationUnit::years}) == make_date(28, 2, 2021));
    CHECK(add(make_date(31, 1, 2021), {1, DurationUnit::months}) == make_date(28, 2, 2021));
    CHECK(add(make_date(31, 1, 2020), {1, DurationUnit::months}) == make_date(29, 2, 2020));
    CHECK(add(make_date(30, 12, 2019), {36, DurationUnit::months}) == make_date(30, 12, 2022));
    CHECK(add(make_date(28, 2, 2019), {365, DurationUnit::days}) == make_date(28, 2, 2020));
    CHECK_THROWS_WITH_AS(add(make_date(1, 1, 2099), {5, DurationUnit::years}), doctest::Contains("range"), Error);
}

TEST_CASE("calendar add agrees with the day-iteration oracle") {
    std::mt19937_64 rng(2024);
    const long lo = day_number(make_date(1, 1, 1950));
    const long hi = day_number(make_date(31, 12, 2060));
    for (int i = 0; i < 2000; ++i) {
        CalendarDate d = from_day_number(std::uniform_int_distribution<long>(lo, hi)(rng));
        Duration dur{std::uniform_int_distribution<int>(0, 40)(rng),
                     static_cast<DurationUnit>(std::uniform_int_distribution<int>(0, 2)(rng))};
        if (dur.unit == DurationUnit::days) dur.count *= 37;
        CHECK(add(d, dur) == oracle::add_by_iteration(d, dur));
    }
}
