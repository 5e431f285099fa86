#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace law {

/// Gregorian date restricted to 1900..2100. Canonical rendering is DD/MM/YYYY.
struct CalendarDate {
    int day = 1;
    int month = 1;
    int year = 1900;

    auto operator<=>(const CalendarDate& other) const {
        if (auto c = year <=> other.year; c != 0) return c;
        if (auto c = month <=> other.month; c != 0) return c;
        return day <=> other.day;
    }
    bool operator==(const CalendarDate&) const = default;
};

enum class DurationUnit { years, months, days };

struct Duration {
    int count = 0;
    DurationUnit unit = DurationUnit::years;
    bool operator==(const Duration&) const = default;
};

constexpr int kMinYear = 1900;
constexpr int kMaxYear = 2100;

bool is_leap_year(int year);
int days_in_month(int year, int month);
bool is_valid(const CalendarDate& date);

/// Throws law::Error(E_DATE) on invalid input.
CalendarDate make_date(int day, int month, int year);

std::string to_string(const CalendarDate& date);
/// Parses the canonical DD/MM/YYYY rendering; nullopt on anything else.
std::optional<CalendarDate> parse_canonical(std::string_view text);

/// Days since 01/01/1900 (that date is day 0).
long day_number(const CalendarDate& date);
CalendarDate from_day_number(long n);

/// Calendar addition with month-end clamping: 31/01 + 1 month -> 28 or 29/02,
/// 29/02 + 1 year -> 28/02. Throws E_RANGE when the result leaves 1900..2100.
CalendarDate add(const CalendarDate& date, const Duration& duration);

std::string_view to_string(DurationUnit unit);
std::optional<DurationUnit> parse_unit(std::string_view text);

std::string_view month_name(int month);

}  // namespace law
