#include "law/calendar.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include "law/error.hpp"

namespace law {

namespace {

constexpr std::array<std::string_view, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

// Days from 0000-03-01 style civil epoch; see H. Hinnant's days_from_civil.
long days_from_civil(long y, unsigned m, unsigned d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

const long kEpoch = days_from_civil(1900, 1, 1);

}  // namespace

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap_year(year)) return 29;
    return kDays.at(static_cast<size_t>(month - 1));
}

bool is_valid(const CalendarDate& d) {
    return d.year >= kMinYear && d.year <= kMaxYear && d.month >= 1 && d.month <= 12 &&
           d.day >= 1 && d.day <= days_in_month(d.year, d.month);
}

CalendarDate make_date(int day, int month, int year) {
    CalendarDate d{day, month, year};
    if (!is_valid(d)) {
        throw Error("E_DATE", "invalid calendar date " + std::to_string(day) + "/" +
                                  std::to_string(month) + "/" + std::to_string(year));
    }
    return d;
}

std::string to_string(const CalendarDate& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d/%02d/%04d", d.day, d.month, d.year);
    return buf;
}

std::optional<CalendarDate> parse_canonical(std::string_view text) {
    if (text.size() != 10 || text[2] != '/' || text[5] != '/') return std::nullopt;
    auto digits = [&](size_t pos, size_t len) -> int {
        int v = 0;
        for (size_t i = pos; i < pos + len; ++i) {
            if (text[i] < '0' || text[i] > '9') return -1;
            v = v * 10 + (text[i] - '0');
        }
        return v;
    };
    CalendarDate d{digits(0, 2), digits(3, 2), digits(6, 4)};
    if (d.day < 0 || d.month < 0 || d.year < 0 || !is_valid(d)) return std::nullopt;
    return d;
}

long day_number(const CalendarDate& d) {
    return days_from_civil(d.year, static_cast<unsigned>(d.month), static_cast<unsigned>(d.day)) -
           kEpoch;
}

CalendarDate from_day_number(long n) {
    long z = n + kEpoch + 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    long y = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    y += m <= 2;
    return CalendarDate{static_cast<int>(d), static_cast<int>(m), static_cast<int>(y)};
}

CalendarDate add(const CalendarDate& date, const Duration& duration) {
    if (!is_valid(date)) throw Error("E_DATE", "invalid base date " + to_string(date));
    if (duration.count < 0) throw Error("E_RANGE", "negative duration");
    CalendarDate out = date;
    switch (duration.unit) {
        case DurationUnit::days:
            out = from_day_number(day_number(date) + duration.count);
            break;
        case DurationUnit::months: {
            long total = static_cast<long>(date.year) * 12 + (date.month - 1) + duration.count;
            out.year = static_cast<int>(total / 12);
            out.month = static_cast<int>(total % 12) + 1;
            if (out.year <= kMaxYear) out.day = std::min(date.day, days_in_month(out.year, out.month));
            break;
        }
        case DurationUnit::years:
            out.year = date.year + duration.count;
            if (out.year <= kMaxYear) out.day = std::min(date.day, days_in_month(out.year, out.month));
            break;
    }
    if (!is_valid(out)) {
        throw Error("E_RANGE", "date arithmetic leaves the supported range from " + to_string(date));
    }
    return out;
}

std::string_view to_string(DurationUnit unit) {
    switch (unit) {
        case DurationUnit::years: return "years";
        case DurationUnit::months: return "months";
        case DurationUnit::days: return "days";
    }
    return "years";
}

std::optional<DurationUnit> parse_unit(std::string_view text) {
    if (text == "years" || text == "year") return DurationUnit::years;
    if (text == "months" || text == "month") return DurationUnit::months;
    if (text == "days" || text == "day") return DurationUnit::days;
    return std::nullopt;
}

std::string_view month_name(int month) {
    return kMonthNames.at(static_cast<size_t>(month - 1));
}

}  // namespace law
