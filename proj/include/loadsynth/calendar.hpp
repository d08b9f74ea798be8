#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "loadsynth/error.hpp"

namespace loadsynth {

/// ISO weekday, Monday = 1.
enum class Weekday : std::uint8_t { monday = 1, tuesday, wednesday, thursday, friday, saturday, sunday };

/// Season slot of the profile library. The labels follow the default
/// (meteorological) calendar; the actual dates come from SeasonCalendar.
enum class Season : std::uint8_t { winter = 1, spring, summer, autumn };

constexpr int index(Weekday d) { return static_cast<int>(d); }
constexpr int index(Season s) { return static_cast<int>(s); }

constexpr Season next(Season s) { return static_cast<Season>(index(s) % 4 + 1); }

inline Weekday weekday_from_index(int i) {
    if (i < 1 || i > 7) throw std::out_of_range("weekday index must be in 1..7, got " + std::to_string(i));
    return static_cast<Weekday>(i);
}

inline Season season_from_index(int i) {
    if (i < 1 || i > 4) throw std::out_of_range("season index must be in 1..4, got " + std::to_string(i));
    return static_cast<Season>(i);
}

constexpr bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

constexpr int days_in_month(int year, int month) {
    constexpr std::array<int, 12> lengths{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return month == 2 && is_leap_year(year) ? 29 : lengths[static_cast<std::size_t>(month - 1)];
}

namespace detail {

// Days since 1970-01-01 of a proleptic Gregorian date (H. Hinnant's algorithm).
constexpr long days_from_civil(long y, unsigned m, unsigned d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

}  // namespace detail

/// ISO weekday of a civil date.
constexpr Weekday weekday_of_date(int year, int month, int day) {
    const long days = detail::days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
    // 1970-01-01 was a Thursday (ISO 4).
    const long shifted = (days % 7 + 7 + 3) % 7;
    return static_cast<Weekday>(shifted + 1);
}

/// Calendar facts of one year, measured in hours from Jan 1 00:00.
struct YearContext {
    int year = 0;
    int hours_in_year = 0;
    std::array<int, 13> month_boundaries{};
    Weekday weekday_of_jan1 = Weekday::monday;

    int days() const { return hours_in_year / 24; }

    int month_hours(int month) const {
        return month_boundaries[static_cast<std::size_t>(month)] - month_boundaries[static_cast<std::size_t>(month - 1)];
    }

    /// Month 1..12 containing t; the year end belongs to December.
    int month_of(double t) const {
        int m = 1;
        while (m < 12 && t >= month_boundaries[static_cast<std::size_t>(m)]) ++m;
        return m;
    }

    /// Hour offset of 00:00 on the given date.
    int hour_of_date(int month, int day) const {
        return month_boundaries[static_cast<std::size_t>(month - 1)] + (day - 1) * 24;
    }
};

inline constexpr int min_supported_year = 1583;
inline constexpr int max_supported_year = 9999;

inline YearContext make_year_context(int year) {
    if (year < min_supported_year || year > max_supported_year) {
        throw config_error("year " + std::to_string(year) + " outside supported range " +
                           std::to_string(min_supported_year) + ".." + std::to_string(max_supported_year));
    }
    YearContext ctx;
    ctx.year = year;
    ctx.month_boundaries[0] = 0;
    for (int m = 1; m <= 12; ++m) {
        ctx.month_boundaries[static_cast<std::size_t>(m)] =
            ctx.month_boundaries[static_cast<std::size_t>(m - 1)] + 24 * days_in_month(year, m);
    }
    ctx.hours_in_year = ctx.month_boundaries[12];
    ctx.weekday_of_jan1 = weekday_of_date(year, 1, 1);
    return ctx;
}

/// Position on the uniform month axis, where month T spans [T - 1/2, T + 1/2].
struct MonthCoordinate {
    double tau = 0.5;
    double jacobian = 0.0;  ///< d(tau)/dt in 1/hours
};

inline void require_within_year(const YearContext& ctx, double t) {
    if (!(t >= 0.0 && t <= ctx.hours_in_year)) {
        throw std::out_of_range("time " + std::to_string(t) + " h outside year [0, " +
                                std::to_string(ctx.hours_in_year) + "]");
    }
}

/// Piecewise-affine map from wall-clock hours to the month axis.
inline MonthCoordinate month_coordinate(const YearContext& ctx, double t) {
    require_within_year(ctx, t);
    const int month = ctx.month_of(t);
    const double length = ctx.month_hours(month);
    const double start = ctx.month_boundaries[static_cast<std::size_t>(month - 1)];
    return {month - 0.5 + (t - start) / length, 1.0 / length};
}

/// Weekday of the civil day containing t.
inline Weekday weekday_of(const YearContext& ctx, double t) {
    if (!(t >= 0.0 && t < ctx.hours_in_year)) {
        throw std::out_of_range("time " + std::to_string(t) + " h outside year");
    }
    const auto day = static_cast<int>(std::floor(t / 24.0));
    return static_cast<Weekday>((index(ctx.weekday_of_jan1) - 1 + day) % 7 + 1);
}

struct MonthDay {
    int month = 1;
    int day = 1;

    friend bool operator==(const MonthDay&, const MonthDay&) = default;
};

/// December, March, June, September firsts.
inline constexpr std::array<MonthDay, 4> meteorological_season_starts{{{12, 1}, {3, 1}, {6, 1}, {9, 1}}};

/// Season boundaries and morphing anchors for one year. Seasons are cyclic:
/// the first season may begin in December and run into the next year.
///
/// The anchor mu_s of a season is the noon of its middle civil day (day
/// floor(n/2) of an n-day season), so it always coincides with the point at
/// which a day's morph fraction is sampled.
struct SeasonCalendar {
    std::array<MonthDay, 4> season_starts = meteorological_season_starts;
    std::array<int, 4> start_hours{};
    std::array<int, 4> season_days{};
    std::array<double, 4> season_midpoints{};
    int hours_in_year = 0;

    double midpoint(Season s) const { return season_midpoints[static_cast<std::size_t>(index(s) - 1)]; }
    double start(Season s) const { return start_hours[static_cast<std::size_t>(index(s) - 1)]; }
};

inline SeasonCalendar make_season_calendar(const YearContext& ctx,
                                           const std::array<MonthDay, 4>& starts = meteorological_season_starts) {
    SeasonCalendar cal;
    cal.season_starts = starts;
    cal.hours_in_year = ctx.hours_in_year;
    const int days = ctx.days();
    std::array<int, 4> start_day{};
    for (std::size_t s = 0; s < 4; ++s) {
        const auto [month, day] = starts[s];
        if (month < 1 || month > 12 || day < 1 || day > days_in_month(2001, month)) {
            throw config_error("season " + std::to_string(s + 1) + " start " + std::to_string(month) + "-" +
                               std::to_string(day) + " is not a valid date (Feb 29 is not allowed)");
        }
        start_day[s] = ctx.hour_of_date(month, day) / 24;
        cal.start_hours[s] = start_day[s] * 24;
    }
    int covered = 0;
    for (std::size_t s = 0; s < 4; ++s) {
        const int gap = ((start_day[(s + 1) % 4] - start_day[s]) % days + days) % days;
        if (gap == 0) {
            throw config_error("seasons " + std::to_string(s + 1) + " and " + std::to_string((s + 1) % 4 + 1) +
                               " start on the same day");
        }
        cal.season_days[s] = gap;
        covered += gap;
    }
    if (covered != days) {
        throw config_error("season starts are not in cyclic order (season 1 -> 2 -> 3 -> 4)");
    }
    for (std::size_t s = 0; s < 4; ++s) {
        const int mid_day = (start_day[s] + cal.season_days[s] / 2) % days;
        cal.season_midpoints[s] = mid_day * 24.0 + 12.0;
    }
    return cal;
}

/// Where t sits between two consecutive season anchors.
struct SeasonPosition {
    Season lower = Season::winter;  ///< season whose anchor is at or before t
    Season upper = Season::spring;  ///< cyclic successor of `lower`
    double fraction = 0.0;          ///< linear ramp: 0 at lower anchor, 1 at upper anchor

    friend bool operator==(const SeasonPosition&, const SeasonPosition&) = default;
};

namespace detail {

inline double cyclic_offset(double t, double origin, double period) {
    double d = t - origin;
    if (d < 0.0) d += period;
    if (d >= period) d -= period;
    return d;
}

// Index (0-based) of the anchor that is nearest at-or-before t, cyclically.
template <class Anchors>
std::size_t latest_at_or_before(const Anchors& anchors, double t, double period) {
    std::size_t best = 0;
    double best_offset = period;
    for (std::size_t s = 0; s < anchors.size(); ++s) {
        const double d = cyclic_offset(t, anchors[s], period);
        if (d < best_offset) {
            best_offset = d;
            best = s;
        }
    }
    return best;
}

}  // namespace detail

inline SeasonPosition season_position(const SeasonCalendar& cal, const YearContext& ctx, double t) {
    require_within_year(ctx, t);
    if (cal.hours_in_year != ctx.hours_in_year) {
        throw config_error("season calendar was built for a different year length");
    }
    const double period = ctx.hours_in_year;
    const std::size_t lo = detail::latest_at_or_before(cal.season_midpoints, t, period);
    const std::size_t hi = (lo + 1) % 4;
    const double span = detail::cyclic_offset(cal.season_midpoints[hi], cal.season_midpoints[lo], period);
    if (span <= 0.0) throw config_error("degenerate season calendar: two equal season midpoints");
    const double offset = detail::cyclic_offset(t, cal.season_midpoints[lo], period);
    return {static_cast<Season>(lo + 1), static_cast<Season>(hi + 1), offset / span};
}

/// Season whose date range contains t (by start dates, no morphing).
inline Season season_of(const SeasonCalendar& cal, const YearContext& ctx, double t) {
    require_within_year(ctx, t);
    return static_cast<Season>(detail::latest_at_or_before(cal.start_hours, t, ctx.hours_in_year) + 1);
}

}  // namespace loadsynth
