#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "loadsynth/calendar.hpp"
#include "loadsynth/error.hpp"
#include "loadsynth/harmonic.hpp"
#include "loadsynth/series.hpp"

namespace loadsynth {

/// Default scaling half-window: one week.
inline constexpr double default_window_hours = 168.0;

/// Per-sample scaling factors alpha_i on the grid of the raw series.
struct ScalingSeries {
    YearSeries alpha;
};

/// Final synthesized load R_i = alpha_i * w_i, in energy per hour.
struct SynthesizedSeries {
    YearSeries load;
};

/// Harmonic interpolant pulled back to wall-clock hours: y(tau(t)) * dtau/dt.
/// Its integral over any calendar month equals that month's total.
inline double y_rate(const HarmonicSeries& h, const YearContext& ctx, double t) {
    const MonthCoordinate mc = month_coordinate(ctx, t);
    return eval_harmonics(h, mc.tau) * mc.jacobian;
}

/// Integral of y_rate over [a, b] hours, a <= b, with the year extended
/// periodically in both directions.
inline double integral_y(const HarmonicSeries& h, const YearContext& ctx, double a, double b) {
    if (!(a <= b)) throw std::invalid_argument("integral_y: reversed bounds");
    if (a == b) return 0.0;
    const double period = ctx.hours_in_year;
    const double ka = std::floor(a / period);
    const double kb = std::floor(b / period);
    const double ra = std::clamp(a - ka * period, 0.0, period);
    const double rb = std::clamp(b - kb * period, 0.0, period);
    const double tau_a = month_coordinate(ctx, ra).tau;
    const double tau_b = month_coordinate(ctx, rb).tau;
    if (ka == kb) return integrate_harmonics(h, tau_a, tau_b);
    const double full_periods = kb - ka - 1.0;
    double sum = integrate_harmonics(h, tau_a, 12.5) + integrate_harmonics(h, 0.5, tau_b);
    if (full_periods > 0.0) sum += full_periods * integrate_harmonics(h, 0.5, 12.5);
    return sum;
}

/// Numerator of alpha: integral of y_rate over the cyclic window [t - W, t + W].
inline double window_integral_y(const HarmonicSeries& h, const YearContext& ctx, double t, double half_window) {
    if (!(half_window > 0.0)) throw std::invalid_argument("window half-width must be positive");
    return integral_y(h, ctx, t - half_window, t + half_window);
}

namespace detail {

inline long checked_steps(const Resolution& res, double hours, const char* what) {
    const auto steps = res.steps_in(hours);
    if (!steps) {
        throw config_error(std::string(what) + " " + std::to_string(hours) + " h is not a multiple of dt = " +
                           std::to_string(res.dt()) + " h");
    }
    return *steps;
}

inline std::size_t wrap_index(long i, std::size_t n) {
    const long m = static_cast<long>(n);
    return static_cast<std::size_t>((i % m + m) % m);
}

// Cumulative sums with Neumaier compensation; prefix[k] = sum of values[0..k).
inline std::vector<double> compensated_prefix(const std::vector<double>& values) {
    std::vector<double> prefix(values.size() + 1, 0.0);
    double sum = 0.0;
    double carry = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        const double t = sum + v;
        carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
        prefix[i + 1] = sum + carry;
    }
    return prefix;
}

// Sum of `count` samples starting at (possibly negative) index `first`, wrapping.
inline double cyclic_sum(const std::vector<double>& prefix, long first, long count) {
    const std::size_t n = prefix.size() - 1;
    const std::size_t start = wrap_index(first, n);
    const std::size_t end = start + static_cast<std::size_t>(count);
    const std::size_t periods = end / n;
    const std::size_t rest = end % n;
    return static_cast<double>(periods) * prefix[n] + prefix[rest] - prefix[start];
}

}  // namespace detail

/// Denominator of alpha: left-rectangle integral of w over the cyclic window
/// [t - W, t + W]. Both t and W must lie on the grid.
inline double window_integral_w(const YearSeries& w, double t, double half_window) {
    const long half = detail::checked_steps(w.resolution, half_window, "window half-width");
    if (half <= 0) throw config_error("window half-width must be positive");
    const long centre = detail::checked_steps(w.resolution, t, "window centre");
    double sum = 0.0;
    for (long k = centre - half; k < centre + half; ++k) sum += w.values[detail::wrap_index(k, w.size())];
    const double integral = w.dt() * sum;
    if (!(integral > 0.0)) {
        throw degeneracy_error("raw profile integrates to " + std::to_string(integral) + " over window [" +
                               std::to_string(t - half_window) + ", " + std::to_string(t + half_window) + "] h");
    }
    return integral;
}

/// alpha_i = window_integral_y / window_integral_w at every grid point.
inline ScalingSeries compute_alpha(const HarmonicSeries& h, const YearContext& ctx, const YearSeries& w,
                                   double half_window = default_window_hours) {
    w.require_year(ctx);
    const long half = detail::checked_steps(w.resolution, half_window, "window half-width");
    if (half <= 0) throw config_error("window half-width must be positive");
    const std::vector<double> prefix = detail::compensated_prefix(w.values);
    std::vector<double> alpha(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const long centre = static_cast<long>(i);
        const double denominator = w.dt() * detail::cyclic_sum(prefix, centre - half, 2 * half);
        if (!(denominator > 0.0)) {
            throw degeneracy_error("raw profile integrates to " + std::to_string(denominator) +
                                   " over the window around sample " + std::to_string(i) + " (t = " +
                                   std::to_string(w.time_of(i)) + " h)");
        }
        alpha[i] = window_integral_y(h, ctx, w.time_of(i), half_window) / denominator;
    }
    return {YearSeries(w.resolution, std::move(alpha))};
}

inline SynthesizedSeries synthesize(const ScalingSeries& scaling, const YearSeries& w) {
    const YearSeries& alpha = scaling.alpha;
    if (alpha.resolution != w.resolution || alpha.size() != w.size()) {
        throw std::invalid_argument("scaling series and raw series are on different grids");
    }
    std::vector<double> load(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) load[i] = alpha.values[i] * w.values[i];
    return {YearSeries(w.resolution, std::move(load))};
}

struct Interval {
    double start = 0.0;  ///< hours since Jan 1 00:00
    double end = 0.0;
};

struct IntervalCheck {
    Interval interval;
    double expected = 0.0;  ///< analytic integral of y_rate
    double actual = 0.0;    ///< left-rectangle integral of R
    double relative_error = 0.0;
};

/// The twelve calendar months of the context year.
inline std::vector<Interval> calendar_months(const YearContext& ctx) {
    std::vector<Interval> months;
    for (std::size_t m = 0; m < 12; ++m) {
        months.push_back({static_cast<double>(ctx.month_boundaries[m]), static_cast<double>(ctx.month_boundaries[m + 1])});
    }
    return months;
}

inline Interval whole_year(const YearContext& ctx) { return {0.0, static_cast<double>(ctx.hours_in_year)}; }

/// Compares integrals of R against the interpolant on each interval.
/// Interval endpoints are snapped to the nearest grid point for R.
inline std::vector<IntervalCheck> verify_intervals(const SynthesizedSeries& r, const HarmonicSeries& h,
                                                   const YearContext& ctx, const std::vector<Interval>& intervals) {
    const YearSeries& load = r.load;
    load.require_year(ctx);
    constexpr double floor_eps = 1e-12;
    std::vector<IntervalCheck> checks;
    checks.reserve(intervals.size());
    for (const Interval& iv : intervals) {
        if (!(iv.start >= 0.0 && iv.start <= iv.end && iv.end <= ctx.hours_in_year)) {
            throw std::invalid_argument("malformed interval [" + std::to_string(iv.start) + ", " +
                                        std::to_string(iv.end) + "] h");
        }
        IntervalCheck check{iv, 0.0, 0.0, 0.0};
        if (iv.start < iv.end) {
            check.expected = integral_y(h, ctx, iv.start, iv.end);
            const auto first = static_cast<std::size_t>(std::llround(iv.start / load.dt()));
            const auto last = static_cast<std::size_t>(std::llround(iv.end / load.dt()));
            double sum = 0.0;
            for (std::size_t i = first; i < last; ++i) sum += load.values[i];
            check.actual = load.dt() * sum;
            check.relative_error = std::abs(check.actual - check.expected) / std::max(std::abs(check.expected), floor_eps);
        }
        checks.push_back(check);
    }
    return checks;
}

}  // namespace loadsynth
