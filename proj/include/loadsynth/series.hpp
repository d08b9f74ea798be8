#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "loadsynth/calendar.hpp"
#include "loadsynth/error.hpp"

namespace loadsynth {

/// Sampling grid step, stored as the integral number of steps per day so
/// that grid times never accumulate rounding.
class Resolution {
public:
    explicit Resolution(int steps_per_day) : steps_per_day_(steps_per_day) {
        if (steps_per_day < 1) throw std::invalid_argument("resolution needs at least one step per day");
    }

    /// Accepts dt (hours) only if 24 / dt is an integer to within 1e-9.
    static Resolution from_hours(double dt) {
        if (!(dt > 0.0) || !std::isfinite(dt) || dt > 24.0) {
            throw config_error("time step " + std::to_string(dt) + " h is not in (0, 24]");
        }
        const double steps = 24.0 / dt;
        const double rounded = std::round(steps);
        if (std::abs(24.0 / rounded - dt) > 1e-9) {
            throw config_error("time step " + std::to_string(dt) + " h does not divide a day exactly");
        }
        return Resolution(static_cast<int>(rounded));
    }

    int steps_per_day() const { return steps_per_day_; }
    double dt() const { return 24.0 / steps_per_day_; }
    double time_of(std::size_t i) const { return 24.0 * static_cast<double>(i) / steps_per_day_; }

    /// Number of whole steps in `hours` (may be negative), empty if it is not a multiple of dt.
    std::optional<long> steps_in(double hours) const {
        const double steps = hours * steps_per_day_ / 24.0;
        const double rounded = std::round(steps);
        return std::abs(steps - rounded) <= 1e-9 * std::max(1.0, std::abs(steps)) ? std::optional<long>(static_cast<long>(rounded)) : std::nullopt;
    }

    friend bool operator==(const Resolution&, const Resolution&) = default;

private:
    int steps_per_day_;
};

/// A uniformly gridded one-year series starting at Jan 1 00:00. Sample i
/// stands for the step interval [t_i, t_i + dt).
struct YearSeries {
    Resolution resolution{24};
    std::vector<double> values;

    YearSeries() = default;

    YearSeries(Resolution res, std::vector<double> v) : resolution(res), values(std::move(v)) {
        if (values.empty() || values.size() % static_cast<std::size_t>(res.steps_per_day()) != 0) {
            throw input_error("series length " + std::to_string(values.size()) + " is not a whole number of days");
        }
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!std::isfinite(values[i])) throw input_error("series value " + std::to_string(i) + " is not finite");
        }
    }

    std::size_t size() const { return values.size(); }
    double dt() const { return resolution.dt(); }
    double time_of(std::size_t i) const { return resolution.time_of(i); }
    double hours() const { return static_cast<double>(values.size()) * 24.0 / resolution.steps_per_day(); }

    void require_year(const YearContext& ctx) const {
        if (values.size() != static_cast<std::size_t>(ctx.days()) * static_cast<std::size_t>(resolution.steps_per_day())) {
            throw input_error("series covers " + std::to_string(hours()) + " h but year " + std::to_string(ctx.year) +
                              " has " + std::to_string(ctx.hours_in_year) + " h");
        }
    }
};

}  // namespace loadsynth
