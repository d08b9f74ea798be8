#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "loadsynth/calendar.hpp"
#include "loadsynth/error.hpp"
#include "loadsynth/series.hpp"

namespace loadsynth {

/// Dimensionless 24 h load shape sampled on a fixed grid.
class DayProfile {
public:
    DayProfile(Resolution res, std::vector<double> samples) : resolution_(res), samples_(std::move(samples)) {
        if (samples_.size() != static_cast<std::size_t>(res.steps_per_day())) {
            throw input_error("day profile has " + std::to_string(samples_.size()) + " samples, expected " +
                              std::to_string(res.steps_per_day()));
        }
        bool any_positive = false;
        for (std::size_t k = 0; k < samples_.size(); ++k) {
            const double v = samples_[k];
            if (!std::isfinite(v) || v < 0.0) {
                throw input_error("day profile sample " + std::to_string(k) + " is negative or not finite");
            }
            any_positive = any_positive || v > 0.0;
        }
        if (!any_positive) throw input_error("day profile is all zeros");
    }

    Resolution resolution() const { return resolution_; }
    const std::vector<double>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    double operator[](std::size_t k) const { return samples_[k]; }

    friend bool operator==(const DayProfile&, const DayProfile&) = default;

private:
    Resolution resolution_;
    std::vector<double> samples_;
};

/// Reference day profiles for every (weekday, season) slot. Slots may share
/// a profile (e.g. spring and autumn using the same type days).
class ProfileLibrary {
public:
    explicit ProfileLibrary(Resolution res) : resolution_(res) {}

    /// Adds a profile and returns its id for use with assign().
    std::size_t add(DayProfile profile) {
        if (profile.resolution() != resolution_) {
            throw input_error("day profile step " + std::to_string(profile.resolution().dt()) +
                              " h differs from library step " + std::to_string(resolution_.dt()) + " h");
        }
        profiles_.push_back(std::move(profile));
        return profiles_.size() - 1;
    }

    void assign(Season s, Weekday d, std::size_t id) {
        if (id >= profiles_.size()) throw std::out_of_range("unknown profile id " + std::to_string(id));
        slot(s, d) = id;
    }

    bool assigned(Season s, Weekday d) const {
        return slots_[static_cast<std::size_t>(index(s) - 1)][static_cast<std::size_t>(index(d) - 1)].has_value();
    }

    bool complete() const {
        for (const auto& row : slots_) {
            for (const auto& id : row) {
                if (!id) return false;
            }
        }
        return true;
    }

    const DayProfile& at(Weekday d, Season s) const {
        const auto& id = slots_[static_cast<std::size_t>(index(s) - 1)][static_cast<std::size_t>(index(d) - 1)];
        if (!id) {
            throw config_error("no day profile assigned to season " + std::to_string(index(s)) + ", weekday " +
                               std::to_string(index(d)));
        }
        return profiles_[*id];
    }

    Resolution resolution() const { return resolution_; }
    const std::vector<DayProfile>& profiles() const { return profiles_; }

    /// Same slot layout with every profile multiplied by `factor` > 0.
    ProfileLibrary scaled(double factor) const {
        if (!(factor > 0.0)) throw std::invalid_argument("profile scale factor must be positive");
        ProfileLibrary out(resolution_);
        for (const auto& p : profiles_) {
            std::vector<double> v = p.samples();
            for (double& x : v) x *= factor;
            out.profiles_.emplace_back(resolution_, std::move(v));
        }
        out.slots_ = slots_;
        return out;
    }

private:
    std::optional<std::size_t>& slot(Season s, Weekday d) {
        return slots_[static_cast<std::size_t>(index(s) - 1)][static_cast<std::size_t>(index(d) - 1)];
    }

    Resolution resolution_;
    std::vector<DayProfile> profiles_;
    std::array<std::array<std::optional<std::size_t>, 7>, 4> slots_{};
};

/// Blend of the weekday's profiles in two seasons:
///   (1 - fraction) * T[d][lower] + fraction * T[d][upper].
/// The endpoints reproduce the pure profiles exactly.
inline DayProfile morph_day(const ProfileLibrary& lib, Weekday d, Season lower, Season upper, double fraction) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("morph fraction " + std::to_string(fraction) + " outside [0, 1]");
    }
    const DayProfile& from = lib.at(d, lower);
    const DayProfile& to = lib.at(d, upper);
    std::vector<double> out(from.size());
    const double keep = 1.0 - fraction;
    for (std::size_t k = 0; k < out.size(); ++k) {
        // equal samples stay bit-identical; the blend can be off by an ulp
        out[k] = from[k] == to[k] ? from[k] : keep * from[k] + fraction * to[k];
    }
    return DayProfile(lib.resolution(), std::move(out));
}

enum class MorphMode {
    linear,  ///< ramp between season anchors
    none,    ///< each day uses its own season's profile unblended
};

/// Seasonal blend used for civil day `day` (0-based), sampled at the day's noon.
inline SeasonPosition day_blend(const SeasonCalendar& cal, const YearContext& ctx, int day, MorphMode mode) {
    const double noon = 24.0 * day + 12.0;
    if (mode == MorphMode::none) {
        const Season s = season_of(cal, ctx, noon);
        return {s, next(s), 0.0};
    }
    return season_position(cal, ctx, noon);
}

/// The raw year w: morphed type days strung together day by day.
inline YearSeries build_raw_year(const ProfileLibrary& lib, const SeasonCalendar& cal, const YearContext& ctx,
                                 MorphMode mode = MorphMode::linear) {
    if (!lib.complete()) throw config_error("profile library has unassigned (season, weekday) slots");
    const auto per_day = static_cast<std::size_t>(lib.resolution().steps_per_day());
    std::vector<double> values;
    values.reserve(per_day * static_cast<std::size_t>(ctx.days()));
    for (int day = 0; day < ctx.days(); ++day) {
        const Weekday d = weekday_of(ctx, 24.0 * day);
        const SeasonPosition pos = day_blend(cal, ctx, day, mode);
        const DayProfile blended = morph_day(lib, d, pos.lower, pos.upper, pos.fraction);
        values.insert(values.end(), blended.samples().begin(), blended.samples().end());
    }
    return YearSeries(lib.resolution(), std::move(values));
}

}  // namespace loadsynth
