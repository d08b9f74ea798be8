#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "loadsynth/calendar.hpp"
#include "loadsynth/composition.hpp"
#include "loadsynth/error.hpp"
#include "loadsynth/harmonic.hpp"
#include "loadsynth/io.hpp"
#include "loadsynth/morphing.hpp"
#include "loadsynth/series.hpp"

namespace loadsynth {

/// Grid steps accepted by the tool (hours).
inline constexpr std::array<int, 5> allowed_steps_per_day{24, 48, 96, 144, 288};

inline constexpr double monthly_tolerance = 0.02;
inline constexpr double yearly_tolerance = 0.005;

/// Everything a run depends on. Relative paths read from a config file are
/// resolved against the file's directory.
struct RunConfig {
    int year = 2023;
    double dt = 0.25;
    double window = default_window_hours;
    std::array<MonthDay, 4> season_starts = meteorological_season_starts;
    /// profile_files[season - 1][weekday - 1], file names relative to `profiles_dir`.
    std::array<std::array<std::string, 7>, 4> profile_files{};
    bool morphing = true;
    std::filesystem::path months;
    std::filesystem::path profiles_dir;
    std::filesystem::path out;
    std::filesystem::path report;
    std::filesystem::path plot_data;
    std::string units = "kWh";

    Resolution resolution() const { return Resolution::from_hours(dt); }
};

namespace config_detail {

inline constexpr std::array<std::string_view, 4> season_names{"winter", "spring", "summer", "autumn"};
inline constexpr std::array<std::string_view, 7> weekday_names{"mon", "tue", "wed", "thu", "fri", "sat", "sun"};

inline std::optional<int> season_index(std::string_view s) {
    for (std::size_t i = 0; i < season_names.size(); ++i) {
        if (s == season_names[i] || s == std::to_string(i + 1)) return static_cast<int>(i + 1);
    }
    return std::nullopt;
}

inline std::optional<int> weekday_index(std::string_view s) {
    for (std::size_t i = 0; i < weekday_names.size(); ++i) {
        if (s == weekday_names[i] || s == std::to_string(i + 1)) return static_cast<int>(i + 1);
    }
    return std::nullopt;
}

// "mon", "mon-fri", "all"
inline std::optional<std::pair<int, int>> weekday_range(std::string_view s) {
    if (s == "all") return std::pair{1, 7};
    const auto dash = s.find('-');
    if (dash == std::string_view::npos) {
        const auto d = weekday_index(s);
        if (!d) return std::nullopt;
        return std::pair{*d, *d};
    }
    const auto lo = weekday_index(s.substr(0, dash));
    const auto hi = weekday_index(s.substr(dash + 1));
    if (!lo || !hi || *lo > *hi) return std::nullopt;
    return std::pair{*lo, *hi};
}

inline std::optional<MonthDay> parse_month_day(std::string_view s) {
    const auto dash = s.find('-');
    if (dash == std::string_view::npos) return std::nullopt;
    MonthDay md;
    if (!text::parse_int(s.substr(0, dash), md.month) || !text::parse_int(s.substr(dash + 1), md.day)) return std::nullopt;
    return md;
}

// Accepts decimals and simple fractions such as 1/6.
inline std::optional<double> parse_hours(std::string_view s) {
    const auto slash = s.find('/');
    double value = 0.0;
    if (slash == std::string_view::npos) {
        if (!text::parse_double(s, value)) return std::nullopt;
        return value;
    }
    double num = 0.0;
    double den = 0.0;
    if (!text::parse_double(s.substr(0, slash), num) || !text::parse_double(s.substr(slash + 1), den) || den == 0.0) {
        return std::nullopt;
    }
    return num / den;
}

inline std::string format_month_day(MonthDay md) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d-%02d", md.month, md.day);
    return buf;
}

}  // namespace config_detail

/// Applies one `key = value` setting. Unknown keys and bad values are config errors.
/// `assigned` tracks profile slots already set in this source to reject overlaps.
inline void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value,
                          const std::filesystem::path& base_dir, std::array<std::array<bool, 7>, 4>& assigned,
                          const std::string& at) {
    using namespace config_detail;
    const auto bad = [&](const std::string& why) { return config_error(at + why); };
    const auto path_value = [&] { return (base_dir / std::filesystem::path(std::string(value))).lexically_normal(); };

    if (key == "year") {
        if (!text::parse_int(value, cfg.year)) throw bad("year '" + std::string(value) + "' is not an integer");
    } else if (key == "dt") {
        const auto dt = parse_hours(value);
        if (!dt) throw bad("dt '" + std::string(value) + "' is not a number");
        cfg.dt = *dt;
    } else if (key == "window") {
        const auto w = parse_hours(value);
        if (!w) throw bad("window '" + std::string(value) + "' is not a number");
        cfg.window = *w;
    } else if (key.starts_with("season_start.")) {
        const auto s = season_index(key.substr(13));
        if (!s) throw bad("unknown season in key '" + std::string(key) + "'");
        const auto md = parse_month_day(value);
        if (!md) throw bad("season start '" + std::string(value) + "' is not MM-DD");
        cfg.season_starts[static_cast<std::size_t>(*s - 1)] = *md;
    } else if (key == "morphing") {
        if (value == "on") cfg.morphing = true;
        else if (value == "off") cfg.morphing = false;
        else throw bad("morphing must be 'on' or 'off'");
    } else if (key == "months") {
        cfg.months = path_value();
    } else if (key == "profiles") {
        cfg.profiles_dir = path_value();
    } else if (key == "out") {
        cfg.out = path_value();
    } else if (key == "report") {
        cfg.report = path_value();
    } else if (key == "plot_data") {
        cfg.plot_data = path_value();
    } else if (key == "units") {
        cfg.units = std::string(value);
    } else if (key.starts_with("profile.")) {
        const auto parts = text::split(key, '.');
        if (parts.size() != 3) throw bad("profile key must be profile.<season>.<days>");
        const auto s = season_index(parts[1]);
        const auto days = weekday_range(parts[2]);
        if (!s) throw bad("unknown season '" + std::string(parts[1]) + "'");
        if (!days) throw bad("unknown weekday range '" + std::string(parts[2]) + "'");
        if (value.empty()) throw bad("empty profile file name");
        for (int d = days->first; d <= days->second; ++d) {
            auto& taken = assigned[static_cast<std::size_t>(*s - 1)][static_cast<std::size_t>(d - 1)];
            if (taken) {
                throw bad("profile slot " + std::string(season_names[static_cast<std::size_t>(*s - 1)]) + "." +
                          std::string(weekday_names[static_cast<std::size_t>(d - 1)]) + " assigned twice");
            }
            taken = true;
            cfg.profile_files[static_cast<std::size_t>(*s - 1)][static_cast<std::size_t>(d - 1)] = std::string(value);
        }
    } else {
        throw bad("unknown key '" + std::string(key) + "'");
    }
}

/// Parses the flat `key = value` config format ('#' starts a comment).
inline RunConfig parse_config(const std::vector<std::string>& lines, const std::filesystem::path& base_dir,
                              const std::string& source = "config") {
    RunConfig cfg;
    std::array<std::array<bool, 7>, 4> assigned{};
    std::set<std::string, std::less<>> seen;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = text::trim(line);
        if (line.empty()) continue;
        const std::string at = source + ":" + std::to_string(i + 1) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw config_error(at + "expected 'key = value'");
        const auto key = text::trim(line.substr(0, eq));
        const auto value = text::trim(line.substr(eq + 1));
        if (!seen.emplace(key).second) throw config_error(at + "duplicate key '" + std::string(key) + "'");
        apply_setting(cfg, key, value, base_dir, assigned, at);
    }
    return cfg;
}

inline RunConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_lines(path), path.parent_path(), path.string());
}

/// Checks ranges and completeness; throws config_error on the first problem.
inline void validate(const RunConfig& cfg) {
    using namespace config_detail;
    make_year_context(cfg.year);
    const Resolution res = cfg.resolution();
    if (std::find(allowed_steps_per_day.begin(), allowed_steps_per_day.end(), res.steps_per_day()) ==
        allowed_steps_per_day.end()) {
        throw config_error("dt = " + text::format_time(cfg.dt) + " h is not one of 1, 1/2, 1/4, 1/6, 1/12");
    }
    if (!(cfg.window > 0.0) || res.steps_in(cfg.window).value_or(0) <= 0) {
        throw config_error("window = " + text::format_time(cfg.window) + " h is not a positive multiple of dt");
    }
    make_season_calendar(make_year_context(cfg.year), cfg.season_starts);
    for (std::size_t s = 0; s < 4; ++s) {
        for (std::size_t d = 0; d < 7; ++d) {
            if (cfg.profile_files[s][d].empty()) {
                throw config_error("no profile assigned to " + std::string(season_names[s]) + "." +
                                   std::string(weekday_names[d]));
            }
        }
    }
    if (cfg.months.empty()) throw config_error("no monthly integrals file ('months')");
}

/// Config text that reproduces `cfg` when parsed (profile slots listed one by one).
inline std::string format_config(const RunConfig& cfg) {
    using namespace config_detail;
    std::string out;
    const auto line = [&out](std::string_view key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    line("year", std::to_string(cfg.year));
    line("dt", text::format_time(cfg.dt));
    line("window", text::format_time(cfg.window));
    for (std::size_t s = 0; s < 4; ++s) {
        line("season_start." + std::string(season_names[s]), format_month_day(cfg.season_starts[s]));
    }
    line("morphing", cfg.morphing ? "on" : "off");
    line("units", cfg.units);
    line("months", cfg.months.generic_string());
    line("profiles", cfg.profiles_dir.generic_string());
    for (std::size_t s = 0; s < 4; ++s) {
        for (std::size_t d = 0; d < 7; ++d) {
            line("profile." + std::string(season_names[s]) + "." + std::string(weekday_names[d]), cfg.profile_files[s][d]);
        }
    }
    return out;
}

/// Loads each distinct profile file once and fills all 28 slots.
inline ProfileLibrary load_profile_library(const RunConfig& cfg) {
    const Resolution res = cfg.resolution();
    ProfileLibrary lib(res);
    std::map<std::string, std::size_t> ids;
    for (int s = 1; s <= 4; ++s) {
        for (int d = 1; d <= 7; ++d) {
            const std::string& file = cfg.profile_files[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(d - 1)];
            auto it = ids.find(file);
            if (it == ids.end()) {
                it = ids.emplace(file, lib.add(load_profile_csv(cfg.profiles_dir / file, res))).first;
            }
            lib.assign(season_from_index(s), weekday_from_index(d), it->second);
        }
    }
    return lib;
}

struct AlphaStats {
    double min = 0.0;
    double max = 0.0;
    double max_step_ratio = 0.0;  ///< max_i |alpha_{i+1} / alpha_i - 1|
    double max_abs_step = 0.0;    ///< max_i |alpha_{i+1} - alpha_i|
};

inline AlphaStats alpha_stats(const YearSeries& alpha) {
    AlphaStats st;
    st.min = st.max = alpha.values.front();
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        st.min = std::min(st.min, alpha.values[i]);
        st.max = std::max(st.max, alpha.values[i]);
        if (i + 1 < alpha.size()) {
            st.max_step_ratio = std::max(st.max_step_ratio, std::abs(alpha.values[i + 1] / alpha.values[i] - 1.0));
            st.max_abs_step = std::max(st.max_abs_step, std::abs(alpha.values[i + 1] - alpha.values[i]));
        }
    }
    return st;
}

/// All intermediate and final products of one synthesis.
struct PipelineResult {
    YearContext context;
    SeasonCalendar seasons;
    MonthlyIntegrals months;
    HarmonicSeries harmonics;
    YearSeries raw;
    ScalingSeries scaling;
    SynthesizedSeries load;
    std::vector<IntervalCheck> month_checks;
    IntervalCheck year_check;
    AlphaStats alpha;
    std::vector<std::pair<double, double>> negative_tau;
    std::vector<std::string> warnings;

    bool within_tolerances() const {
        for (const auto& c : month_checks) {
            if (!(c.relative_error < monthly_tolerance)) return false;
        }
        return year_check.relative_error < yearly_tolerance;
    }

    /// Interpolant rate sampled at each grid time.
    std::vector<double> sampled_y_rate() const {
        std::vector<double> y(raw.size());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = y_rate(harmonics, context, raw.time_of(i));
        return y;
    }

    PlotColumns plot_columns(const std::vector<double>& y) const {
        return {raw.resolution, load.load.values, y, raw.values, scaling.alpha.values};
    }
};

/// fit -> raw year -> alpha -> R -> interval checks, without touching the file system.
inline PipelineResult synthesize_year(const RunConfig& cfg, const MonthlyIntegrals& months, const ProfileLibrary& lib) {
    PipelineResult r;
    r.context = make_year_context(cfg.year);
    r.seasons = make_season_calendar(r.context, cfg.season_starts);
    r.months = months;
    if (months.has_negative()) r.warnings.emplace_back("monthly integrals contain negative values");
    r.harmonics = fit_harmonics(months);
    r.negative_tau = negative_intervals(r.harmonics);
    if (!r.negative_tau.empty()) r.warnings.emplace_back("interpolant dips below zero (see report)");
    r.raw = build_raw_year(lib, r.seasons, r.context, cfg.morphing ? MorphMode::linear : MorphMode::none);
    r.scaling = compute_alpha(r.harmonics, r.context, r.raw, cfg.window);
    r.load = synthesize(r.scaling, r.raw);
    r.month_checks = verify_intervals(r.load, r.harmonics, r.context, calendar_months(r.context));
    r.year_check = verify_intervals(r.load, r.harmonics, r.context, {whole_year(r.context)}).front();
    r.alpha = alpha_stats(r.scaling.alpha);
    return r;
}

namespace report_detail {

inline std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline std::string pass(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace report_detail

/// Interval-check table shared by `synth` and `verify` reports.
inline std::string format_checks(const std::vector<IntervalCheck>& months, const IntervalCheck& year,
                                 const std::string& units) {
    using report_detail::num;
    std::string out = "[months]\n# month,expected_" + units + ",achieved_" + units + ",relative_error\n";
    double worst = 0.0;
    for (std::size_t m = 0; m < months.size(); ++m) {
        out += std::to_string(m + 1) + "," + num(months[m].expected) + "," + num(months[m].actual) + "," +
               num(months[m].relative_error) + "\n";
        worst = std::max(worst, months[m].relative_error);
    }
    out += "\n[year]\nexpected = " + num(year.expected) + "\nachieved = " + num(year.actual) +
           "\nrelative_error = " + num(year.relative_error) + "\n";
    out += "\n[checks]\n";
    out += "months_within_2_percent = " + report_detail::pass(worst < monthly_tolerance) + " (worst " + num(worst) + ")\n";
    out += "year_within_0.5_percent = " + report_detail::pass(year.relative_error < yearly_tolerance) + "\n";
    return out;
}

/// Deterministic plain-text verification report.
inline std::string format_report(const RunConfig& cfg, const PipelineResult& r) {
    using report_detail::num;
    std::string out = "# loadsynth verification report\n\n[config]\n" + format_config(cfg) + "\n";
    out += "[interpolant]\na0 = " + num(r.harmonics.a0) + "\n";
    for (std::size_t j = 0; j < harmonic_count; ++j) {
        out += "a" + std::to_string(j + 1) + " = " + num(r.harmonics.a[j]) + ", b" + std::to_string(j + 1) + " = " +
               num(r.harmonics.b[j]) + "\n";
    }
    if (r.negative_tau.empty()) {
        out += "negative_intervals = none\n";
    } else {
        for (const auto& [lo, hi] : r.negative_tau) out += "negative_interval_tau = " + num(lo) + " .. " + num(hi) + "\n";
    }
    out += "\n[alpha]\nmin = " + num(r.alpha.min) + "\nmax = " + num(r.alpha.max) +
           "\nmax_step_ratio = " + num(r.alpha.max_step_ratio) + "\nmax_abs_step = " + num(r.alpha.max_abs_step) + "\n\n";
    out += format_checks(r.month_checks, r.year_check, cfg.units);
    for (const auto& w : r.warnings) out += "warning = " + w + "\n";
    return out;
}

/// Loads inputs named by `cfg`, synthesizes, and writes every configured output.
inline PipelineResult run_pipeline(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.out.empty()) throw config_error("no output series path ('out')");
    const MonthlyIntegrals months = load_monthly_csv(cfg.months);
    const ProfileLibrary lib = load_profile_library(cfg);
    PipelineResult r = synthesize_year(cfg, months, lib);
    write_series_csv(r.load.load, cfg.out);
    if (!cfg.report.empty()) write_text_file(cfg.report, format_report(cfg, r));
    if (!cfg.plot_data.empty()) {
        const auto y = r.sampled_y_rate();
        write_plot_data(r.plot_columns(y), cfg.plot_data);
    }
    return r;
}

}  // namespace loadsynth
