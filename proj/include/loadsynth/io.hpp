#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "loadsynth/error.hpp"
#include "loadsynth/harmonic.hpp"
#include "loadsynth/morphing.hpp"
#include "loadsynth/series.hpp"

namespace loadsynth {

namespace text {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        parts.push_back(trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return parts;
}

inline bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

inline bool parse_int(std::string_view s, int& out) {
    s = trim(s);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

/// %.10g, used for time stamps.
inline std::string format_time(double t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", t);
    return buf;
}

/// Ten significant digits with trailing zeros kept, e.g. 1.000000000.
inline std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.10g", v);
    return buf;
}

}  // namespace text

/// Lines of a text file with '\r' stripped. Missing files are I/O errors.
inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string() + " for reading");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
    }
    if (in.bad()) throw io_error("read failure on " + path.string());
    return lines;
}

namespace detail {

inline std::string where(const std::filesystem::path& path, std::size_t line_no) {
    return path.string() + ":" + std::to_string(line_no) + ": ";
}

}  // namespace detail

/// Reads `month,value` rows (header required, rows in any order, each month once).
inline MonthlyIntegrals load_monthly_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    std::size_t line_no = 0;
    while (line_no < lines.size() && text::trim(lines[line_no]).empty()) ++line_no;
    if (line_no == lines.size() || text::trim(lines[line_no]) != "month,value") {
        throw input_error(detail::where(path, line_no + 1) + "expected header 'month,value'");
    }
    std::array<double, 12> values{};
    std::array<std::size_t, 12> seen_at{};
    std::size_t rows = 0;
    for (++line_no; line_no < lines.size(); ++line_no) {
        const auto line = text::trim(lines[line_no]);
        if (line.empty()) continue;
        const auto at = detail::where(path, line_no + 1);
        const auto fields = text::split(line, ',');
        if (fields.size() != 2) throw input_error(at + "expected 2 fields, got " + std::to_string(fields.size()));
        int month = 0;
        if (!text::parse_int(fields[0], month) || month < 1 || month > 12) {
            throw input_error(at + "month index '" + std::string(fields[0]) + "' is not in 1..12");
        }
        double value = 0.0;
        if (!text::parse_double(fields[1], value)) {
            throw input_error(at + "value '" + std::string(fields[1]) + "' is not a finite number");
        }
        auto& first_seen = seen_at[static_cast<std::size_t>(month - 1)];
        if (first_seen != 0) {
            throw input_error(at + "duplicate month " + std::to_string(month) + " (first on line " +
                              std::to_string(first_seen) + ")");
        }
        first_seen = line_no + 1;
        values[static_cast<std::size_t>(month - 1)] = value;
        ++rows;
    }
    for (int m = 1; m <= 12; ++m) {
        if (seen_at[static_cast<std::size_t>(m - 1)] == 0) {
            throw input_error(path.string() + ": month " + std::to_string(m) + " is missing (" +
                              std::to_string(rows) + " of 12 rows present)");
        }
    }
    return MonthlyIntegrals(values);
}

/// Slack for time stamps written with limited digits, in hours (about 4 ms).
inline constexpr double time_stamp_tolerance = 1e-6;

/// Reads a `time_h,value` day profile with exactly 24 / dt rows at t = k dt.
inline DayProfile load_profile_csv(const std::filesystem::path& path, Resolution res) {
    const auto lines = read_lines(path);
    std::size_t line_no = 0;
    while (line_no < lines.size() && text::trim(lines[line_no]).empty()) ++line_no;
    if (line_no == lines.size() || text::trim(lines[line_no]) != "time_h,value") {
        throw input_error(detail::where(path, line_no + 1) + "expected header 'time_h,value'");
    }
    std::vector<double> samples;
    double previous_time = -1.0;
    for (++line_no; line_no < lines.size(); ++line_no) {
        const auto line = text::trim(lines[line_no]);
        if (line.empty()) continue;
        const auto at = detail::where(path, line_no + 1);
        const auto fields = text::split(line, ',');
        if (fields.size() != 2) throw input_error(at + "expected 2 fields, got " + std::to_string(fields.size()));
        double time = 0.0;
        double value = 0.0;
        if (!text::parse_double(fields[0], time)) throw input_error(at + "time '" + std::string(fields[0]) + "' is not a number");
        if (!text::parse_double(fields[1], value)) throw input_error(at + "value '" + std::string(fields[1]) + "' is not a finite number");
        if (time <= previous_time) throw input_error(at + "time column is not strictly increasing");
        const double expected_time = res.time_of(samples.size());
        if (std::abs(time - expected_time) > time_stamp_tolerance) {
            throw input_error(at + "time " + text::format_time(time) + " h, expected " + text::format_time(expected_time) +
                              " h for dt = " + text::format_time(res.dt()) + " h");
        }
        if (value < 0.0) throw input_error(at + "negative profile value");
        previous_time = time;
        samples.push_back(value);
    }
    if (samples.size() != static_cast<std::size_t>(res.steps_per_day())) {
        throw input_error(path.string() + ": " + std::to_string(samples.size()) + " rows, expected " +
                          std::to_string(res.steps_per_day()) + " for dt = " + text::format_time(res.dt()) + " h");
    }
    bool any_positive = false;
    for (double v : samples) any_positive = any_positive || v > 0.0;
    if (!any_positive) throw input_error(path.string() + ": profile is all zeros");
    return DayProfile(res, std::move(samples));
}

/// Writes `content` to `path`, replacing it. Failures are I/O errors.
inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw io_error("write failure on " + path.string());
}

inline std::string format_series_csv(const YearSeries& series) {
    std::string out = "t_hours,value\n";
    out.reserve(out.size() + series.size() * 28);
    for (std::size_t i = 0; i < series.size(); ++i) {
        out += text::format_time(series.time_of(i));
        out += ',';
        out += text::format_value(series.values[i]);
        out += '\n';
    }
    return out;
}

inline void write_series_csv(const YearSeries& series, const std::filesystem::path& path) {
    write_text_file(path, format_series_csv(series));
}

/// Reads a `t_hours,value` file written by write_series_csv. The grid step is
/// taken from the time column, which must start at 0 and be uniform.
inline YearSeries read_series_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || text::trim(lines[0]) != "t_hours,value") {
        throw input_error(detail::where(path, 1) + "expected header 't_hours,value'");
    }
    std::vector<double> times;
    std::vector<double> values;
    for (std::size_t line_no = 1; line_no < lines.size(); ++line_no) {
        const auto line = text::trim(lines[line_no]);
        if (line.empty()) continue;
        const auto at = detail::where(path, line_no + 1);
        const auto fields = text::split(line, ',');
        double t = 0.0;
        double v = 0.0;
        if (fields.size() != 2 || !text::parse_double(fields[0], t) || !text::parse_double(fields[1], v)) {
            throw input_error(at + "malformed row");
        }
        times.push_back(t);
        values.push_back(v);
    }
    if (times.size() < 2 || times[0] != 0.0) throw input_error(path.string() + ": series must start at t = 0 with at least 2 rows");
    const Resolution res = [&] {
        try {
            return Resolution::from_hours(times[1] - times[0]);
        } catch (const Error&) {
            throw input_error(path.string() + ": time step " + text::format_time(times[1]) + " h does not divide a day");
        }
    }();
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (std::abs(times[i] - res.time_of(i)) > 1e-6) {
            throw input_error(detail::where(path, i + 2) + "time stamps are not on a uniform grid");
        }
    }
    return YearSeries(res, std::move(values));
}

/// Named columns sharing one time axis.
struct PlotColumns {
    Resolution resolution{24};
    std::span<const double> load;    ///< R
    std::span<const double> y_rate;  ///< interpolant rate at each grid time
    std::span<const double> raw;     ///< w
    std::span<const double> alpha;
};

/// Rows [first, last) of the plot table: `t_hours,R,y_rate,w,alpha`.
inline std::string format_plot_data(const PlotColumns& cols, std::size_t first, std::size_t last) {
    std::string out = "t_hours,R,y_rate,w,alpha\n";
    for (std::size_t i = first; i < last; ++i) {
        out += text::format_time(cols.resolution.time_of(i));
        for (double v : {cols.load[i], cols.y_rate[i], cols.raw[i], cols.alpha[i]}) {
            out += ',';
            out += text::format_value(v);
        }
        out += '\n';
    }
    return out;
}

inline void write_plot_data(const PlotColumns& cols, const std::filesystem::path& path) {
    write_text_file(path, format_plot_data(cols, 0, cols.load.size()));
}

/// Sample range [first, last) of the 1-based week `week` (hours [168 (week-1), 168 week)).
inline std::pair<std::size_t, std::size_t> week_rows(const YearSeries& series, int week) {
    const auto per_week = static_cast<std::size_t>(series.resolution.steps_per_day()) * 7;
    if (week < 1 || static_cast<std::size_t>(week) * per_week > series.size()) {
        throw config_error("week " + std::to_string(week) + " is not a complete week of the year");
    }
    const std::size_t first = static_cast<std::size_t>(week - 1) * per_week;
    return {first, first + per_week};
}

}  // namespace loadsynth
