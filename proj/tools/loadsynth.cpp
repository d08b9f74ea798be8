// loadsynth: synthesize a one-year load series from monthly totals and type days.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "loadsynth/loadsynth.hpp"

namespace fs = std::filesystem;

namespace {

struct SynthOptions {
    std::string config;
    std::optional<std::string> months;
    std::optional<std::string> profiles;
    std::optional<std::string> out;
    std::optional<std::string> report;
    std::optional<std::string> plot_data;
    bool no_morph = false;
    std::optional<int> year;
    std::optional<std::string> dt;
    std::optional<std::string> window;
    std::optional<int> zoom_week;
};

struct VerifyOptions {
    std::string series;
    std::string months;
    std::string config;
};

double parse_hours_flag(const std::string& flag, const std::string& value) {
    const auto hours = loadsynth::config_detail::parse_hours(value);
    if (!hours) throw loadsynth::config_error(flag + " '" + value + "' is not a number");
    return *hours;
}

int run_synth(const SynthOptions& opt) {
    loadsynth::RunConfig cfg = loadsynth::load_config(opt.config);
    if (opt.months) cfg.months = *opt.months;
    if (opt.profiles) cfg.profiles_dir = *opt.profiles;
    if (opt.out) cfg.out = *opt.out;
    if (opt.report) cfg.report = *opt.report;
    if (opt.plot_data) cfg.plot_data = *opt.plot_data;
    if (opt.no_morph) cfg.morphing = false;
    if (opt.year) cfg.year = *opt.year;
    if (opt.dt) cfg.dt = parse_hours_flag("--dt", *opt.dt);
    if (opt.window) cfg.window = parse_hours_flag("--window", *opt.window);
    if (opt.zoom_week && cfg.plot_data.empty()) throw loadsynth::config_error("--zoom-week needs --plot-data");

    const loadsynth::PipelineResult result = loadsynth::run_pipeline(cfg);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

    if (opt.zoom_week) {
        const auto [first, last] = loadsynth::week_rows(result.load.load, *opt.zoom_week);
        const auto y = result.sampled_y_rate();
        fs::path zoom = cfg.plot_data;
        zoom.replace_filename(cfg.plot_data.stem().string() + ".week" + std::to_string(*opt.zoom_week) +
                              cfg.plot_data.extension().string());
        loadsynth::write_text_file(zoom, loadsynth::format_plot_data(result.plot_columns(y), first, last));
    }

    double worst = 0.0;
    for (const auto& c : result.month_checks) worst = std::max(worst, c.relative_error);
    std::printf("wrote %zu samples to %s; worst month error %.3g, year error %.3g\n", result.load.load.size(),
                cfg.out.string().c_str(), worst, result.year_check.relative_error);
    return 0;
}

int run_verify(const VerifyOptions& opt) {
    const loadsynth::RunConfig cfg = loadsynth::load_config(opt.config);
    const auto ctx = loadsynth::make_year_context(cfg.year);
    const auto months = loadsynth::load_monthly_csv(opt.months);
    const auto harmonics = loadsynth::fit_harmonics(months);
    const loadsynth::SynthesizedSeries series{loadsynth::read_series_csv(opt.series)};
    series.load.require_year(ctx);
    const auto month_checks = loadsynth::verify_intervals(series, harmonics, ctx, loadsynth::calendar_months(ctx));
    const auto year_check = loadsynth::verify_intervals(series, harmonics, ctx, {loadsynth::whole_year(ctx)}).front();
    std::cout << loadsynth::format_checks(month_checks, year_check, cfg.units);

    bool ok = year_check.relative_error < loadsynth::yearly_tolerance;
    for (const auto& c : month_checks) ok = ok && c.relative_error < loadsynth::monthly_tolerance;
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synthesize a fine-resolution yearly load profile from monthly totals and type days"};
    app.require_subcommand(1);

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Run the synthesis pipeline");
    synth_cmd->add_option("--config", synth.config, "Config file")->required();
    synth_cmd->add_option("--months", synth.months, "Monthly integrals CSV");
    synth_cmd->add_option("--profiles", synth.profiles, "Directory holding the day-profile CSVs");
    synth_cmd->add_option("--out", synth.out, "Output series CSV");
    synth_cmd->add_option("--report", synth.report, "Verification report");
    synth_cmd->add_option("--plot-data", synth.plot_data, "Plot table (t, R, y_rate, w, alpha)");
    synth_cmd->add_flag("--no-morph", synth.no_morph, "Use each season's profiles without blending");
    synth_cmd->add_option("--year", synth.year, "Calendar year");
    synth_cmd->add_option("--dt", synth.dt, "Grid step in hours (1, 1/2, 1/4, 1/6, 1/12)");
    synth_cmd->add_option("--window", synth.window, "Scaling half-window in hours");
    synth_cmd->add_option("--zoom-week", synth.zoom_week, "Also write the plot rows of this week (1-based)");

    VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand("verify", "Check monthly and yearly integrals of an existing series");
    verify_cmd->add_option("--series", verify.series, "Series CSV")->required();
    verify_cmd->add_option("--months", verify.months, "Monthly integrals CSV")->required();
    verify_cmd->add_option("--config", verify.config, "Config file (year, units)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << "error[" << loadsynth::error_code(loadsynth::ErrorKind::config) << "]: " << e.what() << '\n';
        return static_cast<int>(loadsynth::ErrorKind::config);
    }

    try {
        if (*synth_cmd) return run_synth(synth);
        return run_verify(verify);
    } catch (const loadsynth::Error& e) {
        std::cerr << "error[" << loadsynth::error_code(e.kind()) << "]: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error[E_INTERNAL]: " << e.what() << '\n';
        return 1;
    }
}
