// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
// Usage: acceptance <path-to-loadsynth-cli>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "loadsynth/loadsynth.hpp"
#include "oracles.hpp"

using namespace loadsynth;
namespace fs = std::filesystem;

namespace {

const fs::path example_dir = LOADSYNTH_EXAMPLE_DIR;

// alpha smoothness of the shipped example, recorded from the first run.
constexpr double pinned_max_step_ratio = 8.024973773e-04;
constexpr double pinned_max_abs_step = 2.312588726e-02;
constexpr double pin_tolerance = 1e-6;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string fmt(const char* f, double v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Example {
    RunConfig cfg;
    MonthlyIntegrals months;
    ProfileLibrary lib{Resolution(96)};
};

Example load_example() {
    Example ex;
    ex.cfg = load_config(example_dir / "example.conf");
    ex.months = load_monthly_csv(ex.cfg.months);
    ex.lib = load_profile_library(ex.cfg);
    return ex;
}

// 1. Exact interpolation against a Simpson oracle.
Outcome exact_interpolation() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20231);
    double worst_closed = 0.0;
    double worst_oracle = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const MonthlyIntegrals m(oracle::random_months(rng));
        const auto h = fit_harmonics(m);
        const auto residuals = month_integral_residuals(h, m);
        for (int t = 1; t <= 12; ++t) {
            const double scale = std::max(1.0, std::abs(m[t]));
            worst_closed = std::max(worst_closed, std::abs(residuals[static_cast<std::size_t>(t - 1)]) / scale);
            const double q = oracle::simpson([&](double tau) { return eval_harmonics(h, tau); }, t - 0.5, t + 0.5, 10'000);
            worst_oracle = std::max(worst_oracle, std::abs(q - m[t]) / scale);
        }
    }
    const double elapsed = seconds_since(start);
    o.require(worst_closed < 1e-9, "closed-form residual " + fmt("%.3g", worst_closed));
    o.require(worst_oracle < 1e-9, "Simpson residual " + fmt("%.3g", worst_oracle));
    o.require(elapsed < 5.0, "runtime " + fmt("%.2f s", elapsed));
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("max residual ") + fmt("%.2e", worst_closed) +
                ", oracle " + fmt("%.2e", worst_oracle) + ", " + fmt("%.2f s", elapsed);
    return o;
}

// 2. Constant months give a constant curve.
Outcome constant_case() {
    Outcome o;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> tau_dist(-50.0, 50.0);
    double worst_rel = 0.0;
    for (double c : {1.0, 42.0, 1e5}) {
        std::array<double, 12> m{};
        m.fill(c);
        const auto h = fit_harmonics(MonthlyIntegrals(m));
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) worst = std::max(worst, std::abs(eval_harmonics(h, tau_dist(rng)) - c));
        o.require(worst < 1e-12 * c, "c=" + fmt("%g", c) + " |y-c| " + fmt("%.3g", worst));
        worst_rel = std::max(worst_rel, worst / c);
        for (std::size_t j = 0; j < harmonic_count; ++j) {
            o.require(std::abs(h.a[j]) < 1e-12 * c && std::abs(h.b[j]) < 1e-12 * c, "non-constant coefficient");
        }
    }
    if (o.pass) o.detail = "max |y-c|/c = " + fmt("%.2e", worst_rel) + " over 3000 points";
    return o;
}

// 3. Morph endpoints and midpoints.
Outcome morph_endpoints(const Example& ex) {
    Outcome o;
    const auto ctx = make_year_context(ex.cfg.year);
    const auto cal = make_season_calendar(ctx, ex.cfg.season_starts);
    const auto w = build_raw_year(ex.lib, cal, ctx);
    const auto per_day = static_cast<std::size_t>(ex.lib.resolution().steps_per_day());
    double worst_mid = 0.0;
    for (int s = 1; s <= 4; ++s) {
        const Season season = season_from_index(s);
        const int day = static_cast<int>(cal.midpoint(season) / 24.0);
        const auto& pure = ex.lib.at(weekday_of(ctx, 24.0 * day), season).samples();
        const auto first = w.values.begin() + static_cast<std::ptrdiff_t>(per_day * static_cast<std::size_t>(day));
        o.require(std::equal(pure.begin(), pure.end(), first), "anchor day of season " + std::to_string(s) + " not pure");

        const Season upper = next(season);
        const double span = detail::cyclic_offset(cal.midpoint(upper), cal.midpoint(season), ctx.hours_in_year);
        double mid = cal.midpoint(season) + 0.5 * span;
        if (mid >= ctx.hours_in_year) mid -= ctx.hours_in_year;
        const auto pos = season_position(cal, ctx, mid);
        o.require(pos.lower == season && pos.fraction == 0.5, "midpoint fraction for season " + std::to_string(s));
        for (int d = 1; d <= 7; ++d) {
            const Weekday wd = weekday_from_index(d);
            const auto blended = morph_day(ex.lib, wd, pos.lower, pos.upper, pos.fraction);
            const auto& u = ex.lib.at(wd, season);
            const auto& v = ex.lib.at(wd, upper);
            for (std::size_t k = 0; k < blended.size(); ++k) {
                worst_mid = std::max(worst_mid, std::abs(blended[k] - 0.5 * (u[k] + v[k])));
            }
        }
    }
    o.require(worst_mid <= 1e-15, "midpoint blend differs from mean by " + fmt("%.3g", worst_mid));
    if (o.pass) o.detail = "4 anchor days bit-exact, midpoint blends within " + fmt("%.1e", worst_mid) + " of the mean";
    return o;
}

// 4. Integral preservation on the example dataset.
Outcome integral_preservation(const Example& ex) {
    Outcome o;
    const fs::path tmp = fs::temp_directory_path() / "loadsynth_acceptance_series.csv";
    RunConfig cfg = ex.cfg;
    cfg.out = tmp;
    cfg.report.clear();
    cfg.plot_data.clear();
    const auto start = std::chrono::steady_clock::now();
    const PipelineResult r = run_pipeline(cfg);
    const double elapsed = seconds_since(start);
    fs::remove(tmp);
    double worst = 0.0;
    for (const auto& c : r.month_checks) worst = std::max(worst, c.relative_error);
    o.require(r.load.load.size() == 35040, "grid size " + std::to_string(r.load.load.size()));
    o.require(worst < 0.02, "worst month " + fmt("%.4g", worst));
    o.require(r.year_check.relative_error < 0.005, "year " + fmt("%.4g", r.year_check.relative_error));
    o.require(elapsed < 1.0, "runtime " + fmt("%.3f s", elapsed));
    if (o.pass) {
        o.detail = "worst month " + fmt("%.4f", worst) + ", year " + fmt("%.2e", r.year_check.relative_error) + ", " +
                   fmt("%.3f s", elapsed);
    }
    return o;
}

// 5. Homogeneity in the day-profile scale.
Outcome homogeneity(const Example& ex) {
    Outcome o;
    const auto base = synthesize_year(ex.cfg, ex.months, ex.lib);
    const auto scaled = synthesize_year(ex.cfg, ex.months, ex.lib.scaled(7.3));
    double worst = 0.0;
    for (std::size_t i = 0; i < base.load.load.size(); ++i) {
        const double a = base.load.load.values[i];
        worst = std::max(worst, std::abs(scaled.load.load.values[i] - a) / std::abs(a));
    }
    o.require(worst <= 1e-12, "max relative change " + fmt("%.3g", worst));
    if (o.pass) o.detail = "max relative change " + fmt("%.2e", worst);
    return o;
}

double pearson(const double* x, const double* y, std::size_t n) {
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
        syy += (y[k] - my) * (y[k] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

// 6. Intraday shape preservation.
Outcome shape_preservation(const Example& ex) {
    Outcome o;
    const auto r = synthesize_year(ex.cfg, ex.months, ex.lib);
    const auto per_day = static_cast<std::size_t>(r.raw.resolution.steps_per_day());
    const int days = r.context.days();
    double worst = 1.0;
    int same_peak = 0;
    for (int day = 0; day < days; ++day) {
        const double* w = r.raw.values.data() + per_day * static_cast<std::size_t>(day);
        const double* R = r.load.load.values.data() + per_day * static_cast<std::size_t>(day);
        worst = std::min(worst, pearson(R, w, per_day));
        if (std::max_element(w, w + per_day) - w == std::max_element(R, R + per_day) - R) ++same_peak;
    }
    o.require(worst > 0.99, "min daily correlation " + fmt("%.6f", worst));
    o.require(same_peak >= 360, "same peak time on " + std::to_string(same_peak) + " days");
    if (o.pass) o.detail = "min correlation " + fmt("%.6f", worst) + ", peak time kept on " + std::to_string(same_peak) + "/365 days";
    return o;
}

// 7. Smoothness of alpha, regression-pinned.
Outcome alpha_smoothness(const Example& ex) {
    Outcome o;
    const auto r = synthesize_year(ex.cfg, ex.months, ex.lib);
    o.require(r.alpha.max_step_ratio < 0.05, "max step ratio " + fmt("%.4g", r.alpha.max_step_ratio));
    o.require(std::abs(r.alpha.max_step_ratio / pinned_max_step_ratio - 1.0) < pin_tolerance,
              "step ratio " + fmt("%.10g", r.alpha.max_step_ratio) + " moved from pinned value");
    o.require(std::abs(r.alpha.max_abs_step / pinned_max_abs_step - 1.0) < pin_tolerance,
              "abs step " + fmt("%.10g", r.alpha.max_abs_step) + " moved from pinned value");
    if (o.pass) o.detail = "max |alpha_{i+1}/alpha_i - 1| = " + fmt("%.4e", r.alpha.max_step_ratio);
    return o;
}

// 8. Periodicity and wrap-around windows.
Outcome periodicity_and_wrap(const Example& ex) {
    Outcome o;
    std::mt19937_64 rng(88);
    std::uniform_real_distribution<double> tau_dist(-24.0, 36.0);
    const auto h = fit_harmonics(ex.months);
    double y_max = 0.0;
    for (double tau = 0.5; tau < 12.5; tau += 0.01) y_max = std::max(y_max, std::abs(eval_harmonics(h, tau)));
    double worst_period = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double tau = tau_dist(rng);
        worst_period = std::max(worst_period, std::abs(eval_harmonics(h, tau) - eval_harmonics(h, tau + 12.0)) / y_max);
    }
    o.require(worst_period < 1e-10, "periodicity " + fmt("%.3g", worst_period));

    const auto ctx = make_year_context(ex.cfg.year);
    const double H = ctx.hours_in_year;
    const auto quad = [&](double a, double b) {
        double total = 0.0;
        for (double lo = a; lo < b;) {
            double hi = b;
            for (int edge : ctx.month_boundaries) {
                if (edge > lo && edge < hi) hi = edge;
            }
            // Own affine map for the segment; y_rate at a month's right edge would take the next month's jacobian.
            std::size_t m = 1;
            while (ctx.month_boundaries[m] <= lo) ++m;
            const double start = ctx.month_boundaries[m - 1];
            const double len = ctx.month_boundaries[m] - start;
            const auto rate = [&](double t) { return eval_harmonics(h, static_cast<double>(m) - 0.5 + (t - start) / len) / len; };
            total += oracle::simpson(rate, lo, hi, std::max(2L, static_cast<long>((hi - lo) * 40)));
            lo = hi;
        }
        return total;
    };
    double worst_wrap = 0.0;
    for (double t : {0.0, 12.0, 100.25, H - 0.25, H - 50.0}) {
        const double W = ex.cfg.window;
        double expected = 0.0;
        if (t - W < 0.0) expected = quad(H + (t - W), H) + quad(0.0, t + W);
        else expected = quad(t - W, H) + quad(0.0, t + W - H);
        worst_wrap = std::max(worst_wrap, std::abs(window_integral_y(h, ctx, t, W) - expected) / std::abs(expected));
    }
    o.require(worst_wrap < 1e-8, "wrap window " + fmt("%.3g", worst_wrap));
    if (o.pass) o.detail = "periodicity " + fmt("%.2e", worst_period) + ", wrap windows " + fmt("%.2e", worst_wrap);
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 9. Two CLI runs give byte-identical outputs.
Outcome determinism(const std::string& cli) {
    Outcome o;
    if (cli.empty()) {
        o.require(false, "no CLI path given");
        return o;
    }
    const fs::path dir = fs::temp_directory_path() / "loadsynth_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::array<std::array<std::string, 3>, 2> outputs;
    for (std::size_t run = 0; run < 2; ++run) {
        const std::string cmd = "\"" + cli + "\" synth --config \"" + (example_dir / "example.conf").string() + "\" --out \"" +
                                (dir / "r.csv").string() + "\" --report \"" + (dir / "r.txt").string() + "\" --plot-data \"" +
                                (dir / "p.csv").string() + "\" > /dev/null";
        const int status = std::system(cmd.c_str());
        o.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "CLI run " + std::to_string(run + 1) + " failed");
        outputs[run] = {slurp(dir / "r.csv"), slurp(dir / "r.txt"), slurp(dir / "p.csv")};
        fs::remove(dir / "r.csv");
        fs::remove(dir / "r.txt");
        fs::remove(dir / "p.csv");
    }
    fs::remove_all(dir);
    o.require(!outputs[0][0].empty(), "empty series output");
    o.require(outputs[0][0] == outputs[1][0], "series differs");
    o.require(outputs[0][1] == outputs[1][1], "report differs");
    o.require(outputs[0][2] == outputs[1][2], "plot data differs");
    if (o.pass) o.detail = "series, report and plot data identical";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    struct Criterion {
        const char* name;
        std::function<Outcome()> check;
    };

    Example ex;
    try {
        ex = load_example();
    } catch (const std::exception& e) {
        std::printf("cannot load example dataset: %s\n", e.what());
        return 1;
    }

    const std::vector<Criterion> criteria{
        {"1 exact monthly interpolation (200 random inputs, Simpson oracle)", exact_interpolation},
        {"2 constant months give a constant interpolant", constant_case},
        {"3 morph endpoints exact, midpoints are means", [&] { return morph_endpoints(ex); }},
        {"4 monthly <2% and yearly <0.5% integral preservation", [&] { return integral_preservation(ex); }},
        {"5 profile scale lambda=7.3 leaves R unchanged", [&] { return homogeneity(ex); }},
        {"6 intraday shape preserved", [&] { return shape_preservation(ex); }},
        {"7 alpha smoothness", [&] { return alpha_smoothness(ex); }},
        {"8 periodicity and cyclic windows", [&] { return periodicity_and_wrap(ex); }},
        {"9 deterministic CLI output", [&] { return determinism(cli); }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
        if (!o.pass) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
