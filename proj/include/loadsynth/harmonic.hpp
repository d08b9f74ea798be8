#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "loadsynth/error.hpp"

namespace loadsynth {

inline constexpr int months_per_year = 12;
inline constexpr int harmonic_count = 6;

/// The twelve calendar-month energy totals M_1..M_12.
class MonthlyIntegrals {
public:
    MonthlyIntegrals() = default;

    explicit MonthlyIntegrals(const std::array<double, 12>& values) : values_(values) {
        for (int m = 1; m <= months_per_year; ++m) {
            if (!std::isfinite(values_[static_cast<std::size_t>(m - 1)])) {
                throw input_error("monthly integral for month " + std::to_string(m) + " is not finite");
            }
        }
    }

    /// Month is 1-based.
    double operator[](int month) const { return values_.at(static_cast<std::size_t>(month - 1)); }

    const std::array<double, 12>& values() const { return values_; }

    double total() const {
        double sum = 0.0;
        for (double v : values_) sum += v;
        return sum;
    }

    /// Physical loads are non-negative; a negative month is allowed but suspicious.
    bool has_negative() const {
        for (double v : values_) {
            if (v < 0.0) return true;
        }
        return false;
    }

private:
    std::array<double, 12> values_{};
};

/// Truncated 12-periodic Fourier series on the month axis:
///   y(tau) = a0 + sum_{j=1..6} a_j cos(2 pi j tau / 12) + b_j sin(2 pi j tau / 12).
/// Index j of the harmonic lives at a[j - 1], b[j - 1]; b[5] (the sixth sine) is always zero.
struct HarmonicSeries {
    double a0 = 0.0;
    std::array<double, harmonic_count> a{};
    std::array<double, harmonic_count> b{};
};

namespace detail {

// cos and sin of 2 pi k / 12 with the exactly representable values kept exact.
struct TwelfthRoots {
    std::array<double, 12> cos{};
    std::array<double, 12> sin{};

    TwelfthRoots() {
        const double half_sqrt3 = std::numbers::sqrt3 / 2.0;
        cos = {1.0, half_sqrt3, 0.5, 0.0, -0.5, -half_sqrt3, -1.0, -half_sqrt3, -0.5, 0.0, 0.5, half_sqrt3};
        for (std::size_t k = 0; k < 12; ++k) sin[k] = cos[(k + 9) % 12];
    }
};

inline const TwelfthRoots& twelfth_roots() {
    static const TwelfthRoots roots;
    return roots;
}

// tau reduced into [0, 12).
inline double reduce_month_axis(double tau) {
    double r = std::fmod(tau, 12.0);
    if (r < 0.0) r += 12.0;
    return r;
}

// cos(j theta), sin(j theta) for j = 1..6 where theta = 2 pi tau / 12.
inline void harmonic_basis(double tau, std::array<double, harmonic_count>& c, std::array<double, harmonic_count>& s) {
    const double theta = 2.0 * std::numbers::pi * reduce_month_axis(tau) / 12.0;
    c[0] = std::cos(theta);
    s[0] = std::sin(theta);
    for (std::size_t j = 1; j < harmonic_count; ++j) {
        c[j] = c[j - 1] * c[0] - s[j - 1] * s[0];
        s[j] = s[j - 1] * c[0] + c[j - 1] * s[0];
    }
}

}  // namespace detail

/// Coefficients whose integral over every unit month interval
/// [T - 1/2, T + 1/2] reproduces M_T exactly.
inline HarmonicSeries fit_harmonics(const MonthlyIntegrals& months) {
    const auto& roots = detail::twelfth_roots();
    HarmonicSeries h;
    for (int month = 1; month <= months_per_year; ++month) h.a0 += months[month] / 12.0;

    for (int j = 1; j <= harmonic_count; ++j) {
        const double x = std::numbers::pi * j / 12.0;
        // Inverse of the mean of cos/sin(2 pi j tau / 12) over a unit interval.
        const double gain = x / std::sin(x);
        double cos_sum = 0.0;
        double sin_sum = 0.0;
        for (int month = 1; month <= months_per_year; ++month) {
            const auto k = static_cast<std::size_t>((j * month) % 12);
            cos_sum += months[month] * roots.cos[k];
            sin_sum += months[month] * roots.sin[k];
        }
        const auto idx = static_cast<std::size_t>(j - 1);
        if (j < harmonic_count) {
            h.a[idx] = gain * cos_sum / 6.0;
            h.b[idx] = gain * sin_sum / 6.0;
        } else {
            // Nyquist term: cos(pi T) alternates sign, sin(pi T) vanishes.
            h.a[idx] = gain * cos_sum / 12.0;
            h.b[idx] = 0.0;
        }
    }
    return h;
}

/// y(tau); any finite tau is accepted (periodic with period 12).
inline double eval_harmonics(const HarmonicSeries& h, double tau) {
    std::array<double, harmonic_count> c{};
    std::array<double, harmonic_count> s{};
    detail::harmonic_basis(tau, c, s);
    double y = h.a0;
    for (std::size_t j = 0; j < harmonic_count; ++j) y += h.a[j] * c[j] + h.b[j] * s[j];
    return y;
}

namespace detail {

// Periodic part of the antiderivative of y (everything except a0 * tau).
inline double periodic_antiderivative(const HarmonicSeries& h, double tau) {
    std::array<double, harmonic_count> c{};
    std::array<double, harmonic_count> s{};
    harmonic_basis(tau, c, s);
    double f = 0.0;
    for (std::size_t j = 0; j < harmonic_count; ++j) {
        const double scale = 12.0 / (2.0 * std::numbers::pi * static_cast<double>(j + 1));
        f += scale * (h.a[j] * s[j] - h.b[j] * c[j]);
    }
    return f;
}

}  // namespace detail

/// Closed-form integral of y over [tau_a, tau_b].
inline double integrate_harmonics(const HarmonicSeries& h, double tau_a, double tau_b) {
    if (!(tau_a <= tau_b)) {
        throw std::invalid_argument("integrate_harmonics: reversed bounds [" + std::to_string(tau_a) + ", " +
                                    std::to_string(tau_b) + "]");
    }
    if (tau_a == tau_b) return 0.0;
    return h.a0 * (tau_b - tau_a) + (detail::periodic_antiderivative(h, tau_b) -
                                     detail::periodic_antiderivative(h, tau_a));
}

/// integral over month T minus M_T, for T = 1..12.
inline std::array<double, 12> month_integral_residuals(const HarmonicSeries& h, const MonthlyIntegrals& months) {
    std::array<double, 12> residuals{};
    for (int month = 1; month <= months_per_year; ++month) {
        residuals[static_cast<std::size_t>(month - 1)] =
            integrate_harmonics(h, month - 0.5, month + 0.5) - months[month];
    }
    return residuals;
}

/// Sub-intervals of [0.5, 12.5] on which y < 0 (the fit can overshoot below
/// zero even for non-negative input). Endpoints are located by bisection.
inline std::vector<std::pair<double, double>> negative_intervals(const HarmonicSeries& h, int samples_per_month = 96) {
    const auto refine = [&h](double lo, double hi) {
        // y(lo) and y(hi) have opposite signs.
        const bool lo_negative = eval_harmonics(h, lo) < 0.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if ((eval_harmonics(h, mid) < 0.0) == lo_negative) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    std::vector<std::pair<double, double>> intervals;
    const int n = samples_per_month * months_per_year;
    const double step = 12.0 / n;
    double prev_tau = 0.5;
    bool prev_negative = eval_harmonics(h, prev_tau) < 0.0;
    double open_at = prev_tau;
    for (int i = 1; i <= n; ++i) {
        const double tau = 0.5 + i * step;
        const bool negative = eval_harmonics(h, tau) < 0.0;
        if (negative != prev_negative) {
            const double crossing = refine(prev_tau, tau);
            if (negative) open_at = crossing; else intervals.emplace_back(open_at, crossing);
        }
        prev_tau = tau;
        prev_negative = negative;
    }
    if (prev_negative) intervals.emplace_back(open_at, 12.5);
    return intervals;
}

}  // namespace loadsynth
