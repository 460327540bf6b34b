#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "efacies/error.hpp"

namespace efacies {

struct CrossplotSpec {
    std::string x_mnemonic;
    std::string y_mnemonic;
    std::size_t grid = 128;
    /// Explicit (hx, hy); Scott's rule when unset.
    std::optional<std::pair<double, double>> bandwidth;
    /// Probability mass enclosed by the drawn envelope.
    double envelope_mass = 0.75;

    void validate() const {
        if (x_mnemonic.empty() || y_mnemonic.empty() || x_mnemonic == y_mnemonic) {
            throw ConfigError("crossplot needs two distinct mnemonics");
        }
        if (grid < 16) throw ConfigError("crossplot grid must be >= 16");
        if (bandwidth && !(bandwidth->first > 0 && bandwidth->second > 0)) {
            throw ConfigError("crossplot bandwidths must be > 0");
        }
        if (!(envelope_mass > 0 && envelope_mass < 1)) throw ConfigError("envelope mass must lie in (0, 1)");
    }
};

/// Density sampled on a regular nx x ny lattice; `at(ix, iy)` is stored row-major by iy.
struct KdeGrid {
    std::size_t nx = 0;
    std::size_t ny = 0;
    double x0 = 0, dx = 0;
    double y0 = 0, dy = 0;
    double hx = 0, hy = 0;
    std::vector<double> density;

    double x(std::size_t ix) const { return x0 + dx * static_cast<double>(ix); }
    double y(std::size_t iy) const { return y0 + dy * static_cast<double>(iy); }
    double at(std::size_t ix, std::size_t iy) const { return density[iy * nx + ix]; }

    /// Trapezoid-rule integral over the lattice.
    double mass() const {
        double s = 0;
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const double wy = (iy == 0 || iy + 1 == ny) ? 0.5 : 1.0;
            for (std::size_t ix = 0; ix < nx; ++ix) {
                const double wx = (ix == 0 || ix + 1 == nx) ? 0.5 : 1.0;
                s += wx * wy * at(ix, iy);
            }
        }
        return s * dx * dy;
    }

    /// Density level whose superlevel set holds `fraction` of the lattice mass.
    double level_for_mass(double fraction) const {
        std::vector<double> sorted = density;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        double total = 0;
        for (double v : sorted) total += v;
        double acc = 0;
        for (double v : sorted) {
            acc += v;
            if (acc >= fraction * total) return v;
        }
        return sorted.empty() ? 0.0 : sorted.back();
    }

    /// Strict local maxima over the 8-neighbourhood, ignoring cells below
    /// `rel_floor` times the global maximum.
    std::vector<std::pair<std::size_t, std::size_t>> local_maxima(double rel_floor = 1e-3) const {
        std::vector<std::pair<std::size_t, std::size_t>> peaks;
        const double peak = *std::max_element(density.begin(), density.end());
        for (std::size_t iy = 0; iy < ny; ++iy) {
            for (std::size_t ix = 0; ix < nx; ++ix) {
                const double v = at(ix, iy);
                if (v < rel_floor * peak) continue;
                bool is_max = true;
                for (int oy = -1; oy <= 1 && is_max; ++oy) {
                    for (int ox = -1; ox <= 1; ++ox) {
                        if (!ox && !oy) continue;
                        const auto jx = static_cast<std::ptrdiff_t>(ix) + ox;
                        const auto jy = static_cast<std::ptrdiff_t>(iy) + oy;
                        if (jx < 0 || jy < 0 || jx >= static_cast<std::ptrdiff_t>(nx) ||
                            jy >= static_cast<std::ptrdiff_t>(ny)) {
                            continue;
                        }
                        if (at(static_cast<std::size_t>(jx), static_cast<std::size_t>(jy)) >= v) {
                            is_max = false;
                            break;
                        }
                    }
                }
                if (is_max) peaks.emplace_back(ix, iy);
            }
        }
        return peaks;
    }
};

namespace detail {

inline double sample_std(std::span<const double> v) {
    double mean = 0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace detail

/// Scott's rule for a 2-D product kernel: sigma * n^(-1/6).
inline double scott_bandwidth(std::span<const double> v) {
    return detail::sample_std(v) * std::pow(static_cast<double>(v.size()), -1.0 / 6.0);
}

/// Gaussian product-kernel density on a grid covering the data range padded
/// by three bandwidths per side.
inline KdeGrid kde2d(std::span<const double> xs, std::span<const double> ys, const CrossplotSpec& spec) {
    if (xs.size() != ys.size()) throw NumericError("kde2d: x and y differ in length");
    if (xs.size() < 2) throw NumericError("kde2d needs at least 2 points");
    if (spec.grid < 16) throw ConfigError("crossplot grid must be >= 16");
    const std::size_t n = xs.size();

    KdeGrid g;
    if (spec.bandwidth) {
        g.hx = spec.bandwidth->first;
        g.hy = spec.bandwidth->second;
    } else {
        g.hx = scott_bandwidth(xs);
        g.hy = scott_bandwidth(ys);
    }
    if (!(g.hx > 0) || !(g.hy > 0) || !std::isfinite(g.hx) || !std::isfinite(g.hy)) {
        throw NumericError("kde2d: degenerate spread on " + std::string(g.hx > 0 ? "y" : "x") + " axis");
    }

    const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
    const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
    g.nx = g.ny = spec.grid;
    g.x0 = *xmin - 3 * g.hx;
    g.y0 = *ymin - 3 * g.hy;
    g.dx = (*xmax - *xmin + 6 * g.hx) / static_cast<double>(g.nx - 1);
    g.dy = (*ymax - *ymin + 6 * g.hy) / static_cast<double>(g.ny - 1);

    // Separable kernel: density = Kx * Ky^T / n.
    auto kernel_rows = [n](std::size_t m, double origin, double step, double h, std::span<const double> v) {
        std::vector<double> k(m * n);
        const double norm = 1.0 / (h * std::sqrt(2.0 * std::numbers::pi));
        for (std::size_t a = 0; a < m; ++a) {
            const double c = origin + step * static_cast<double>(a);
            for (std::size_t i = 0; i < n; ++i) {
                const double u = (c - v[i]) / h;
                k[a * n + i] = norm * std::exp(-0.5 * u * u);
            }
        }
        return k;
    };
    const auto kx = kernel_rows(g.nx, g.x0, g.dx, g.hx, xs);
    const auto ky = kernel_rows(g.ny, g.y0, g.dy, g.hy, ys);
    g.density.assign(g.nx * g.ny, 0.0);
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
        const double* kyr = &ky[iy * n];
        for (std::size_t ix = 0; ix < g.nx; ++ix) {
            const double* kxr = &kx[ix * n];
            double s = 0;
            for (std::size_t i = 0; i < n; ++i) s += kxr[i] * kyr[i];
            g.density[iy * g.nx + ix] = s / static_cast<double>(n);
        }
    }
    return g;
}

struct Segment {
    double x1, y1, x2, y2;
};

/// Marching-squares iso-line of `g` at `level`, in data coordinates.
inline std::vector<Segment> contour_segments(const KdeGrid& g, double level) {
    std::vector<Segment> out;
    auto lerp = [level](double a, double b) { return a == b ? 0.5 : (level - a) / (b - a); };
    for (std::size_t iy = 0; iy + 1 < g.ny; ++iy) {
        for (std::size_t ix = 0; ix + 1 < g.nx; ++ix) {
            const double v00 = g.at(ix, iy), v10 = g.at(ix + 1, iy);
            const double v11 = g.at(ix + 1, iy + 1), v01 = g.at(ix, iy + 1);
            const int code = (v00 >= level) | ((v10 >= level) << 1) | ((v11 >= level) << 2) | ((v01 >= level) << 3);
            if (code == 0 || code == 15) continue;
            const double x0 = g.x(ix), x1 = g.x(ix + 1), y0 = g.y(iy), y1 = g.y(iy + 1);
            // Edge crossing points: bottom, right, top, left.
            const std::array<std::pair<double, double>, 4> e{{
                {x0 + (x1 - x0) * lerp(v00, v10), y0},
                {x1, y0 + (y1 - y0) * lerp(v10, v11)},
                {x0 + (x1 - x0) * lerp(v01, v11), y1},
                {x0, y0 + (y1 - y0) * lerp(v00, v01)},
            }};
            auto seg = [&](int a, int b) { out.push_back({e[a].first, e[a].second, e[b].first, e[b].second}); };
            const bool centre_high = (v00 + v10 + v11 + v01) / 4 >= level;
            switch (code) {
                case 1: case 14: seg(3, 0); break;
                case 2: case 13: seg(0, 1); break;
                case 3: case 12: seg(3, 1); break;
                case 4: case 11: seg(1, 2); break;
                case 6: case 9: seg(0, 2); break;
                case 7: case 8: seg(3, 2); break;
                case 5:
                    if (centre_high) { seg(3, 2); seg(0, 1); } else { seg(3, 0); seg(1, 2); }
                    break;
                case 10:
                    if (centre_high) { seg(3, 0); seg(1, 2); } else { seg(3, 2); seg(0, 1); }
                    break;
                default: break;
            }
        }
    }
    return out;
}

}  // namespace efacies
