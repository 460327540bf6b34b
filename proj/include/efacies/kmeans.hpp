#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "efacies/error.hpp"
#include "efacies/parallel.hpp"
#include "efacies/qc.hpp"
#include "efacies/random.hpp"

namespace efacies {

/// Row-major n x d point set.
struct PointView {
    std::span<const double> data;
    std::size_t n = 0;
    std::size_t d = 0;

    PointView() = default;
    PointView(std::span<const double> data_, std::size_t n_, std::size_t d_) : data(data_), n(n_), d(d_) {}
    PointView(const FeatureMatrix& fm) : data(fm.values), n(fm.rows()), d(fm.cols()) {}  // NOLINT

    std::span<const double> row(std::size_t i) const { return data.subspan(i * d, d); }
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double t = a[j] - b[j];
        s += t * t;
    }
    return s;
}

enum class KmeansInit { kmeanspp, random_points };

struct KmeansConfig {
    std::size_t k = 4;
    std::size_t n_restarts = 25;
    std::size_t max_iter = 300;
    double tol = 1e-6;  // relative inertia change
    std::uint64_t seed = 42;
    KmeansInit init = KmeansInit::kmeanspp;

    void validate() const {
        if (k < 1) throw ConfigError("kmeans.k must be >= 1");
        if (n_restarts < 1) throw ConfigError("kmeans.n_restarts must be >= 1");
        if (max_iter < 1) throw ConfigError("kmeans.max_iter must be >= 1");
        if (!(tol >= 0)) throw ConfigError("kmeans.tol must be >= 0");
    }
};

struct ClusterModel {
    std::size_t k = 0;
    std::size_t dims = 0;
    std::vector<double> centroids;  // k x dims
    std::vector<int> assignments;
    double inertia = 0;
    std::size_t iterations_run = 0;
    bool converged = false;
    std::uint64_t seed_used = 0;
    std::size_t restart_index = 0;
    /// Inertia after each assign/update pair of the winning restart.
    std::vector<double> inertia_trace;

    std::span<const double> centroid(std::size_t c) const {
        return {centroids.data() + c * dims, dims};
    }

    std::vector<std::size_t> cluster_sizes() const {
        std::vector<std::size_t> sizes(k, 0);
        for (int a : assignments) ++sizes[static_cast<std::size_t>(a)];
        return sizes;
    }
};

/// Sum of squared distances of each point to its assigned centroid.
inline double compute_inertia(PointView pts, std::span<const double> centroids, std::span<const int> labels) {
    double s = 0;
    for (std::size_t i = 0; i < pts.n; ++i) {
        s += squared_distance(pts.row(i), centroids.subspan(static_cast<std::size_t>(labels[i]) * pts.d, pts.d));
    }
    return s;
}

inline std::size_t count_distinct_rows(PointView pts) {
    std::vector<std::size_t> idx(pts.n);
    std::iota(idx.begin(), idx.end(), 0);
    auto less = [&](std::size_t a, std::size_t b) {
        auto ra = pts.row(a), rb = pts.row(b);
        return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    };
    std::sort(idx.begin(), idx.end(), less);
    std::size_t distinct = pts.n ? 1 : 0;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        if (less(idx[i - 1], idx[i])) ++distinct;
    }
    return distinct;
}

namespace detail {

/// Nearest centroid per point, ties to the lowest id. Returns the inertia.
inline double assign_points(PointView pts, std::span<const double> centroids, std::size_t k,
                            std::vector<int>& labels, std::vector<double>* dist = nullptr) {
    labels.resize(pts.n);
    if (dist) dist->resize(pts.n);
    double total = 0;
    for (std::size_t i = 0; i < pts.n; ++i) {
        const auto x = pts.row(i);
        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (std::size_t c = 0; c < k; ++c) {
            const double dd = squared_distance(x, centroids.subspan(c * pts.d, pts.d));
            if (dd < best) {
                best = dd;
                arg = static_cast<int>(c);
            }
        }
        labels[i] = arg;
        if (dist) (*dist)[i] = best;
        total += best;
    }
    return total;
}

/// Moves the point farthest from its centroid into each empty cluster, taking
/// only from clusters that keep at least one member. Returns true if anything moved.
inline bool repair_empty(PointView pts, std::vector<double>& centroids, std::size_t k, std::vector<int>& labels) {
    std::vector<std::size_t> sizes(k, 0);
    for (int a : labels) ++sizes[static_cast<std::size_t>(a)];
    bool moved = false;
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] != 0) continue;
        double far = -1;
        std::size_t arg = pts.n;
        for (std::size_t i = 0; i < pts.n; ++i) {
            const auto own = static_cast<std::size_t>(labels[i]);
            if (sizes[own] < 2) continue;
            const double dd = squared_distance(pts.row(i), std::span<const double>(centroids).subspan(own * pts.d, pts.d));
            if (dd > far) {
                far = dd;
                arg = i;
            }
        }
        if (arg == pts.n) throw NumericError("cannot repair empty cluster: too few points");
        --sizes[static_cast<std::size_t>(labels[arg])];
        labels[arg] = static_cast<int>(c);
        sizes[c] = 1;
        const auto x = pts.row(arg);
        std::copy(x.begin(), x.end(), centroids.begin() + static_cast<std::ptrdiff_t>(c * pts.d));
        moved = true;
    }
    return moved;
}

inline void update_centroids(PointView pts, std::size_t k, const std::vector<int>& labels,
                             std::vector<double>& centroids) {
    std::vector<double> sums(k * pts.d, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < pts.n; ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        const auto x = pts.row(i);
        for (std::size_t j = 0; j < pts.d; ++j) sums[c * pts.d + j] += x[j];
        ++counts[c];
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) continue;
        for (std::size_t j = 0; j < pts.d; ++j) {
            centroids[c * pts.d + j] = sums[c * pts.d + j] / static_cast<double>(counts[c]);
        }
    }
}

inline std::vector<double> init_kmeanspp(PointView pts, std::size_t k, Rng& rng) {
    std::vector<double> centroids;
    centroids.reserve(k * pts.d);
    auto push = [&](std::size_t i) {
        const auto x = pts.row(i);
        centroids.insert(centroids.end(), x.begin(), x.end());
    };
    push(rng.index(pts.n));
    std::vector<double> d2(pts.n);
    for (std::size_t i = 0; i < pts.n; ++i) {
        d2[i] = squared_distance(pts.row(i), std::span<const double>(centroids).subspan(0, pts.d));
    }
    for (std::size_t c = 1; c < k; ++c) {
        double total = 0;
        for (double v : d2) total += v;
        std::size_t pick = pts.n - 1;
        if (total > 0) {
            const double target = rng.uniform() * total;
            double acc = 0;
            for (std::size_t i = 0; i < pts.n; ++i) {
                acc += d2[i];
                if (acc > target && d2[i] > 0) {
                    pick = i;
                    break;
                }
            }
            // Rounding can leave `target` beyond the last partial sum.
            while (d2[pick] == 0 && pick > 0) --pick;
        } else {
            pick = rng.index(pts.n);
        }
        push(pick);
        const auto ctr = std::span<const double>(centroids).subspan(c * pts.d, pts.d);
        for (std::size_t i = 0; i < pts.n; ++i) d2[i] = std::min(d2[i], squared_distance(pts.row(i), ctr));
    }
    return centroids;
}

inline std::vector<double> init_random_points(PointView pts, std::size_t k, Rng& rng) {
    std::vector<double> centroids;
    centroids.reserve(k * pts.d);
    std::vector<std::size_t> chosen;
    while (chosen.size() < k) {
        const std::size_t i = rng.index(pts.n);
        bool dup = false;
        for (auto c : chosen) dup = dup || squared_distance(pts.row(c), pts.row(i)) == 0;
        if (dup) continue;
        chosen.push_back(i);
        const auto x = pts.row(i);
        centroids.insert(centroids.end(), x.begin(), x.end());
    }
    return centroids;
}

/// One seeded Lloyd run.
inline ClusterModel lloyd(PointView pts, const KmeansConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t k = cfg.k;
    ClusterModel m;
    m.k = k;
    m.dims = pts.d;
    m.seed_used = seed;
    m.centroids = cfg.init == KmeansInit::kmeanspp ? init_kmeanspp(pts, k, rng) : init_random_points(pts, k, rng);

    std::vector<int> labels;
    assign_points(pts, m.centroids, k, labels);
    const std::size_t hard_cap = cfg.max_iter * 2 + 10;
    double prev = std::numeric_limits<double>::infinity();
    std::vector<int> next;
    for (std::size_t iter = 0;; ++iter) {
        repair_empty(pts, m.centroids, k, labels);
        update_centroids(pts, k, labels, m.centroids);
        const double inertia = compute_inertia(pts, m.centroids, labels);
        m.inertia_trace.push_back(inertia);
        m.iterations_run = iter + 1;

        assign_points(pts, m.centroids, k, next);
        std::vector<std::size_t> sizes(k, 0);
        for (int a : next) ++sizes[static_cast<std::size_t>(a)];
        const bool no_empty = std::find(sizes.begin(), sizes.end(), 0) == sizes.end();
        const bool stable = next == labels;
        labels.swap(next);
        const bool small_change = std::isfinite(prev) && (prev - inertia) <= cfg.tol * prev;
        prev = inertia;

        if (no_empty && (stable || small_change)) {
            m.converged = true;
            break;
        }
        if (no_empty && m.iterations_run >= cfg.max_iter) break;
        if (m.iterations_run >= hard_cap) {
            throw NumericError("k-means failed to produce non-empty clusters");
        }
    }
    m.assignments = std::move(labels);
    m.inertia = compute_inertia(pts, m.centroids, m.assignments);
    return m;
}

}  // namespace detail

/// Best-of-restarts Lloyd k-means. Restart r is seeded with `cfg.seed + r`.
inline ClusterModel kmeans_fit(PointView pts, const KmeansConfig& cfg) {
    cfg.validate();
    for (double v : pts.data) {
        if (!std::isfinite(v)) throw NumericError("feature matrix contains non-finite values");
    }
    if (cfg.k > pts.n) {
        throw NumericError("k = " + std::to_string(cfg.k) + " exceeds sample count " + std::to_string(pts.n));
    }
    const std::size_t distinct = count_distinct_rows(pts);
    if (cfg.k > distinct) {
        throw NumericError("k = " + std::to_string(cfg.k) + " exceeds distinct rows " + std::to_string(distinct));
    }

    std::vector<ClusterModel> runs(cfg.n_restarts);
    detail::parallel_chunks(cfg.n_restarts, 1, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
            runs[r] = detail::lloyd(pts, cfg, cfg.seed + r);
            runs[r].restart_index = r;
        }
    });
    std::size_t best = 0;
    for (std::size_t r = 1; r < runs.size(); ++r) {
        if (runs[r].inertia < runs[best].inertia) best = r;
    }
    return std::move(runs[best]);
}

}  // namespace efacies
