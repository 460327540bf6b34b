#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "efacies/csv.hpp"
#include "efacies/error.hpp"
#include "efacies/kmeans.hpp"
#include "efacies/silhouette.hpp"

namespace efacies {

struct KneeResult {
    std::optional<std::size_t> k;
    /// Set when the knee is undefined or the maximum second difference is tied.
    bool low_confidence = true;
};

/// Knee of an inertia curve evaluated at consecutive k starting from `k_min`:
/// the k maximising I(k-1) - 2 I(k) + I(k+1), ties to the smaller k.
inline KneeResult knee_by_second_difference(std::span<const double> inertias, std::size_t k_min) {
    KneeResult r;
    if (inertias.size() < 3) return r;
    double scale = 0;
    for (double v : inertias) scale = std::max(scale, std::abs(v));
    const double tie_tol = 1e-12 * scale;
    std::size_t arg = 1;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < inertias.size(); ++i) {
        const double d2 = inertias[i - 1] - 2 * inertias[i] + inertias[i + 1];
        if (d2 > best + tie_tol) {
            best = d2;
            arg = i;
        }
    }
    std::size_t ties = 0;
    for (std::size_t i = 1; i + 1 < inertias.size(); ++i) {
        const double d2 = inertias[i - 1] - 2 * inertias[i] + inertias[i + 1];
        if (std::abs(d2 - best) <= tie_tol) ++ties;
    }
    r.k = k_min + arg;
    r.low_confidence = ties > 1;
    return r;
}

struct KSelectionReport {
    std::vector<std::size_t> k_values;
    std::vector<double> inertias;
    /// NaN where undefined (k = 1) or not computed.
    std::vector<double> mean_silhouettes;
    KneeResult knee;
    std::optional<std::size_t> best_silhouette_k;
    std::vector<ClusterModel> models;

    const ClusterModel& model_for(std::size_t k) const {
        for (std::size_t i = 0; i < k_values.size(); ++i) {
            if (k_values[i] == k) return models[i];
        }
        throw ConfigError("k = " + std::to_string(k) + " was not evaluated");
    }

    /// `k,inertia,mean_silhouette,knee_flag`
    std::string to_csv() const {
        CsvWriter w({"k", "inertia", "mean_silhouette", "knee_flag"});
        for (std::size_t i = 0; i < k_values.size(); ++i) {
            const double s = i < mean_silhouettes.size() ? mean_silhouettes[i] : std::nan("");
            w.row({std::to_string(k_values[i]), format_double(inertias[i]),
                   std::isnan(s) ? "" : format_double(s), knee.k && *knee.k == k_values[i] ? "1" : "0"});
        }
        return w.str();
    }
};

inline void check_k_range(std::size_t k_min, std::size_t k_max, std::size_t n) {
    if (k_min < 1 || k_min > k_max || k_max > n) {
        throw ConfigError("invalid k range " + std::to_string(k_min) + ":" + std::to_string(k_max) +
                          " for " + std::to_string(n) + " samples");
    }
}

/// Best-of-restarts inertia for each k in [k_min, k_max] plus the knee.
inline KSelectionReport inertia_curve(PointView pts, std::size_t k_min, std::size_t k_max, KmeansConfig cfg) {
    check_k_range(k_min, k_max, pts.n);
    KSelectionReport rep;
    for (std::size_t k = k_min; k <= k_max; ++k) {
        cfg.k = k;
        rep.models.push_back(kmeans_fit(pts, cfg));
        rep.k_values.push_back(k);
        rep.inertias.push_back(rep.models.back().inertia);
    }
    rep.mean_silhouettes.assign(rep.k_values.size(), std::nan(""));
    rep.knee = knee_by_second_difference(rep.inertias, k_min);
    return rep;
}

/// Inertia curve plus mean silhouette per k. `best_silhouette_k` is a
/// recommendation only; callers pick the k they commit to.
inline KSelectionReport select_k(PointView pts, std::size_t k_min, std::size_t k_max, const KmeansConfig& cfg) {
    auto rep = inertia_curve(pts, k_min, k_max, cfg);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rep.k_values.size(); ++i) {
        if (rep.k_values[i] < 2) continue;
        const auto values = silhouette_values(pts, rep.models[i].assignments);
        rep.mean_silhouettes[i] = mean_silhouette(values);
        if (rep.mean_silhouettes[i] > best) {
            best = rep.mean_silhouettes[i];
            rep.best_silhouette_k = rep.k_values[i];
        }
    }
    return rep;
}

}  // namespace efacies
