#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "efacies/csv.hpp"
#include "efacies/error.hpp"
#include "efacies/kmeans.hpp"
#include "efacies/parallel.hpp"

namespace efacies {

/// Per-sample silhouette coefficients (Euclidean distance). Every cluster id in
/// [0, max label] must be populated and at least two clusters are required.
/// Singleton members and samples with a = b = 0 score 0.
inline std::vector<double> silhouette_values(PointView pts, std::span<const int> labels) {
    if (labels.size() != pts.n) throw NumericError("silhouette: label count does not match sample count");
    if (pts.n == 0) throw NumericError("silhouette: no samples");
    const auto k = static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end())) + 1;
    std::vector<std::size_t> sizes(k, 0);
    for (int l : labels) {
        if (l < 0) throw NumericError("silhouette: negative cluster id");
        ++sizes[static_cast<std::size_t>(l)];
    }
    if (k < 2) throw NumericError("silhouette needs at least 2 clusters");
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] == 0) throw NumericError("silhouette: cluster " + std::to_string(c) + " is empty");
    }

    std::vector<double> s(pts.n, 0.0);
    detail::parallel_chunks(pts.n, 256, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> sums(k);
        for (std::size_t i = lo; i < hi; ++i) {
            std::fill(sums.begin(), sums.end(), 0.0);
            const auto xi = pts.row(i);
            for (std::size_t j = 0; j < pts.n; ++j) {
                sums[static_cast<std::size_t>(labels[j])] += std::sqrt(squared_distance(xi, pts.row(j)));
            }
            const auto own = static_cast<std::size_t>(labels[i]);
            if (sizes[own] == 1) continue;
            const double a = sums[own] / static_cast<double>(sizes[own] - 1);
            double b = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                if (c != own) b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
            }
            const double denom = std::max(a, b);
            s[i] = denom == 0 ? 0.0 : (b - a) / denom;
        }
    });
    return s;
}

inline double mean_silhouette(std::span<const double> values) {
    if (values.empty()) throw NumericError("mean_silhouette: no values");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

/// `cluster_id,depth,silhouette`, grouped by cluster and descending within each.
inline std::string silhouette_csv(std::span<const double> values, std::span<const int> labels,
                                  std::span<const double> depth) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (labels[a] != labels[b]) return labels[a] < labels[b];
        return values[a] > values[b];
    });
    CsvWriter w({"cluster_id", "depth", "silhouette"});
    for (auto i : order) {
        w.row({std::to_string(labels[i]), format_double(depth[i]), format_double(values[i])});
    }
    return w.str();
}

}  // namespace efacies
