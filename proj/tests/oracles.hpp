#pragma once

// Reference implementations written independently of the library, used to
// cross-check it. Deliberately naive.

#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <vector>

namespace oracle {

using Points = std::vector<std::vector<double>>;

inline double dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
    return std::sqrt(s);
}

/// Textbook silhouette by a double loop over all pairs.
inline std::vector<double> silhouette(const Points& x, const std::vector<int>& labels) {
    const std::size_t n = x.size();
    std::map<int, std::size_t> sizes;
    for (int l : labels) ++sizes[l];
    std::vector<double> s(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (sizes[labels[i]] == 1) continue;
        std::map<int, double> total;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) total[labels[j]] += dist(x[i], x[j]);
        }
        const double a = total[labels[i]] / static_cast<double>(sizes[labels[i]] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (const auto& [c, t] : total) {
            if (c != labels[i]) b = std::min(b, t / static_cast<double>(sizes[c]));
        }
        const double m = std::max(a, b);
        s[i] = m == 0 ? 0.0 : (b - a) / m;
    }
    return s;
}

/// Within-cluster sum of squares of a labelling, computing centroids directly.
inline double partition_cost(const Points& x, const std::vector<int>& labels, int k) {
    const std::size_t d = x.empty() ? 0 : x[0].size();
    double total = 0;
    for (int c = 0; c < k; ++c) {
        std::vector<double> mean(d, 0.0);
        std::size_t m = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (labels[i] != c) continue;
            for (std::size_t j = 0; j < d; ++j) mean[j] += x[i][j];
            ++m;
        }
        if (m == 0) return std::numeric_limits<double>::infinity();
        for (auto& v : mean) v /= static_cast<double>(m);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (labels[i] != c) continue;
            for (std::size_t j = 0; j < d; ++j) total += (x[i][j] - mean[j]) * (x[i][j] - mean[j]);
        }
    }
    return total;
}

/// Minimum k-partition cost by enumerating every labelling with point 0
/// fixed in cluster 0 (k^(n-1) candidates).
inline double exhaustive_min_inertia(const Points& x, int k) {
    const std::size_t n = x.size();
    std::vector<int> labels(n, 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        best = std::min(best, partition_cost(x, labels, k));
        std::size_t i = 1;
        while (i < n && labels[i] == k - 1) labels[i++] = 0;
        if (i >= n) break;
        ++labels[i];
    }
    return best;
}

/// Adjusted Rand index from the pair-counting definition, O(n^2).
inline double ari_pairs(const std::vector<int>& a, const std::vector<int>& b) {
    const std::size_t n = a.size();
    double same_both = 0, same_a = 0, same_b = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool sa = a[i] == a[j], sb = b[i] == b[j];
            same_a += sa;
            same_b += sb;
            same_both += sa && sb;
        }
    }
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2;
    const double expected = same_a * same_b / pairs;
    const double max_index = (same_a + same_b) / 2;
    if (max_index == expected) return 1.0;
    return (same_both - expected) / (max_index - expected);
}

}  // namespace oracle
