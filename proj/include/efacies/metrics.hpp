#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <utility>

#include "efacies/error.hpp"

namespace efacies {

/// Adjusted Rand index between two labelings of the same samples.
inline double adjusted_rand_index(std::span<const int> truth, std::span<const int> pred) {
    if (truth.size() != pred.size()) throw NumericError("ARI: labelings differ in length");
    const auto n = static_cast<double>(truth.size());
    std::map<std::pair<int, int>, double> table;
    std::map<int, double> rows, cols;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        table[{truth[i], pred[i]}] += 1;
        rows[truth[i]] += 1;
        cols[pred[i]] += 1;
    }
    auto comb2 = [](double x) { return x * (x - 1) / 2; };
    double index = 0, sum_rows = 0, sum_cols = 0;
    for (const auto& [key, v] : table) index += comb2(v);
    for (const auto& [key, v] : rows) sum_rows += comb2(v);
    for (const auto& [key, v] : cols) sum_cols += comb2(v);
    const double expected = sum_rows * sum_cols / comb2(n);
    const double max_index = (sum_rows + sum_cols) / 2;
    if (max_index == expected) return 1.0;
    return (index - expected) / (max_index - expected);
}

}  // namespace efacies
