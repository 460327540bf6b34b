#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "efacies/csv.hpp"
#include "efacies/curve_set.hpp"
#include "efacies/error.hpp"
#include "efacies/kmeans.hpp"
#include "efacies/petro.hpp"
#include "efacies/qc.hpp"

namespace efacies {

/// Labels ordered from cleanest (lowest mean GR) to most clay-rich.
struct FaciesScheme {
    std::vector<std::string> ordered_labels;
    std::string gr_mnemonic = "GR";
    std::string rhoz_mnemonic = "RHOZ";

    static std::vector<std::string> default_labels(std::size_t k) {
        switch (k) {
            case 2: return {"Sandstone-dominated", "Shale-dominated"};
            case 3: return {"Sandstone-dominated", "Mixed sand-shale", "Shale-dominated"};
            case 4: return {"Sandstone-dominated", "Sand-prone mixed", "Shale-prone mixed", "Shale-dominated"};
            case 5:
                return {"Sandstone-dominated", "Sand-prone mixed", "Mixed sand-shale", "Shale-prone mixed",
                        "Shale-dominated"};
            default:
                throw ConfigError("no default facies labels for k = " + std::to_string(k) +
                                  "; set facies.labels");
        }
    }

    static FaciesScheme for_k(std::size_t k) { return FaciesScheme{default_labels(k)}; }

    void validate(std::size_t k) const {
        if (ordered_labels.size() != k) {
            throw ConfigError("facies scheme has " + std::to_string(ordered_labels.size()) +
                              " labels for k = " + std::to_string(k));
        }
        for (std::size_t i = 0; i < ordered_labels.size(); ++i) {
            if (ordered_labels[i].empty() || ordered_labels[i].find(',') != std::string::npos) {
                throw ConfigError("facies label '" + ordered_labels[i] + "' must be non-empty and comma-free");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (ordered_labels[i] == ordered_labels[j]) {
                    throw ConfigError("duplicate facies label '" + ordered_labels[i] + "'");
                }
            }
        }
    }
};

struct LogStats {
    double mean = std::nan("");
    double std = std::nan("");
    std::size_t count = 0;
};

struct FaciesColumn {
    std::size_t k = 0;
    std::vector<double> depth;
    std::vector<int> cluster_id;
    std::vector<std::string> label;
    std::vector<std::string> ordered_labels;
    /// GR rank per cluster id; rank 0 is the cleanest.
    std::vector<std::size_t> rank;
    std::map<int, double> cluster_gr_means;
    /// Per cluster id, per raw feature log (same order as `summary_logs`).
    std::vector<std::string> summary_logs;
    std::vector<std::vector<LogStats>> cluster_summaries;

    std::size_t size() const { return depth.size(); }

    /// `depth,cluster_id,label`
    std::string to_csv() const {
        CsvWriter w({"depth", "cluster_id", "label"});
        for (std::size_t i = 0; i < size(); ++i) {
            w.row({format_double(depth[i]), std::to_string(cluster_id[i]), label[i]});
        }
        return w.str();
    }
};

namespace detail {

inline LogStats stats_of(const std::vector<double>& v) {
    LogStats s;
    s.count = v.size();
    if (v.empty()) return s;
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(v.size()));
    return s;
}

inline std::vector<std::size_t> source_rows(const CurveSet& cs, std::span<const double> depth) {
    std::vector<std::size_t> rows;
    rows.reserve(depth.size());
    for (double d : depth) {
        auto r = cs.row_of(d);
        if (!r) throw InputError("depth " + format_double(d) + " not present in curve set");
        rows.push_back(*r);
    }
    return rows;
}

/// Per-cluster stats of a raw curve over the given source rows, skipping missing samples.
inline std::vector<LogStats> cluster_stats(const Curve& c, const std::vector<std::size_t>& rows,
                                           std::span<const int> ids, std::size_t k) {
    std::vector<std::vector<double>> buckets(k);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!c.is_missing(rows[i])) buckets[static_cast<std::size_t>(ids[i])].push_back(c.values[rows[i]]);
    }
    std::vector<LogStats> out;
    for (const auto& b : buckets) out.push_back(stats_of(b));
    return out;
}

}  // namespace detail

/// Ranks clusters by ascending mean raw GR and labels each sample. Ties in
/// mean GR go to the denser (higher mean RHOZ) cluster, then the lower id.
inline FaciesColumn assign_labels(const ClusterModel& model, const CurveSet& cs, const FeatureMatrix& fm,
                                  const FaciesScheme& scheme) {
    scheme.validate(model.k);
    if (model.assignments.size() != fm.rows()) {
        throw InputError("cluster model and feature matrix differ in sample count");
    }
    const Curve& gr = cs.at(scheme.gr_mnemonic);
    const auto rows = detail::source_rows(cs, fm.depth_index);
    const std::size_t k = model.k;

    const auto gr_stats = detail::cluster_stats(gr, rows, model.assignments, k);
    std::vector<double> rhoz_means(k, 0.0);
    if (const Curve* rhoz = cs.find(scheme.rhoz_mnemonic)) {
        const auto rs = detail::cluster_stats(*rhoz, rows, model.assignments, k);
        for (std::size_t c = 0; c < k; ++c) rhoz_means[c] = rs[c].count ? rs[c].mean : 0.0;
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (gr_stats[c].count == 0) {
            throw InputError("cluster " + std::to_string(c) + " has no observed " + scheme.gr_mnemonic);
        }
    }

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (gr_stats[a].mean != gr_stats[b].mean) return gr_stats[a].mean < gr_stats[b].mean;
        if (rhoz_means[a] != rhoz_means[b]) return rhoz_means[a] > rhoz_means[b];
        return a < b;
    });

    FaciesColumn fc;
    fc.k = k;
    fc.ordered_labels = scheme.ordered_labels;
    fc.rank.assign(k, 0);
    for (std::size_t r = 0; r < k; ++r) fc.rank[order[r]] = r;
    for (std::size_t c = 0; c < k; ++c) fc.cluster_gr_means[static_cast<int>(c)] = gr_stats[c].mean;
    fc.depth = fm.depth_index;
    fc.cluster_id = model.assignments;
    fc.label.reserve(fc.size());
    for (int id : fc.cluster_id) fc.label.push_back(scheme.ordered_labels[fc.rank[static_cast<std::size_t>(id)]]);

    fc.summary_logs = fm.feature_names;
    fc.cluster_summaries.assign(k, {});
    for (const auto& m : fm.feature_names) {
        const auto st = detail::cluster_stats(cs.at(m), rows, model.assignments, k);
        for (std::size_t c = 0; c < k; ++c) fc.cluster_summaries[c].push_back(st[c]);
    }
    return fc;
}

struct ContinuityStats {
    std::size_t n_runs = 0;
    double mean_run_length = 0;     // samples
    double mean_run_thickness = 0;  // m
    std::vector<std::size_t> run_lengths;
    std::vector<double> run_thickness;
    std::vector<int> run_ids;
    /// Adjacent-sample transitions, self-transitions included; k x k row-major.
    std::vector<std::size_t> transition_matrix;
    /// The subset of transitions whose depth step exceeds twice the median step.
    std::vector<std::size_t> gap_transitions;
    std::size_t n_gaps = 0;
    double median_interval = 0;
    std::size_t k = 0;

    std::size_t transitions(std::size_t from, std::size_t to) const { return transition_matrix[from * k + to]; }

    /// `from,to,count,gap_count` for every ordered cluster pair.
    std::string to_csv() const {
        CsvWriter w({"from", "to", "count", "gap_count"});
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b) {
                w.row({std::to_string(a), std::to_string(b), std::to_string(transition_matrix[a * k + b]),
                       std::to_string(gap_transitions[a * k + b])});
            }
        }
        return w.str();
    }
};

/// Run-length structure of the facies column along depth.
///
/// Each sample covers half the step to each neighbour. A step larger than
/// twice the median step is a gap (QC-removed interval); across a gap a
/// sample only claims half a median step, so removed intervals add no thickness.
inline ContinuityStats continuity_stats(const FaciesColumn& fc) {
    if (fc.size() == 0) throw InputError("continuity_stats: empty facies column");
    ContinuityStats st;
    st.k = fc.k;
    const std::size_t n = fc.size();
    st.transition_matrix.assign(st.k * st.k, 0);
    st.gap_transitions.assign(st.k * st.k, 0);

    std::vector<double> steps;
    for (std::size_t i = 1; i < n; ++i) steps.push_back(fc.depth[i] - fc.depth[i - 1]);
    if (!steps.empty()) {
        auto sorted = steps;
        std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
        st.median_interval = sorted[sorted.size() / 2];
        if (sorted.size() % 2 == 0) {
            const double lower = *std::max_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2));
            st.median_interval = (st.median_interval + lower) / 2;
        }
    }
    auto is_gap = [&](std::size_t i) { return steps[i - 1] > 2 * st.median_interval; };
    auto half_below = [&](std::size_t i) {  // towards i+1
        if (i + 1 >= n || is_gap(i + 1)) return st.median_interval / 2;
        return steps[i] / 2;
    };
    auto half_above = [&](std::size_t i) {  // towards i-1
        if (i == 0 || is_gap(i)) return st.median_interval / 2;
        return steps[i - 1] / 2;
    };

    std::size_t run_len = 0;
    double run_thick = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            const auto a = static_cast<std::size_t>(fc.cluster_id[i - 1]);
            const auto b = static_cast<std::size_t>(fc.cluster_id[i]);
            ++st.transition_matrix[a * st.k + b];
            if (is_gap(i)) {
                ++st.gap_transitions[a * st.k + b];
                ++st.n_gaps;
            }
            if (a != b) {
                st.run_lengths.push_back(run_len);
                st.run_thickness.push_back(run_thick);
                st.run_ids.push_back(fc.cluster_id[i - 1]);
                run_len = 0;
                run_thick = 0;
            }
        }
        ++run_len;
        run_thick += half_above(i) + half_below(i);
    }
    st.run_lengths.push_back(run_len);
    st.run_thickness.push_back(run_thick);
    st.run_ids.push_back(fc.cluster_id.back());

    st.n_runs = st.run_lengths.size();
    st.mean_run_length = static_cast<double>(n) / static_cast<double>(st.n_runs);
    st.mean_run_thickness =
        std::accumulate(st.run_thickness.begin(), st.run_thickness.end(), 0.0) / static_cast<double>(st.n_runs);
    return st;
}

/// Per-facies counts with mean/std of each raw log and of phi_avg, rows in GR-rank order.
struct FaciesSummary {
    struct Row {
        int cluster_id = 0;
        std::size_t rank = 0;
        std::string label;
        std::size_t count = 0;
        std::vector<LogStats> logs;
    };
    std::vector<std::string> columns;
    std::vector<Row> rows;

    const Row& by_label(const std::string& label) const {
        for (const auto& r : rows) {
            if (r.label == label) return r;
        }
        throw InputError("no facies labelled '" + label + "'");
    }

    double mean(const Row& r, const std::string& column) const {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (iequals(columns[j], column)) return r.logs[j].mean;
        }
        throw MissingCurveError(column);
    }

    std::string to_csv() const {
        std::vector<std::string> header{"cluster_id", "rank", "label", "count"};
        for (const auto& c : columns) {
            header.push_back(c + "_mean");
            header.push_back(c + "_std");
        }
        CsvWriter w(header);
        for (const auto& r : rows) {
            std::vector<std::string> f{std::to_string(r.cluster_id), std::to_string(r.rank), r.label,
                                       std::to_string(r.count)};
            for (const auto& s : r.logs) {
                f.push_back(s.count ? format_double(s.mean) : "");
                f.push_back(s.count ? format_double(s.std) : "");
            }
            w.row(f);
        }
        return w.str();
    }
};

/// Summaries of every curve in `cs` named in `fc.summary_logs`, plus PHI_AVG
/// looked up by depth in `pp`.
inline FaciesSummary facies_summaries(const FaciesColumn& fc, const CurveSet& cs, const PorosityProfile& pp) {
    const auto rows = detail::source_rows(cs, fc.depth);
    FaciesSummary out;
    out.columns = fc.summary_logs;
    out.columns.push_back("PHI_AVG");

    std::vector<std::vector<LogStats>> per_log;
    for (const auto& m : fc.summary_logs) per_log.push_back(detail::cluster_stats(cs.at(m), rows, fc.cluster_id, fc.k));

    std::vector<std::vector<double>> phi(fc.k);
    for (std::size_t i = 0; i < fc.size(); ++i) {
        auto it = std::lower_bound(pp.depth.begin(), pp.depth.end(), fc.depth[i]);
        if (it == pp.depth.end() || *it != fc.depth[i]) {
            throw InputError("depth " + format_double(fc.depth[i]) + " missing from porosity profile");
        }
        const auto r = static_cast<std::size_t>(it - pp.depth.begin());
        if (!pp.avg_missing(r)) phi[static_cast<std::size_t>(fc.cluster_id[i])].push_back(pp.phi_avg[r]);
    }

    std::vector<std::size_t> counts(fc.k, 0);
    for (int id : fc.cluster_id) ++counts[static_cast<std::size_t>(id)];

    std::vector<std::size_t> by_rank(fc.k);
    for (std::size_t c = 0; c < fc.k; ++c) by_rank[fc.rank[c]] = c;
    for (std::size_t r = 0; r < fc.k; ++r) {
        const std::size_t c = by_rank[r];
        if (counts[c] == 0) throw NumericError("facies cluster " + std::to_string(c) + " has no samples");
        FaciesSummary::Row row;
        row.cluster_id = static_cast<int>(c);
        row.rank = r;
        row.label = fc.ordered_labels[r];
        row.count = counts[c];
        for (const auto& pl : per_log) row.logs.push_back(pl[c]);
        row.logs.push_back(detail::stats_of(phi[c]));
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace efacies
