#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "efacies/csv.hpp"
#include "efacies/curve_set.hpp"
#include "efacies/facies.hpp"
#include "efacies/kmeans.hpp"
#include "efacies/kselect.hpp"
#include "efacies/las.hpp"
#include "efacies/petro.hpp"
#include "efacies/qc.hpp"
#include "efacies/report.hpp"
#include "efacies/settings.hpp"
#include "efacies/silhouette.hpp"

namespace efacies {

struct RunOutputs {
    CurveSet input;
    QcResult qc;
    PorosityProfile porosity;
    std::optional<KSelectionReport> selection;
    ClusterModel model;
    bool k_from_recommendation = false;
    std::optional<std::vector<double>> silhouette;
    FaciesColumn facies;
    FaciesSummary summary;
    ContinuityStats continuity;
    std::vector<std::string> notes;
};

/// slice -> QC -> porosity -> (k selection) -> k-means -> facies labelling.
inline RunOutputs run_pipeline(const CurveSet& cs, const RunSettings& s) {
    RunOutputs out;
    out.input = cs;
    if (s.top || s.base) {
        const double top = s.top.value_or(cs.depth().empty() ? 0.0 : cs.depth().front());
        const double base = s.base.value_or(cs.depth().empty() ? 0.0 : cs.depth().back());
        out.input = las::slice_depth(cs, top, base);
    }
    s.selection.validate(out.input);
    out.qc = run_qc(out.input, s.selection, s.qc);
    // Porosity is reported wherever the hole is in gauge; outlier screening only
    // conditions the clustering features.
    out.porosity = porosity_profile(out.qc.after_washout, s.petro);

    const auto& fm = out.qc.features;
    if (s.run_selection) {
        out.selection = select_k(fm, s.k_min, s.k_max, s.kmeans);
    }

    std::size_t k = 0;
    if (s.k) {
        k = *s.k;
    } else if (out.selection && out.selection->best_silhouette_k) {
        k = *out.selection->best_silhouette_k;
        out.k_from_recommendation = true;
        out.notes.push_back("no k given; using silhouette recommendation k = " + std::to_string(k));
    } else {
        throw ConfigError("no cluster count: pass --k or set kmeans.k, or enable k selection with k_max >= 2");
    }

    KmeansConfig kc = s.kmeans;
    kc.k = k;
    bool reused = false;
    if (out.selection) {
        for (std::size_t i = 0; i < out.selection->k_values.size(); ++i) {
            if (out.selection->k_values[i] == k) {
                out.model = out.selection->models[i];
                reused = true;
            }
        }
    }
    if (!reused) out.model = kmeans_fit(fm, kc);

    if (out.selection && k >= 2) out.silhouette = silhouette_values(fm, out.model.assignments);

    FaciesScheme scheme{s.labels ? *s.labels : FaciesScheme::default_labels(k), s.gr_mnemonic, s.rhoz_mnemonic};
    out.facies = assign_labels(out.model, out.qc.retained, fm, scheme);
    out.summary = facies_summaries(out.facies, out.qc.retained, out.porosity);
    out.continuity = continuity_stats(out.facies);
    return out;
}

inline std::string run_summary_text(const RunOutputs& r) {
    std::string s;
    s += "well: " + r.input.well_name() + "\n";
    s += "samples in interval: " + std::to_string(r.input.rows()) + "\n";
    s += "samples clustered: " + std::to_string(r.qc.features.rows()) + "\n";
    s += "k: " + std::to_string(r.model.k) + (r.k_from_recommendation ? " (silhouette recommendation)" : "") + "\n";
    s += "inertia: " + format_double(r.model.inertia) + "\n";
    s += "converged: " + std::string(r.model.converged ? "yes" : "no") + " after " +
         std::to_string(r.model.iterations_run) + " iterations (restart " + std::to_string(r.model.restart_index) +
         ")\n";
    s += "rng: " + std::string(Rng::algorithm) + "\n";
    if (r.selection) {
        if (r.selection->best_silhouette_k) s += "best_silhouette_k: " + std::to_string(*r.selection->best_silhouette_k) + "\n";
        if (r.selection->knee.k) {
            s += "knee_k: " + std::to_string(*r.selection->knee.k) +
                 (r.selection->knee.low_confidence ? " (low confidence)" : "") + "\n";
        } else {
            s += "knee_k: undefined\n";
        }
    }
    if (r.silhouette) s += "mean_silhouette: " + format_double(mean_silhouette(*r.silhouette)) + "\n";
    s += "runs: " + std::to_string(r.continuity.n_runs) + ", mean run thickness " +
         format_sig(r.continuity.mean_run_thickness, 4) + " m\n";
    for (const auto& row : r.summary.rows) {
        s += "facies " + std::to_string(row.rank) + " " + row.label + ": cluster " + std::to_string(row.cluster_id) +
             ", " + std::to_string(row.count) + " samples\n";
    }
    for (const auto& n : r.notes) s += "note: " + n + "\n";
    return s;
}

/// Figures plus facies_summary.csv, transitions.csv, qc_audit.txt and run_summary.txt.
inline std::vector<std::filesystem::path> write_run(const RunOutputs& r, const RunSettings& s,
                                                    const std::filesystem::path& dir) {
    report::ReportInputs in;
    in.curves = &r.qc.retained;
    in.porosity = &r.porosity;
    in.facies = &r.facies;
    in.logs = s.selection.mnemonics;
    in.selection = r.selection ? &*r.selection : nullptr;
    in.silhouette = r.silhouette ? &*r.silhouette : nullptr;
    for (const auto& c : s.crossplots) {
        if (r.qc.retained.has(c.x_mnemonic) && r.qc.retained.has(c.y_mnemonic)) in.crossplots.push_back(c);
    }
    auto files = report::emit_figures(in, dir);
    auto put = [&](const std::string& name, const std::string& content) {
        write_file_atomic(dir / name, content);
        files.push_back(dir / name);
    };
    put("facies_summary.csv", r.summary.to_csv());
    put("transitions.csv", r.continuity.to_csv());
    put("qc_audit.txt", r.qc.audit.to_text());
    put("run_summary.txt", run_summary_text(r));
    return files;
}

}  // namespace efacies
