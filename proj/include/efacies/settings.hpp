#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "efacies/config.hpp"
#include "efacies/curve_set.hpp"
#include "efacies/error.hpp"
#include "efacies/facies.hpp"
#include "efacies/kde.hpp"
#include "efacies/kmeans.hpp"
#include "efacies/petro.hpp"
#include "efacies/qc.hpp"
#include "efacies/synthwell.hpp"

namespace efacies {

/// Everything a pipeline run needs.
inline CrossplotSpec crossplot(std::string x, std::string y) {
    CrossplotSpec c;
    c.x_mnemonic = std::move(x);
    c.y_mnemonic = std::move(y);
    return c;
}

struct RunSettings {
    CurveSelection selection{{"GR", "RHOZ", "NPHI", "DT", "PEFZ", "AHT60"}, std::nullopt, std::nullopt};
    std::optional<double> top;
    std::optional<double> base;
    QcConfig qc;
    PetroParams petro;
    KmeansConfig kmeans;
    /// Committed cluster count; when unset a selection run supplies its recommendation.
    std::optional<std::size_t> k;
    bool run_selection = true;
    std::size_t k_min = 2;
    std::size_t k_max = 8;
    std::optional<std::vector<std::string>> labels;
    std::string gr_mnemonic = "GR";
    std::string rhoz_mnemonic = "RHOZ";
    std::vector<CrossplotSpec> crossplots{crossplot("GR", "RHOZ"), crossplot("NPHI", "DT"), crossplot("PEFZ", "GR")};
};

/// Parses `MIN:MAX`.
inline std::pair<std::size_t, std::size_t> parse_k_range(const std::string& text) {
    const auto colon = text.find(':');
    double lo = 0, hi = 0;
    if (colon == std::string::npos || !parse_double(text.substr(0, colon), lo) ||
        !parse_double(text.substr(colon + 1), hi) || lo < 1 || hi < lo || lo != static_cast<std::size_t>(lo) ||
        hi != static_cast<std::size_t>(hi)) {
        throw ConfigError("k range must look like MIN:MAX with 1 <= MIN <= MAX, got '" + text + "'");
    }
    return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

inline RunSettings settings_from_config(const KeyValueConfig& cfg) {
    RunSettings s;
    s.top = cfg.get_double("well.top");
    s.base = cfg.get_double("well.base");

    if (auto curves = cfg.get_list("features.curves"); !curves.empty()) s.selection.mnemonics = curves;
    s.selection.caliper_mnemonic = cfg.get("features.caliper");
    s.selection.bit_size = cfg.get_double("features.bit_size");

    s.qc.sigma_threshold = cfg.get_double_or("qc.sigma_threshold", s.qc.sigma_threshold);
    s.qc.washout_margin = cfg.get_double_or("qc.washout_margin", s.qc.washout_margin);
    if (auto mode = cfg.get("qc.std_mode")) {
        if (*mode == "population") s.qc.std_mode = StdMode::population;
        else if (*mode == "sample") s.qc.std_mode = StdMode::sample;
        else throw ConfigError("qc.std_mode must be population or sample");
    }

    s.petro.rho_ma = cfg.get_double_or("petro.rho_ma", s.petro.rho_ma);
    s.petro.rho_f = cfg.get_double_or("petro.rho_f", s.petro.rho_f);
    s.petro.rhoz_mnemonic = cfg.get_or("petro.rhoz", s.petro.rhoz_mnemonic);
    s.petro.nphi_mnemonic = cfg.get_or("petro.nphi", s.petro.nphi_mnemonic);
    if (auto pct = cfg.get("petro.nphi_percent")) {
        if (*pct == "auto") s.petro.nphi_percent = PercentMode::automatic;
        else if (*pct == "yes") s.petro.nphi_percent = PercentMode::yes;
        else if (*pct == "no") s.petro.nphi_percent = PercentMode::no;
        else throw ConfigError("petro.nphi_percent must be auto, yes or no");
    }

    if (auto k = cfg.get_uint("kmeans.k")) s.k = static_cast<std::size_t>(*k);
    s.kmeans.n_restarts = cfg.get_uint_or("kmeans.n_restarts", s.kmeans.n_restarts);
    s.kmeans.max_iter = cfg.get_uint_or("kmeans.max_iter", s.kmeans.max_iter);
    s.kmeans.tol = cfg.get_double_or("kmeans.tol", s.kmeans.tol);
    s.kmeans.seed = cfg.get_uint_or("kmeans.seed", s.kmeans.seed);
    if (auto init = cfg.get("kmeans.init")) {
        if (*init == "kmeans++") s.kmeans.init = KmeansInit::kmeanspp;
        else if (*init == "random-points") s.kmeans.init = KmeansInit::random_points;
        else throw ConfigError("kmeans.init must be kmeans++ or random-points");
    }

    if (auto sel = cfg.get_bool("select.enabled")) s.run_selection = *sel;
    s.k_min = cfg.get_uint_or("select.k_min", s.k_min);
    s.k_max = cfg.get_uint_or("select.k_max", s.k_max);

    if (auto labels = cfg.get_list("facies.labels", ';'); !labels.empty()) s.labels = labels;
    s.gr_mnemonic = cfg.get_or("facies.gr", s.gr_mnemonic);
    s.rhoz_mnemonic = cfg.get_or("facies.rhoz", s.rhoz_mnemonic);

    if (cfg.has("crossplot.pairs")) {
        s.crossplots.clear();
        for (const auto& pair : cfg.get_list("crossplot.pairs")) {
            const auto colon = pair.find(':');
            if (colon == std::string::npos) throw ConfigError("crossplot pair '" + pair + "' must be X:Y");
            s.crossplots.push_back(crossplot(pair.substr(0, colon), pair.substr(colon + 1)));
        }
    }
    const auto grid = cfg.get_uint("crossplot.grid");
    const auto bandwidth = cfg.get("crossplot.bandwidth");
    const auto mass = cfg.get_double("crossplot.envelope_mass");
    for (auto& c : s.crossplots) {
        if (grid) c.grid = static_cast<std::size_t>(*grid);
        if (mass) c.envelope_mass = *mass;
        if (bandwidth && *bandwidth != "scott") {
            const auto parts = split(*bandwidth, ',');
            double hx, hy;
            if (parts.size() != 2 || !parse_double(parts[0], hx) || !parse_double(parts[1], hy)) {
                throw ConfigError("crossplot.bandwidth must be 'scott' or 'hx,hy'");
            }
            c.bandwidth = std::make_pair(hx, hy);
        }
        c.validate();
    }

    cfg.check_all_used();
    s.qc.validate();
    s.petro.validate();
    s.kmeans.validate();
    return s;
}

inline RunSettings load_run_settings(const std::string& path) { return settings_from_config(KeyValueConfig::load(path)); }

struct ArtifactSettings {
    double washout_fraction = 0;
    double spike_fraction = 0;
    std::uint64_t seed = 1;
    synth::ArtifactOptions options;
};

struct SynthSettings {
    synth::WellSpec well;
    std::optional<ArtifactSettings> artifacts;
};

/// Well spec file: `[well]` geometry plus either `preset = four_facies` or
/// `[facies.<id>]` sections with `gr = mean,std` style entries.
inline SynthSettings synth_settings_from_config(const KeyValueConfig& cfg) {
    SynthSettings s;
    auto& w = s.well;
    w.well_name = cfg.get_or("well.name", w.well_name);
    w.top = cfg.get_double_or("well.top", w.top);
    w.base = cfg.get_double_or("well.base", w.base);
    w.sample_interval = cfg.get_double_or("well.sample_interval", w.sample_interval);
    w.seed = cfg.get_uint_or("well.seed", w.seed);
    w.null_value = cfg.get_double_or("well.null_value", w.null_value);

    const auto sections = cfg.sections_with_prefix("facies.");
    const auto preset = cfg.get("well.preset");
    if (preset && !sections.empty()) throw ConfigError("give either well.preset or [facies.*] sections, not both");
    if (sections.empty()) {
        if (preset && *preset != "four_facies") throw ConfigError("unknown well preset '" + *preset + "'");
        w.facies = synth::four_facies_preset();
        w.compaction_gradient = synth::four_facies_well().compaction_gradient;
    }
    w.compaction_gradient = cfg.get_double_or("well.compaction_gradient", w.compaction_gradient);

    for (const auto& sec : sections) {
        synth::FaciesSpec f;
        f.name = cfg.get_or(sec + ".name", sec.substr(7));
        f.mean_bed_thickness = cfg.get_double_or(sec + ".thickness", f.mean_bed_thickness);
        for (std::size_t j = 0; j < synth::kLogCount; ++j) {
            std::string key = synth::kLogMnemonics[j];
            for (auto& ch : key) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            const auto parts = cfg.get_list(sec + "." + key);
            if (parts.size() != 2 || !parse_double(parts[0], f.mean[j]) || !parse_double(parts[1], f.std[j])) {
                throw ConfigError(sec + "." + key + " must be 'mean,std'");
            }
        }
        w.facies.push_back(std::move(f));
    }

    const bool any_artifact = cfg.has("artifacts.washout_fraction") || cfg.has("artifacts.spike_fraction");
    if (any_artifact) {
        ArtifactSettings a;
        a.washout_fraction = cfg.get_double_or("artifacts.washout_fraction", 0);
        a.spike_fraction = cfg.get_double_or("artifacts.spike_fraction", 0);
        a.seed = cfg.get_uint_or("artifacts.seed", a.seed);
        a.options.bit_size = cfg.get_double_or("artifacts.bit_size", a.options.bit_size);
        a.options.washout_margin = cfg.get_double_or("artifacts.washout_margin", a.options.washout_margin);
        a.options.caliper_mnemonic = cfg.get_or("artifacts.caliper", a.options.caliper_mnemonic);
        s.artifacts = a;
    }

    cfg.check_all_used();
    w.validate();
    return s;
}

}  // namespace efacies
