#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "efacies/csv.hpp"
#include "efacies/curve_set.hpp"
#include "efacies/error.hpp"
#include "efacies/qc.hpp"
#include "efacies/random.hpp"

namespace efacies::synth {

inline constexpr std::size_t kLogCount = 6;
inline constexpr std::array<const char*, kLogCount> kLogMnemonics{"GR", "RHOZ", "NPHI", "DT", "PEFZ", "AHT60"};
inline constexpr std::array<const char*, kLogCount> kLogUnits{"GAPI", "G/C3", "V/V", "US/F", "B/E", "OHMM"};
inline constexpr std::size_t kRhozIndex = 1;

struct FaciesSpec {
    std::string name;
    std::array<double, kLogCount> mean{};
    std::array<double, kLogCount> std{};
    double mean_bed_thickness = 5.0;  // m

    void validate() const {
        for (std::size_t j = 0; j < kLogCount; ++j) {
            if (!(std[j] > 0)) throw ConfigError("facies '" + name + "': std of " + kLogMnemonics[j] + " must be > 0");
        }
        if (!(mean_bed_thickness > 0)) throw ConfigError("facies '" + name + "': bed thickness must be > 0");
    }
};

struct WellSpec {
    std::string well_name = "SYNTH-1";
    double top = 1358.34;   // m
    double base = 3064.31;  // m
    double sample_interval = 0.1524;
    std::vector<FaciesSpec> facies;
    double compaction_gradient = 0.0;  // RHOZ increase, g/cm3 per km below top
    std::uint64_t seed = 7;
    double null_value = kDefaultNullValue;

    void validate() const {
        if (!(base > top)) throw ConfigError("well spec needs base > top");
        if (!(sample_interval >= 1e-5)) throw ConfigError("well spec needs sample_interval >= 1e-5 m");
        if (facies.empty()) throw ConfigError("well spec needs at least one facies");
        for (const auto& f : facies) f.validate();
    }

    std::size_t sample_count() const {
        return static_cast<std::size_t>(std::floor((base - top) / sample_interval + 1e-9)) + 1;
    }
};

/// Four facies from clean sandstone to shale. GR and PEFZ rise steadily with
/// clay content; shale carries the highest NPHI and DT and the lowest density
/// and resistivity. The two mixed facies differ in density/neutron/resistivity
/// rather than lying on a straight line between the end members, and the
/// within-facies spread gives a mean silhouette near 0.5 at k = 4.
inline std::vector<FaciesSpec> four_facies_preset() {
    //                       GR     RHOZ   NPHI   DT     PEFZ  AHT60
    return {
        {"clean sandstone", {40, 2.40, 0.14, 80, 1.9, 40}, {10, 0.05, 0.028, 5.5, 0.25, 7.5}, 6.0},
        {"shaly sandstone", {70, 2.25, 0.26, 98, 2.2, 15}, {10, 0.05, 0.028, 5.5, 0.25, 5.5}, 4.0},
        {"sandy shale", {95, 2.38, 0.20, 88, 3.1, 28}, {10, 0.05, 0.028, 5.5, 0.25, 6.5}, 4.0},
        {"shale", {125, 2.22, 0.34, 110, 3.4, 5}, {10, 0.05, 0.028, 5.5, 0.25, 1.7}, 7.0},
    };
}

inline WellSpec four_facies_well(std::uint64_t seed = 7) {
    WellSpec w;
    w.facies = four_facies_preset();
    w.compaction_gradient = 0.03;
    w.seed = seed;
    return w;
}

struct SyntheticWell {
    CurveSet curves;
    std::vector<int> facies;  // ground-truth facies index per depth

    /// `depth,facies_id`
    std::string truth_csv() const {
        CsvWriter w({"depth", "facies_id"});
        const auto depth = curves.depth();
        for (std::size_t i = 0; i < facies.size(); ++i) w.row({format_double(depth[i]), std::to_string(facies[i])});
        return w.str();
    }
};

/// Beds with geometric thickness; a new bed switches to a facies drawn
/// uniformly from the others. Log values are independent normals per facies.
inline SyntheticWell generate_well(const WellSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const std::size_t n = spec.sample_count();
    const std::size_t nf = spec.facies.size();

    std::vector<double> depth(n);
    // Rounded to the micrometre so written depths stay short.
    for (std::size_t i = 0; i < n; ++i) {
        depth[i] = std::round((spec.top + static_cast<double>(i) * spec.sample_interval) * 1e6) / 1e6;
    }

    SyntheticWell out;
    out.facies.resize(n);
    int current = static_cast<int>(rng.index(nf));
    std::size_t i = 0;
    while (i < n) {
        const auto& f = spec.facies[static_cast<std::size_t>(current)];
        const double mean_samples = std::max(1.0, f.mean_bed_thickness / spec.sample_interval);
        const std::uint64_t bed = rng.geometric(1.0 / mean_samples);
        for (std::uint64_t b = 0; b < bed && i < n; ++b, ++i) out.facies[i] = current;
        if (nf > 1) {
            auto next = static_cast<int>(rng.index(nf - 1));
            if (next >= current) ++next;
            current = next;
        }
    }

    std::vector<Curve> curves;
    for (std::size_t j = 0; j < kLogCount; ++j) {
        curves.push_back(Curve{kLogMnemonics[j], kLogUnits[j], "synthetic", std::vector<double>(n), {}});
    }
    for (std::size_t r = 0; r < n; ++r) {
        const auto& f = spec.facies[static_cast<std::size_t>(out.facies[r])];
        const double trend = spec.compaction_gradient * (depth[r] - spec.top) / 1000.0;
        for (std::size_t j = 0; j < kLogCount; ++j) {
            double v = rng.normal(f.mean[j], f.std[j]);
            if (j == kRhozIndex) v += trend;
            curves[j].values[r] = v;
        }
    }
    for (auto& c : curves) c.missing.assign(n, false);
    out.curves = CurveSet(spec.well_name, std::move(depth), std::move(curves), spec.null_value);
    return out;
}

enum class ArtifactKind { washout, spike };

struct Corruption {
    std::size_t row = 0;
    ArtifactKind kind = ArtifactKind::washout;
    std::string mnemonic;  // spiked curve, or the caliper for washouts
};

struct ArtifactOptions {
    std::string caliper_mnemonic = "CALI";
    double bit_size = 8.5;        // in
    double washout_margin = 2.0;  // in
    double spike_sigma_min = 6.0;
    double spike_sigma_max = 10.0;
    std::size_t washout_run_min = 5;
    std::size_t washout_run_max = 30;
};

struct ArtifactResult {
    CurveSet curves;
    std::vector<Corruption> manifest;

    std::vector<bool> corrupted_rows() const {
        std::vector<bool> m(curves.rows(), false);
        for (const auto& c : manifest) m[c.row] = true;
        return m;
    }

    /// `depth,row,kind,mnemonic`
    std::string manifest_csv() const {
        CsvWriter w({"depth", "row", "kind", "mnemonic"});
        for (const auto& c : manifest) {
            w.row({format_double(curves.depth()[c.row]), std::to_string(c.row),
                   c.kind == ArtifactKind::washout ? "washout" : "spike", c.mnemonic});
        }
        return w.str();
    }
};

/// Adds an in-gauge caliper curve, then corrupts rows: washout intervals
/// (short contiguous runs with caliper above bit + margin and degraded
/// density/neutron readings) and single-row spikes pushing one log 6-10
/// sigma from its mean. Row count is unchanged.
inline ArtifactResult inject_artifacts(const CurveSet& cs, double washout_fraction, double spike_fraction,
                                       std::uint64_t seed, const ArtifactOptions& opt = {}) {
    if (!(washout_fraction >= 0 && washout_fraction < 1) || !(spike_fraction >= 0 && spike_fraction < 1)) {
        throw ConfigError("artifact fractions must lie in [0, 1)");
    }
    ArtifactResult out;
    if (washout_fraction == 0 && spike_fraction == 0) {
        out.curves = cs;
        return out;
    }
    Rng rng(seed);
    const std::size_t n = cs.rows();

    std::vector<Curve> curves = cs.curves();
    Curve cal{opt.caliper_mnemonic, "IN", "caliper", std::vector<double>(n), std::vector<bool>(n, false)};
    for (std::size_t i = 0; i < n; ++i) {
        cal.values[i] = opt.bit_size + std::min(opt.washout_margin / 2, 0.1 + std::abs(rng.normal(0.0, 0.15)));
    }

    std::vector<bool> washed(n, false);
    const auto washout_target = static_cast<std::size_t>(std::llround(washout_fraction * static_cast<double>(n)));
    std::size_t washed_count = 0;
    while (washed_count < washout_target) {
        const std::size_t len =
            opt.washout_run_min + rng.index(opt.washout_run_max - opt.washout_run_min + 1);
        const std::size_t start = rng.index(n);
        for (std::size_t r = start; r < std::min(n, start + len) && washed_count < washout_target; ++r) {
            if (washed[r]) continue;
            washed[r] = true;
            ++washed_count;
        }
    }
    auto find_curve = [&](const char* m) -> Curve* {
        for (auto& c : curves) {
            if (iequals(c.mnemonic, m)) return &c;
        }
        return nullptr;
    };
    Curve* rhoz = find_curve("RHOZ");
    Curve* nphi = find_curve("NPHI");
    for (std::size_t r = 0; r < n; ++r) {
        if (!washed[r]) continue;
        cal.values[r] = opt.bit_size + opt.washout_margin + rng.uniform(0.5, 4.0);
        if (rhoz && !rhoz->missing[r]) rhoz->values[r] -= rng.uniform(0.05, 0.3);
        if (nphi && !nphi->missing[r]) nphi->values[r] += rng.uniform(0.02, 0.1);
        out.manifest.push_back({r, ArtifactKind::washout, opt.caliper_mnemonic});
    }

    std::vector<Standardization> stats;
    for (const auto& c : cs.curves()) {
        stats.push_back(c.size() - c.missing_count() >= 2 ? detail::masked_moments(c, StdMode::population)
                                                          : Standardization{0, 0});
    }
    const auto spike_target = static_cast<std::size_t>(std::llround(spike_fraction * static_cast<double>(n)));
    std::vector<bool> spiked(n, false);
    std::size_t spikes = 0;
    const std::size_t clean = n - washed_count;
    while (spikes < std::min(spike_target, clean)) {
        const std::size_t r = rng.index(n);
        if (washed[r] || spiked[r]) continue;
        const std::size_t j = rng.index(curves.size());
        if (curves[j].missing[r] || stats[j].std == 0) continue;
        const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        const double k = rng.uniform(opt.spike_sigma_min, opt.spike_sigma_max);
        curves[j].values[r] = stats[j].mean + sign * k * stats[j].std;
        spiked[r] = true;
        ++spikes;
        out.manifest.push_back({r, ArtifactKind::spike, curves[j].mnemonic});
    }

    curves.push_back(std::move(cal));
    std::vector<double> depth(cs.depth().begin(), cs.depth().end());
    out.curves = CurveSet(cs.well_name(), std::move(depth), std::move(curves), cs.null_value());
    return out;
}

}  // namespace efacies::synth
