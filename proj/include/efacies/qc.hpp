#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "efacies/csv.hpp"
#include "efacies/curve_set.hpp"
#include "efacies/error.hpp"

namespace efacies {

enum class StdMode { population, sample };

struct QcConfig {
    double sigma_threshold = 3.0;
    double washout_margin = 2.0;  // inches above bit size
    StdMode std_mode = StdMode::population;

    void validate() const {
        if (!(sigma_threshold > 0)) throw ConfigError("qc.sigma_threshold must be > 0");
        if (!(washout_margin >= 0)) throw ConfigError("qc.washout_margin must be >= 0");
    }
};

class ZeroVarianceError : public NumericError {
  public:
    explicit ZeroVarianceError(const std::string& mnemonic)
        : NumericError("feature '" + mnemonic + "' has zero variance"), mnemonic_(mnemonic) {}
    const std::string& mnemonic() const noexcept { return mnemonic_; }

  private:
    std::string mnemonic_;
};

struct Standardization {
    double mean = 0;
    double std = 1;
};

/// Fully observed, z-scored samples; row-major `rows() x cols()`.
struct FeatureMatrix {
    std::vector<double> values;
    std::vector<double> depth_index;
    std::vector<std::string> feature_names;
    std::vector<Standardization> standardization;

    std::size_t rows() const { return depth_index.size(); }
    std::size_t cols() const { return feature_names.size(); }
    std::span<const double> row(std::size_t i) const { return {values.data() + i * cols(), cols()}; }
    double operator()(std::size_t i, std::size_t j) const { return values[i * cols() + j]; }

    /// Standardized features as a curve set, depth-indexed like the source rows.
    CurveSet to_curve_set(const std::string& well_name = {}) const {
        std::vector<Curve> curves;
        for (std::size_t j = 0; j < cols(); ++j) {
            Curve c{feature_names[j], "z", "standardized", {}, {}};
            c.values.reserve(rows());
            for (std::size_t i = 0; i < rows(); ++i) c.values.push_back((*this)(i, j));
            c.missing.assign(rows(), false);
            curves.push_back(std::move(c));
        }
        return CurveSet(well_name, depth_index, std::move(curves));
    }
};

/// Row counts per QC step plus free-text notices.
struct QcAudit {
    struct Step {
        std::string name;
        std::size_t rows_in = 0;
        std::size_t rows_out = 0;
    };
    std::vector<Step> steps;
    std::vector<std::string> notices;

    void record(std::string name, std::size_t in, std::size_t out) {
        steps.push_back({std::move(name), in, out});
    }

    std::string to_text() const {
        std::string s;
        for (const auto& st : steps) {
            s += st.name + ": " + std::to_string(st.rows_in) + " in, " + std::to_string(st.rows_out) +
                 " out, " + std::to_string(st.rows_in - st.rows_out) + " dropped\n";
        }
        for (const auto& n : notices) s += "note: " + n + "\n";
        return s;
    }
};

namespace detail {

/// Mean and std over the unmasked entries, two-pass.
inline Standardization masked_moments(const Curve& c, StdMode mode) {
    double sum = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!c.is_missing(i)) {
            sum += c.values[i];
            ++n;
        }
    }
    const double mean = sum / static_cast<double>(n);
    double ss = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!c.is_missing(i)) ss += (c.values[i] - mean) * (c.values[i] - mean);
    }
    const double denom = mode == StdMode::sample ? static_cast<double>(n - 1) : static_cast<double>(n);
    return {mean, std::sqrt(ss / denom)};
}

}  // namespace detail

/// Drops rows whose caliper reading exceeds bit size + margin. Rows with a
/// missing caliper value are kept.
inline CurveSet remove_washout(const CurveSet& cs, const CurveSelection& sel, const QcConfig& cfg,
                               QcAudit* audit = nullptr) {
    cfg.validate();
    if (!sel.caliper_mnemonic) {
        if (audit) {
            audit->notices.push_back("no caliper curve configured; washout removal skipped");
            audit->record("washout", cs.rows(), cs.rows());
        }
        return cs;
    }
    if (!sel.bit_size) throw ConfigError("caliper curve given without bit size");
    const Curve& cal = cs.at(*sel.caliper_mnemonic);
    const double limit = *sel.bit_size + cfg.washout_margin;
    std::vector<std::size_t> keep;
    keep.reserve(cs.rows());
    for (std::size_t i = 0; i < cs.rows(); ++i) {
        if (cal.is_missing(i) || !(cal.values[i] > limit)) keep.push_back(i);
    }
    if (audit) audit->record("washout", cs.rows(), keep.size());
    if (keep.size() == cs.rows()) return cs;
    return cs.select_rows(keep);
}

/// Single-pass +-k sigma screen. Statistics for every selected curve are taken
/// from the input before any row is dropped.
inline CurveSet screen_outliers(const CurveSet& cs, const CurveSelection& sel, const QcConfig& cfg,
                                QcAudit* audit = nullptr) {
    cfg.validate();
    sel.validate(cs);
    std::vector<bool> drop(cs.rows(), false);
    for (const auto& m : sel.mnemonics) {
        const Curve& c = cs.at(m);
        if (c.size() - c.missing_count() < 2) {
            throw InputError("curve '" + m + "' has fewer than 2 observed values");
        }
        const auto st = detail::masked_moments(c, cfg.std_mode);
        if (st.std == 0) continue;
        const double lo = st.mean - cfg.sigma_threshold * st.std;
        const double hi = st.mean + cfg.sigma_threshold * st.std;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!c.is_missing(i) && (c.values[i] < lo || c.values[i] > hi)) drop[i] = true;
        }
    }
    std::vector<std::size_t> keep;
    keep.reserve(cs.rows());
    for (std::size_t i = 0; i < cs.rows(); ++i) {
        if (!drop[i]) keep.push_back(i);
    }
    if (audit) audit->record("outlier_screen", cs.rows(), keep.size());
    if (keep.size() == cs.rows()) return cs;
    return cs.select_rows(keep);
}

/// Rows where every selected curve is observed.
inline CurveSet complete_rows(const CurveSet& cs, const CurveSelection& sel, QcAudit* audit = nullptr) {
    sel.validate(cs);
    std::vector<const Curve*> cols;
    for (const auto& m : sel.mnemonics) cols.push_back(&cs.at(m));
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < cs.rows(); ++i) {
        bool ok = true;
        for (const auto* c : cols) ok = ok && !c->is_missing(i);
        if (ok) keep.push_back(i);
    }
    if (audit) audit->record("completeness", cs.rows(), keep.size());
    if (keep.size() == cs.rows()) return cs;
    return cs.select_rows(keep);
}

/// z-scores the selected curves over fully observed rows.
inline FeatureMatrix standardize(const CurveSet& cs, const CurveSelection& sel, const QcConfig& cfg) {
    const CurveSet full = complete_rows(cs, sel);
    if (full.rows() < 2) {
        throw NumericError("standardize needs at least 2 complete rows, found " +
                           std::to_string(full.rows()));
    }
    FeatureMatrix fm;
    fm.depth_index.assign(full.depth().begin(), full.depth().end());
    const std::size_t n = full.rows();
    const std::size_t d = sel.mnemonics.size();
    fm.values.resize(n * d);
    for (std::size_t j = 0; j < d; ++j) {
        const Curve& c = full.at(sel.mnemonics[j]);
        const auto st = detail::masked_moments(c, cfg.std_mode);
        if (st.std == 0 || !std::isfinite(st.std)) throw ZeroVarianceError(c.mnemonic);
        fm.feature_names.push_back(c.mnemonic);
        fm.standardization.push_back(st);
        for (std::size_t i = 0; i < n; ++i) fm.values[i * d + j] = (c.values[i] - st.mean) / st.std;
    }
    return fm;
}

struct QcResult {
    CurveSet after_washout;
    CurveSet retained;  // rows that survive every step
    FeatureMatrix features;
    QcAudit audit;
};

/// washout -> outlier screen -> completeness -> standardize.
inline QcResult run_qc(const CurveSet& cs, const CurveSelection& sel, const QcConfig& cfg) {
    QcResult r;
    r.after_washout = remove_washout(cs, sel, cfg, &r.audit);
    const CurveSet screened = screen_outliers(r.after_washout, sel, cfg, &r.audit);
    r.retained = complete_rows(screened, sel, &r.audit);
    r.features = standardize(r.retained, sel, cfg);
    return r;
}

}  // namespace efacies
