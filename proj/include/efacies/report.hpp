#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "efacies/csv.hpp"
#include "efacies/curve_set.hpp"
#include "efacies/error.hpp"
#include "efacies/facies.hpp"
#include "efacies/kde.hpp"
#include "efacies/kselect.hpp"
#include "efacies/petro.hpp"
#include "efacies/silhouette.hpp"
#include "efacies/svg.hpp"

namespace efacies::report {

namespace fs = std::filesystem;

/// Everything the figure writers read. Optional parts are skipped when null.
struct ReportInputs {
    const CurveSet* curves = nullptr;  // raw logs covering every facies depth
    const PorosityProfile* porosity = nullptr;
    const FaciesColumn* facies = nullptr;
    std::vector<std::string> logs;  // tracks in the facies panel
    const KSelectionReport* selection = nullptr;
    const std::vector<double>* silhouette = nullptr;  // aligned with facies rows
    std::vector<CrossplotSpec> crossplots;
};

namespace detail {

inline std::pair<double, double> finite_range(std::span<const double> v) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double x : v) {
        if (std::isfinite(x)) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    }
    if (!(hi >= lo)) return {0, 1};
    if (hi == lo) return {lo - 0.5, hi + 0.5};
    const double pad = (hi - lo) * 0.03;
    return {lo - pad, hi + pad};
}

class Writer {
  public:
    explicit Writer(fs::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec || !fs::is_directory(dir_)) throw InputError("cannot create output directory " + dir_.string());
    }
    void put(const std::string& name, const std::string& content) {
        write_file_atomic(dir_ / name, content);
        written_.push_back(dir_ / name);
    }
    const std::vector<fs::path>& written() const { return written_; }

  private:
    fs::path dir_;
    std::vector<fs::path> written_;
};

}  // namespace detail

inline std::string porosity_svg(const PorosityProfile& pp) {
    svg::Document doc(420, 820);
    std::vector<double> phi(pp.size());
    for (std::size_t i = 0; i < pp.size(); ++i) phi[i] = pp.avg_missing(i) ? std::nan("") : pp.phi_avg[i];
    const auto [plo, phi_hi] = detail::finite_range(phi);
    const auto [dlo, dhi] = detail::finite_range(pp.depth);
    svg::LinearScale sx{plo, phi_hi, 80, 400};
    svg::LinearScale sy{dlo, dhi, 30, 770};  // depth increases downward
    svg::axes(doc, sx, sy, "Average porosity (fraction)", "Depth (m)", "depth-tick");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < pp.size(); ++i) {
        xs.push_back(std::isnan(phi[i]) ? phi[i] : sx(phi[i]));
        ys.push_back(sy(pp.depth[i]));
    }
    doc.polyline(xs, ys, "#1f5fa0", 0.8);
    return doc.str();
}

inline std::string elbow_svg(const KSelectionReport& rep) {
    svg::Document doc(520, 380);
    std::vector<double> ks(rep.k_values.begin(), rep.k_values.end());
    const auto [klo, khi] = detail::finite_range(ks);
    const auto [ilo, ihi] = detail::finite_range(rep.inertias);
    svg::LinearScale sx{klo, khi, 80, 500};
    svg::LinearScale sy{ilo, ihi, 330, 20};
    svg::axes(doc, sx, sy, "Number of clusters k", "Within-cluster inertia");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        xs.push_back(sx(ks[i]));
        ys.push_back(sy(rep.inertias[i]));
    }
    doc.polyline(xs, ys, "#1f5fa0", 1.5);
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const bool knee = rep.knee.k && *rep.knee.k == rep.k_values[i];
        doc.circle(xs[i], ys[i], knee ? 6 : 3.5, knee ? "#c03030" : "#1f5fa0");
        if (!std::isnan(rep.mean_silhouettes[i])) {
            doc.text(xs[i] + 6, ys[i] - 8, "s=" + format_sig(rep.mean_silhouettes[i], 3), "font-size=\"9\"");
        }
    }
    if (rep.knee.k) {
        doc.text(300, 40, "knee k = " + std::to_string(*rep.knee.k) + (rep.knee.low_confidence ? " (low confidence)" : ""));
    }
    return doc.str();
}

inline std::string silhouette_svg(std::span<const double> values, const FaciesColumn& fc) {
    svg::Document doc(520, 600);
    const double mean = mean_silhouette(values);
    svg::LinearScale sx{std::min(-0.2, *std::min_element(values.begin(), values.end())), 1.0, 90, 500};
    const double n = static_cast<double>(values.size());
    const double gap = std::max(1.0, n * 0.02);
    svg::LinearScale sy{0, n + gap * static_cast<double>(fc.k + 1), 20, 560};
    svg::axes(doc, sx, sy, "Silhouette coefficient", "Samples by cluster");
    double cursor = gap;
    std::vector<std::size_t> by_rank(fc.k);
    for (std::size_t c = 0; c < fc.k; ++c) by_rank[fc.rank[c]] = c;
    for (std::size_t r = 0; r < fc.k; ++r) {
        const auto c = static_cast<int>(by_rank[r]);
        std::vector<double> v;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (fc.cluster_id[i] == c) v.push_back(values[i]);
        }
        std::sort(v.begin(), v.end(), std::greater<>());
        std::string d = "M" + svg::num(sx(0)) + "," + svg::num(sy(cursor)) + " ";
        for (std::size_t i = 0; i < v.size(); ++i) {
            d += "L" + svg::num(sx(v[i])) + "," + svg::num(sy(cursor + static_cast<double>(i))) + " ";
        }
        d += "L" + svg::num(sx(0)) + "," + svg::num(sy(cursor + static_cast<double>(v.size()))) + " Z";
        doc.path(d, svg::color(r), "none", 0, "class=\"cluster\"");
        doc.text(sx(0) - 40, sy(cursor + static_cast<double>(v.size()) / 2), fc.ordered_labels[r], "font-size=\"9\"");
        cursor += static_cast<double>(v.size()) + gap;
    }
    doc.line(sx(mean), sy.r0, sx(mean), sy.r1, "#c03030", 1.2, "stroke-dasharray=\"5,3\"");
    doc.text(sx(mean) + 4, 34, "mean = " + format_sig(mean, 3));
    return doc.str();
}

struct CrossplotData {
    std::vector<double> x, y;
    std::vector<int> cluster;
    std::vector<double> depth;
    std::vector<std::optional<KdeGrid>> grids;  // per cluster id; empty when degenerate
    std::vector<double> levels;
};

inline CrossplotData crossplot_data(const CurveSet& cs, const FaciesColumn& fc, const CrossplotSpec& spec) {
    spec.validate();
    const Curve& cx = cs.at(spec.x_mnemonic);
    const Curve& cy = cs.at(spec.y_mnemonic);
    CrossplotData d;
    std::vector<std::vector<double>> px(fc.k), py(fc.k);
    for (std::size_t i = 0; i < fc.size(); ++i) {
        const auto r = cs.row_of(fc.depth[i]);
        if (!r) throw InputError("depth " + format_double(fc.depth[i]) + " missing from curve set");
        if (cx.is_missing(*r) || cy.is_missing(*r)) continue;
        d.x.push_back(cx.values[*r]);
        d.y.push_back(cy.values[*r]);
        d.cluster.push_back(fc.cluster_id[i]);
        d.depth.push_back(fc.depth[i]);
        px[static_cast<std::size_t>(fc.cluster_id[i])].push_back(cx.values[*r]);
        py[static_cast<std::size_t>(fc.cluster_id[i])].push_back(cy.values[*r]);
    }
    d.grids.resize(fc.k);
    d.levels.assign(fc.k, std::nan(""));
    for (std::size_t c = 0; c < fc.k; ++c) {
        try {
            d.grids[c] = kde2d(px[c], py[c], spec);
            d.levels[c] = d.grids[c]->level_for_mass(spec.envelope_mass);
        } catch (const NumericError&) {
            d.grids[c].reset();
        }
    }
    return d;
}

inline std::string crossplot_svg(const CrossplotData& d, const FaciesColumn& fc, const CrossplotSpec& spec) {
    svg::Document doc(560, 480);
    const auto [xlo, xhi] = detail::finite_range(d.x);
    const auto [ylo, yhi] = detail::finite_range(d.y);
    svg::LinearScale sx{xlo, xhi, 80, 420};
    svg::LinearScale sy{ylo, yhi, 430, 20};
    svg::axes(doc, sx, sy, spec.x_mnemonic, spec.y_mnemonic);
    const std::size_t stride = std::max<std::size_t>(1, d.x.size() / 5000);
    doc.open_group("class=\"points\"");
    for (std::size_t i = 0; i < d.x.size(); i += stride) {
        doc.circle(sx(d.x[i]), sy(d.y[i]), 1.6, svg::color(fc.rank[static_cast<std::size_t>(d.cluster[i])]), 0.45);
    }
    doc.close_group();
    for (std::size_t c = 0; c < fc.k; ++c) {
        if (!d.grids[c]) continue;
        std::string path;
        for (const auto& s : contour_segments(*d.grids[c], d.levels[c])) {
            path += "M" + svg::num(sx(s.x1)) + "," + svg::num(sy(s.y1)) + " L" + svg::num(sx(s.x2)) + "," +
                    svg::num(sy(s.y2)) + " ";
        }
        if (!path.empty()) doc.path(path, "none", svg::color(fc.rank[c]), 1.8, "class=\"envelope\"");
    }
    for (std::size_t r = 0; r < fc.k; ++r) {
        const double y = 30 + 16 * static_cast<double>(r);
        doc.rect(430, y - 9, 10, 10, svg::color(r));
        doc.text(444, y, fc.ordered_labels[r], "font-size=\"9\"");
    }
    return doc.str();
}

/// Facies strip, one track per log, then phi_avg; depth increases downward.
inline std::string facies_svg(const FaciesColumn& fc, const CurveSet& cs, const PorosityProfile& pp,
                              const std::vector<std::string>& logs) {
    const double track_w = 100, gap = 14, left = 70, top = 40, bottom_y = 800;
    const std::size_t ntracks = logs.size() + 2;
    svg::Document doc(left + static_cast<double>(ntracks) * (track_w + gap) + 160, bottom_y + 30);
    const auto [dlo, dhi] = detail::finite_range(fc.depth);
    svg::LinearScale sy{dlo, dhi, top, bottom_y};
    for (double t : svg::nice_ticks(dlo, dhi, 10)) {
        doc.text(left - 8, sy(t) + 4, format_sig(t, 5), "class=\"depth-tick\" text-anchor=\"end\"");
        doc.line(left - 4, sy(t), left, sy(t), "#333");
    }
    doc.text(14, (top + bottom_y) / 2, "Depth (m)",
             "text-anchor=\"middle\" transform=\"rotate(-90 14 " + svg::num((top + bottom_y) / 2) + ")\"");

    double x = left;
    auto frame = [&](const std::string& name) {
        doc.rect(x, top, track_w, bottom_y - top, "none", "stroke=\"#333\"");
        doc.text(x + track_w / 2, top - 10, name, "text-anchor=\"middle\"");
    };

    doc.open_group("class=\"track\" data-name=\"FACIES\"");
    for (std::size_t i = 0; i < fc.size(); ++i) {
        const double up = i == 0 ? fc.depth[i] : (fc.depth[i - 1] + fc.depth[i]) / 2;
        std::size_t j = i;
        while (j + 1 < fc.size() && fc.cluster_id[j + 1] == fc.cluster_id[i]) ++j;
        const double run_down = j + 1 == fc.size() ? fc.depth[j] : (fc.depth[j] + fc.depth[j + 1]) / 2;
        doc.rect(x, sy(up), track_w, std::max(0.2, sy(run_down) - sy(up)),
                 svg::color(fc.rank[static_cast<std::size_t>(fc.cluster_id[i])]));
        i = j;
    }
    frame("Facies");
    doc.close_group();
    x += track_w + gap;

    auto curve_track = [&](const std::string& name, const std::vector<double>& values) {
        doc.open_group("class=\"track\" data-name=\"" + svg::escape(name) + "\"");
        const auto [lo, hi] = detail::finite_range(values);
        svg::LinearScale sx{lo, hi, x + 2, x + track_w - 2};
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < values.size(); ++i) {
            xs.push_back(std::isfinite(values[i]) ? sx(values[i]) : std::nan(""));
            ys.push_back(sy(fc.depth[i]));
        }
        doc.polyline(xs, ys, "#1d3d6b", 0.6);
        frame(name);
        doc.text(x + 2, bottom_y + 14, format_sig(lo, 3), "font-size=\"9\"");
        doc.text(x + track_w - 2, bottom_y + 14, format_sig(hi, 3), "font-size=\"9\" text-anchor=\"end\"");
        doc.close_group();
        x += track_w + gap;
    };
    for (const auto& m : logs) {
        const Curve& c = cs.at(m);
        std::vector<double> v;
        for (double d : fc.depth) {
            const auto r = cs.row_of(d);
            v.push_back(r && !c.is_missing(*r) ? c.values[*r] : std::nan(""));
        }
        curve_track(m, v);
    }
    std::vector<double> phi;
    for (double d : fc.depth) {
        auto it = std::lower_bound(pp.depth.begin(), pp.depth.end(), d);
        const bool ok = it != pp.depth.end() && *it == d && !pp.avg_missing(static_cast<std::size_t>(it - pp.depth.begin()));
        phi.push_back(ok ? pp.phi_avg[static_cast<std::size_t>(it - pp.depth.begin())] : std::nan(""));
    }
    curve_track("PHI_AVG", phi);

    for (std::size_t r = 0; r < fc.k; ++r) {
        const double y = top + 16 * static_cast<double>(r);
        doc.rect(x, y - 9, 10, 10, svg::color(r));
        doc.text(x + 14, y, fc.ordered_labels[r], "font-size=\"9\"");
    }
    return doc.str();
}

inline std::string crossplot_stem(const CrossplotSpec& s) { return "crossplot_" + s.x_mnemonic + "_" + s.y_mnemonic; }

/// Writes each figure as CSV plus SVG into `dir` and returns the paths written.
/// Elbow and silhouette outputs appear only when a k selection was run.
inline std::vector<fs::path> emit_figures(const ReportInputs& in, const fs::path& dir) {
    if (!in.curves || !in.porosity || !in.facies) throw InputError("report needs curves, porosity and facies");
    detail::Writer out(dir);
    const auto& fc = *in.facies;

    out.put("porosity_depth.csv", in.porosity->to_csv());
    out.put("porosity_depth.svg", porosity_svg(*in.porosity));

    if (in.selection) {
        out.put("elbow.csv", in.selection->to_csv());
        out.put("elbow.svg", elbow_svg(*in.selection));
    }
    if (in.selection && in.silhouette) {
        out.put("silhouette.csv", silhouette_csv(*in.silhouette, fc.cluster_id, fc.depth));
        out.put("silhouette.svg", silhouette_svg(*in.silhouette, fc));
    }

    for (const auto& spec : in.crossplots) {
        const auto data = crossplot_data(*in.curves, fc, spec);
        const auto stem = crossplot_stem(spec);
        CsvWriter pts({"depth", spec.x_mnemonic, spec.y_mnemonic, "cluster_id"});
        for (std::size_t i = 0; i < data.x.size(); ++i) {
            pts.row({format_double(data.depth[i]), format_double(data.x[i]), format_double(data.y[i]),
                     std::to_string(data.cluster[i])});
        }
        out.put(stem + ".csv", pts.str());
        CsvWriter grid({"cluster_id", "ix", "iy", "x", "y", "density"});
        CsvWriter levels({"cluster_id", "level", "mass_fraction", "bandwidth_x", "bandwidth_y"});
        for (std::size_t c = 0; c < fc.k; ++c) {
            if (!data.grids[c]) continue;
            const auto& g = *data.grids[c];
            for (std::size_t iy = 0; iy < g.ny; ++iy) {
                for (std::size_t ix = 0; ix < g.nx; ++ix) {
                    grid.row({std::to_string(c), std::to_string(ix), std::to_string(iy), format_double(g.x(ix)),
                              format_double(g.y(iy)), format_double(g.at(ix, iy))});
                }
            }
            levels.row({std::to_string(c), format_double(data.levels[c]), format_double(spec.envelope_mass),
                        format_double(g.hx), format_double(g.hy)});
        }
        out.put(stem + "_kde.csv", grid.str());
        out.put(stem + "_kde_levels.csv", levels.str());
        out.put(stem + ".svg", crossplot_svg(data, fc, spec));
    }

    out.put("facies_column.csv", fc.to_csv());
    out.put("facies_column.svg", facies_svg(fc, *in.curves, *in.porosity, in.logs));
    return out.written();
}

}  // namespace efacies::report
