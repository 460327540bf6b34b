// Command-line front end: run, porosity, select-k, synth.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "efacies/efacies.hpp"

namespace fs = std::filesystem;
using namespace efacies;

namespace {

enum ExitCode { ok = 0, input_error = 1, config_error = 2, numeric_error = 3 };

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::input: return input_error;
        case ErrorKind::config: return config_error;
        case ErrorKind::numeric: return numeric_error;
    }
    return input_error;
}

CurveSet load_las(const std::string& path) {
    std::vector<std::string> warnings;
    auto cs = las::read_las_file(path, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return cs;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw InputError("cannot create output directory " + dir.string());
}

/// Cluster-id ordering used when no facies labelling is involved.
FaciesColumn plain_column(const ClusterModel& m, const FeatureMatrix& fm) {
    FaciesColumn fc;
    fc.k = m.k;
    fc.depth = fm.depth_index;
    fc.cluster_id = m.assignments;
    for (std::size_t c = 0; c < m.k; ++c) {
        fc.rank.push_back(c);
        fc.ordered_labels.push_back("cluster " + std::to_string(c));
    }
    for (int id : fc.cluster_id) fc.label.push_back(fc.ordered_labels[static_cast<std::size_t>(id)]);
    return fc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Electrofacies classification and porosity from wireline logs"};
    app.require_subcommand(1);

    std::string las_path, config_path, out_dir, k_range, spec_path;
    std::optional<std::size_t> k;
    std::optional<std::uint64_t> seed;

    auto* run = app.add_subcommand("run", "full pipeline: QC, porosity, clustering, facies, figures");
    run->add_option("--las", las_path, "input LAS 2.0 file")->required();
    run->add_option("--config", config_path, "run configuration file")->required();
    run->add_option("--out", out_dir, "output directory")->required();
    auto* k_opt = run->add_option("--k", k, "commit to this cluster count (skips k selection)");
    run->add_option("--k-range", k_range, "evaluate k over MIN:MAX")->excludes(k_opt);
    run->add_option("--seed", seed, "k-means base seed");

    auto* poro = app.add_subcommand("porosity", "density, neutron and average porosity only");
    poro->add_option("--las", las_path, "input LAS 2.0 file")->required();
    poro->add_option("--out", out_dir, "output directory")->required();
    poro->add_option("--config", config_path, "optional run configuration file");

    auto* sel = app.add_subcommand("select-k", "elbow and silhouette diagnostics only");
    sel->add_option("--las", las_path, "input LAS 2.0 file")->required();
    sel->add_option("--k-range", k_range, "evaluate k over MIN:MAX")->required();
    sel->add_option("--out", out_dir, "output directory")->required();
    sel->add_option("--config", config_path, "optional run configuration file");
    sel->add_option("--seed", seed, "k-means base seed");

    auto* syn = app.add_subcommand("synth", "generate a synthetic well with ground truth");
    syn->add_option("--spec", spec_path, "well spec file")->required();
    syn->add_option("--out", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return config_error;
    }

    try {
        if (run->parsed()) {
            RunSettings s = load_run_settings(config_path);
            if (k) {
                s.k = *k;
                s.run_selection = false;
            }
            if (!k_range.empty()) {
                std::tie(s.k_min, s.k_max) = parse_k_range(k_range);
                s.run_selection = true;
            }
            if (seed) s.kmeans.seed = *seed;
            const auto cs = load_las(las_path);
            const auto result = run_pipeline(cs, s);
            write_run(result, s, out_dir);
            std::cout << run_summary_text(result);
        } else if (poro->parsed()) {
            RunSettings s = config_path.empty() ? RunSettings{} : load_run_settings(config_path);
            auto cs = load_las(las_path);
            if (s.top || s.base) {
                cs = las::slice_depth(cs, s.top.value_or(cs.depth().front()), s.base.value_or(cs.depth().back()));
            }
            const auto pp = porosity_profile(cs, s.petro);
            ensure_dir(out_dir);
            write_file_atomic(fs::path(out_dir) / "porosity_depth.csv", pp.to_csv());
            write_file_atomic(fs::path(out_dir) / "porosity_depth.svg", report::porosity_svg(pp));
            std::size_t clipped = 0;
            for (bool c : pp.clipped) clipped += c;
            std::cout << "samples: " << pp.size() << ", outside [0,1]: " << clipped << "\n";
        } else if (sel->parsed()) {
            RunSettings s = config_path.empty() ? RunSettings{} : load_run_settings(config_path);
            std::tie(s.k_min, s.k_max) = parse_k_range(k_range);
            if (seed) s.kmeans.seed = *seed;
            auto cs = load_las(las_path);
            if (s.top || s.base) {
                cs = las::slice_depth(cs, s.top.value_or(cs.depth().front()), s.base.value_or(cs.depth().back()));
            }
            s.selection.validate(cs);
            const auto qc = run_qc(cs, s.selection, s.qc);
            const auto rep = select_k(qc.features, s.k_min, s.k_max, s.kmeans);
            ensure_dir(out_dir);
            const fs::path dir(out_dir);
            write_file_atomic(dir / "elbow.csv", rep.to_csv());
            write_file_atomic(dir / "elbow.svg", report::elbow_svg(rep));
            write_file_atomic(dir / "qc_audit.txt", qc.audit.to_text());
            if (rep.best_silhouette_k) {
                const auto& m = rep.model_for(*rep.best_silhouette_k);
                const auto values = silhouette_values(qc.features, m.assignments);
                const auto fc = plain_column(m, qc.features);
                write_file_atomic(dir / "silhouette.csv", silhouette_csv(values, m.assignments, fc.depth));
                write_file_atomic(dir / "silhouette.svg", report::silhouette_svg(values, fc));
            }
            std::cout << rep.to_csv();
            if (rep.knee.k) {
                std::cout << "knee_k: " << *rep.knee.k << (rep.knee.low_confidence ? " (low confidence)" : "") << "\n";
            } else {
                std::cout << "knee_k: undefined\n";
            }
            if (rep.best_silhouette_k) std::cout << "best_silhouette_k: " << *rep.best_silhouette_k << "\n";
        } else if (syn->parsed()) {
            const auto s = synth_settings_from_config(KeyValueConfig::load(spec_path));
            auto well = synth::generate_well(s.well);
            ensure_dir(out_dir);
            const fs::path dir(out_dir);
            CurveSet curves = well.curves;
            if (s.artifacts) {
                auto art = synth::inject_artifacts(well.curves, s.artifacts->washout_fraction,
                                                   s.artifacts->spike_fraction, s.artifacts->seed, s.artifacts->options);
                write_file_atomic(dir / "artifacts.csv", art.manifest_csv());
                curves = std::move(art.curves);
            }
            write_file_atomic(dir / "synthetic.las", las::write_las(curves));
            write_file_atomic(dir / "ground_truth.csv", well.truth_csv());
            std::cout << "samples: " << curves.rows() << ", facies: " << s.well.facies.size() << "\n";
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return numeric_error;
    }
    return ok;
}
