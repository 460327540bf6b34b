#include <gtest/gtest.h>

#include <cmath>

#include "efacies/las.hpp"
#include "efacies/qc.hpp"
#include "efacies/synthwell.hpp"

using namespace efacies;

TEST(Synth, DefaultWindowSampleCount) {
    const auto spec = synth::four_facies_well();
    EXPECT_EQ(spec.sample_count(), 11195u);
    const auto w = synth::generate_well(spec);
    EXPECT_EQ(w.curves.rows(), 11195u);
    EXPECT_EQ(w.facies.size(), 11195u);
    EXPECT_DOUBLE_EQ(w.curves.depth().front(), 1358.34);
    EXPECT_LE(w.curves.depth().back(), 3064.31);
    EXPECT_EQ(w.curves.curves().size(), 6u);
    for (std::size_t f = 0; f < 4; ++f) {
        EXPECT_NE(std::find(w.facies.begin(), w.facies.end(), static_cast<int>(f)), w.facies.end());
    }
}

TEST(Synth, SingleFaciesMeansObeyLawOfLargeNumbers) {
    synth::WellSpec spec;
    spec.top = 0;
    spec.base = 2000;
    spec.facies = {{"only", {60, 2.3, 0.2, 90, 2.5, 10}, {12, 0.07, 0.03, 6, 0.3, 4}, 5.0}};
    const auto w = synth::generate_well(spec);
    const double n = static_cast<double>(w.curves.rows());
    for (std::size_t j = 0; j < synth::kLogCount; ++j) {
        const auto& c = w.curves.at(synth::kLogMnemonics[j]);
        double mean = 0;
        for (double v : c.values) mean += v / n;
        EXPECT_LE(std::abs(mean - spec.facies[0].mean[j]), 3 * spec.facies[0].std[j] / std::sqrt(n))
            << synth::kLogMnemonics[j];
    }
}

TEST(Synth, DeterministicPerSeed) {
    const auto a = synth::generate_well(synth::four_facies_well(5));
    const auto b = synth::generate_well(synth::four_facies_well(5));
    const auto c = synth::generate_well(synth::four_facies_well(6));
    EXPECT_TRUE(a.curves == b.curves);
    EXPECT_EQ(a.facies, b.facies);
    EXPECT_EQ(las::write_las(a.curves), las::write_las(b.curves));
    EXPECT_EQ(a.truth_csv(), b.truth_csv());
    EXPECT_FALSE(a.curves == c.curves);
}

TEST(Synth, BedThicknessNearSpecMean) {
    synth::WellSpec spec;
    spec.top = 0;
    spec.base = 20000;
    spec.facies = {{"a", {1, 1, 1, 1, 1, 1}, {1, 1, 1, 1, 1, 1}, 3.0}, {"b", {2, 2, 2, 2, 2, 2}, {1, 1, 1, 1, 1, 1}, 3.0}};
    const auto w = synth::generate_well(spec);
    std::size_t beds = 1;
    for (std::size_t i = 1; i < w.facies.size(); ++i) beds += w.facies[i] != w.facies[i - 1];
    const double mean_thickness = (spec.base - spec.top) / static_cast<double>(beds);
    EXPECT_NEAR(mean_thickness, 3.0, 0.3);
}

TEST(Synth, CompactionRaisesDensityWithDepth) {
    synth::WellSpec spec;
    spec.top = 1000;
    spec.base = 3000;
    spec.compaction_gradient = 0.1;
    spec.facies = {{"only", {60, 2.3, 0.2, 90, 2.5, 10}, {1, 0.01, 0.01, 1, 0.1, 1}, 5.0}};
    const auto w = synth::generate_well(spec);
    const auto& rho = w.curves.at("RHOZ").values;
    const std::size_t n = rho.size();
    double top = 0, bottom = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
        top += rho[i] / 1000;
        bottom += rho[n - 1 - i] / 1000;
    }
    EXPECT_NEAR(bottom - top, 0.1 * 2.0, 0.02);
}

TEST(Synth, SpecValidation) {
    synth::WellSpec spec;
    EXPECT_THROW(spec.validate(), ConfigError);  // no facies
    spec = synth::four_facies_well();
    spec.base = spec.top;
    EXPECT_THROW(spec.validate(), ConfigError);
    spec = synth::four_facies_well();
    spec.facies[1].std[2] = 0;
    EXPECT_THROW(spec.validate(), ConfigError);
}

TEST(Artifacts, ZeroFractionsAreNoOp) {
    const auto w = synth::generate_well(synth::four_facies_well());
    const auto r = synth::inject_artifacts(w.curves, 0, 0, 1);
    EXPECT_TRUE(r.curves == w.curves);
    EXPECT_TRUE(r.manifest.empty());
    EXPECT_THROW(synth::inject_artifacts(w.curves, 1.0, 0, 1), ConfigError);
}

TEST(Artifacts, WashoutRowsAreMarkedAndRemoved) {
    synth::WellSpec spec = synth::four_facies_well();
    spec.base = spec.top + 10000 * spec.sample_interval - 1e-6;
    const auto w = synth::generate_well(spec);
    ASSERT_EQ(w.curves.rows(), 10000u);
    const auto r = synth::inject_artifacts(w.curves, 0.02, 0, 3);
    EXPECT_EQ(r.curves.rows(), w.curves.rows());
    EXPECT_EQ(r.manifest.size(), 200u);
    const auto& cal = r.curves.at("CALI");
    const auto marked = r.corrupted_rows();
    for (std::size_t i = 0; i < cal.size(); ++i) EXPECT_EQ(cal.values[i] > 10.5, marked[i]) << i;
    CurveSelection sel{{"GR", "RHOZ", "NPHI"}, "CALI", 8.5};
    const auto kept = remove_washout(r.curves, sel, QcConfig{});
    EXPECT_EQ(kept.rows(), 9800u);
}

TEST(Artifacts, SingleTenSigmaSpikeDropsExactlyThatRow) {
    // Replace the normal draws with bounded values so no clean sample reaches 3 sigma.
    synth::WellSpec spec;
    spec.top = 0;
    spec.base = 300;
    spec.facies = {{"only", {60, 2.3, 0.2, 90, 2.5, 10}, {1, 0.01, 0.01, 1, 0.1, 1}, 5.0}};
    const auto w = synth::generate_well(spec);
    std::vector<Curve> curves;
    for (std::size_t j = 0; j < w.curves.curves().size(); ++j) {
        Curve u = w.curves.curves()[j];
        for (std::size_t i = 0; i < u.size(); ++i) {
            u.values[i] = std::fmod(static_cast<double>(i) * 0.618 + 0.1 * static_cast<double>(j), 1.0);
        }
        curves.push_back(u);
    }
    const CurveSet bounded("B", std::vector<double>(w.curves.depth().begin(), w.curves.depth().end()), curves);
    synth::ArtifactOptions opt;
    opt.spike_sigma_min = 10;
    opt.spike_sigma_max = 10;
    const double frac = 0.6 / static_cast<double>(bounded.rows());
    const auto r = synth::inject_artifacts(bounded, 0, frac, 9, opt);
    ASSERT_EQ(r.manifest.size(), 1u);
    CurveSelection sel{{"GR", "RHOZ", "NPHI", "DT", "PEFZ", "AHT60"}, std::nullopt, std::nullopt};
    const auto out = screen_outliers(r.curves, sel, QcConfig{});
    ASSERT_EQ(out.rows(), bounded.rows() - 1);
    EXPECT_FALSE(out.row_of(r.curves.depth()[r.manifest[0].row]).has_value());
}

TEST(Artifacts, QcRecallAndPrecision) {
    const auto w = synth::generate_well(synth::four_facies_well());
    const auto r = synth::inject_artifacts(w.curves, 0.02, 0.005, 11);
    const auto marked = r.corrupted_rows();
    CurveSelection sel{{"GR", "RHOZ", "NPHI", "DT", "PEFZ", "AHT60"}, "CALI", 8.5};
    const auto q = run_qc(r.curves, sel, QcConfig{});
    std::size_t bad = 0, bad_removed = 0, clean = 0, clean_removed = 0;
    for (std::size_t i = 0; i < r.curves.rows(); ++i) {
        const bool removed = !q.retained.row_of(r.curves.depth()[i]).has_value();
        (marked[i] ? bad : clean)++;
        (marked[i] ? bad_removed : clean_removed) += removed;
    }
    EXPECT_GE(static_cast<double>(bad_removed), 0.95 * static_cast<double>(bad));
    EXPECT_LE(static_cast<double>(clean_removed), 0.01 * static_cast<double>(clean));
    EXPECT_EQ(r.manifest_csv().substr(0, 24), "depth,row,kind,mnemonic\n");
}
