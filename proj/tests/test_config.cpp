#include <gtest/gtest.h>

#include "efacies/config.hpp"
#include "efacies/settings.hpp"

using namespace efacies;

TEST(KeyValueConfig, SectionsCommentsAndTypes) {
    const auto cfg = KeyValueConfig::parse(
        "# top comment\n"
        "; also a comment\n"
        "name = plain\n"
        "[qc]\n"
        "sigma_threshold = 2.5   # inline comment\n"
        "enabled = yes\n"
        "[kmeans]\n"
        "  seed=  17  \n"
        "[facies]\n"
        "labels = Clean sand; Muddy sand;Shale\n");
    EXPECT_EQ(cfg.get("name"), "plain");
    EXPECT_EQ(cfg.get_double("qc.sigma_threshold"), 2.5);
    EXPECT_EQ(cfg.get_bool("qc.enabled"), true);
    EXPECT_EQ(cfg.get_uint("kmeans.seed"), 17u);
    EXPECT_EQ(cfg.get_list("facies.labels", ';'), (std::vector<std::string>{"Clean sand", "Muddy sand", "Shale"}));
    EXPECT_FALSE(cfg.get("missing").has_value());
    EXPECT_EQ(cfg.get_or("missing", "x"), "x");
}

TEST(KeyValueConfig, SyntaxAndTypeErrorsAreConfigErrors) {
    EXPECT_THROW(KeyValueConfig::parse("[broken\n"), ConfigError);
    EXPECT_THROW(KeyValueConfig::parse("novalue\n"), ConfigError);
    EXPECT_THROW(KeyValueConfig::parse("a = 1\na = 2\n"), ConfigError);
    const auto cfg = KeyValueConfig::parse("x = abc\nn = -3\nb = maybe\n");
    EXPECT_THROW(cfg.get_double("x"), ConfigError);
    EXPECT_THROW(cfg.get_uint("n"), ConfigError);
    EXPECT_THROW(cfg.get_bool("b"), ConfigError);
    EXPECT_THROW(KeyValueConfig::load("/nonexistent/file.ini"), ConfigError);
}

TEST(RunSettings, DefaultsMatchDocumentedValues) {
    const auto s = settings_from_config(KeyValueConfig::parse(""));
    EXPECT_EQ(s.selection.mnemonics, (std::vector<std::string>{"GR", "RHOZ", "NPHI", "DT", "PEFZ", "AHT60"}));
    EXPECT_EQ(s.qc.sigma_threshold, 3.0);
    EXPECT_EQ(s.qc.washout_margin, 2.0);
    EXPECT_EQ(s.petro.rho_ma, 2.71);
    EXPECT_EQ(s.petro.rho_f, 1.0);
    EXPECT_EQ(s.kmeans.n_restarts, 25u);
    EXPECT_EQ(s.kmeans.max_iter, 300u);
    EXPECT_EQ(s.kmeans.tol, 1e-6);
    EXPECT_EQ(s.k_min, 2u);
    EXPECT_EQ(s.k_max, 8u);
    EXPECT_FALSE(s.k.has_value());
    ASSERT_EQ(s.crossplots.size(), 3u);
    EXPECT_EQ(s.crossplots[1].x_mnemonic, "NPHI");
    EXPECT_EQ(s.crossplots[0].grid, 128u);
    EXPECT_EQ(s.crossplots[0].envelope_mass, 0.75);
}

TEST(RunSettings, ParsesEveryGroup) {
    const auto s = settings_from_config(KeyValueConfig::parse(
        "[well]\ntop = 1400\nbase = 3000\n"
        "[features]\ncurves = GR,RHOZ\ncaliper = CALI\nbit_size = 8.5\n"
        "[qc]\nstd_mode = sample\n"
        "[petro]\nrho_ma = 2.65\nnphi_percent = yes\n"
        "[kmeans]\nk = 3\ninit = random-points\nseed = 9\n"
        "[select]\nenabled = false\n"
        "[facies]\nlabels = A;B;C\n"
        "[crossplot]\npairs = GR:RHOZ\ngrid = 64\nbandwidth = 5,0.02\nenvelope_mass = 0.5\n"));
    EXPECT_EQ(s.top, 1400.0);
    EXPECT_EQ(s.selection.caliper_mnemonic, "CALI");
    EXPECT_EQ(s.qc.std_mode, StdMode::sample);
    EXPECT_EQ(s.petro.rho_ma, 2.65);
    EXPECT_EQ(s.petro.nphi_percent, PercentMode::yes);
    EXPECT_EQ(s.k, 3u);
    EXPECT_EQ(s.kmeans.init, KmeansInit::random_points);
    EXPECT_FALSE(s.run_selection);
    EXPECT_EQ(s.labels, (std::vector<std::string>{"A", "B", "C"}));
    ASSERT_EQ(s.crossplots.size(), 1u);
    EXPECT_EQ(s.crossplots[0].grid, 64u);
    EXPECT_EQ(s.crossplots[0].bandwidth, std::make_pair(5.0, 0.02));
}

TEST(RunSettings, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(settings_from_config(KeyValueConfig::parse("[qc]\nsigma = 3\n")), ConfigError);
    EXPECT_THROW(settings_from_config(KeyValueConfig::parse("[qc]\nsigma_threshold = -1\n")), ConfigError);
    EXPECT_THROW(settings_from_config(KeyValueConfig::parse("[petro]\nrho_ma = 0.5\n")), ConfigError);
    EXPECT_THROW(settings_from_config(KeyValueConfig::parse("[kmeans]\ninit = magic\n")), ConfigError);
    EXPECT_THROW(settings_from_config(KeyValueConfig::parse("[crossplot]\npairs = GR\n")), ConfigError);
    EXPECT_THROW(settings_from_config(KeyValueConfig::parse("[crossplot]\ngrid = 4\n")), ConfigError);
}

TEST(RunSettings, KRange) {
    EXPECT_EQ(parse_k_range("2:8"), std::make_pair(std::size_t{2}, std::size_t{8}));
    EXPECT_EQ(parse_k_range("3:3"), std::make_pair(std::size_t{3}, std::size_t{3}));
    for (const char* bad : {"8:2", "0:3", "2", "a:b", "2.5:4"}) EXPECT_THROW(parse_k_range(bad), ConfigError) << bad;
}

TEST(SynthSettings, PresetAndArtifacts) {
    const auto s = synth_settings_from_config(KeyValueConfig::parse(
        "[well]\nname = W\nseed = 3\npreset = four_facies\n[artifacts]\nwashout_fraction = 0.02\nspike_fraction = 0.005\n"));
    EXPECT_EQ(s.well.well_name, "W");
    EXPECT_EQ(s.well.facies.size(), 4u);
    EXPECT_EQ(s.well.sample_count(), 11195u);
    ASSERT_TRUE(s.artifacts.has_value());
    EXPECT_EQ(s.artifacts->washout_fraction, 0.02);
    EXPECT_FALSE(synth_settings_from_config(KeyValueConfig::parse("")).artifacts.has_value());
}

TEST(SynthSettings, ExplicitFacies) {
    const auto s = synth_settings_from_config(KeyValueConfig::parse(
        "[facies.a]\nname = sand\nthickness = 3\ngr = 40,8\nrhoz = 2.3,0.04\nnphi = 0.15,0.02\ndt = 80,4\n"
        "pefz = 1.9,0.2\naht60 = 30,5\n"));
    ASSERT_EQ(s.well.facies.size(), 1u);
    EXPECT_EQ(s.well.facies[0].name, "sand");
    EXPECT_EQ(s.well.facies[0].mean[0], 40);
    EXPECT_EQ(s.well.facies[0].std[5], 5);
    EXPECT_THROW(synth_settings_from_config(KeyValueConfig::parse("[facies.a]\ngr = 40\n")), ConfigError);
    EXPECT_THROW(synth_settings_from_config(KeyValueConfig::parse("[well]\npreset = other\n")), ConfigError);
}
