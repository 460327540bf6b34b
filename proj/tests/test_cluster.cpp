#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "efacies/kmeans.hpp"
#include "efacies/kselect.hpp"
#include "efacies/metrics.hpp"
#include "efacies/random.hpp"
#include "efacies/silhouette.hpp"
#include "oracles.hpp"

using namespace efacies;

namespace {

struct Data {
    std::vector<double> flat;
    std::size_t n = 0, d = 0;
    PointView view() const { return PointView(flat, n, d); }
    oracle::Points rows() const {
        oracle::Points p(n, std::vector<double>(d));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < d; ++j) p[i][j] = flat[i * d + j];
        return p;
    }
};

Data blobs(std::size_t per, const std::vector<std::pair<double, double>>& centres, double sd, std::uint64_t seed) {
    Rng rng(seed);
    Data out;
    out.d = 2;
    for (std::size_t c = 0; c < centres.size(); ++c) {
        for (std::size_t i = 0; i < per; ++i) {
            out.flat.push_back(rng.normal(centres[c].first, sd));
            out.flat.push_back(rng.normal(centres[c].second, sd));
        }
    }
    out.n = out.flat.size() / 2;
    return out;
}

KmeansConfig config(std::size_t k, std::size_t restarts = 10, std::uint64_t seed = 42) {
    KmeansConfig c;
    c.k = k;
    c.n_restarts = restarts;
    c.seed = seed;
    return c;
}

}  // namespace

TEST(Kmeans, FourPointExample) {
    const Data x{{0, 0, 0, 1, 10, 0, 10, 1}, 4, 2};
    const auto m = kmeans_fit(x.view(), config(2));
    EXPECT_DOUBLE_EQ(m.inertia, 1.0);
    std::vector<std::pair<double, double>> c{{m.centroid(0)[0], m.centroid(0)[1]}, {m.centroid(1)[0], m.centroid(1)[1]}};
    std::sort(c.begin(), c.end());
    EXPECT_EQ(c[0], std::make_pair(0.0, 0.5));
    EXPECT_EQ(c[1], std::make_pair(10.0, 0.5));
    EXPECT_EQ(m.assignments[0], m.assignments[1]);
    EXPECT_NE(m.assignments[0], m.assignments[2]);
}

TEST(Kmeans, SingleClusterIsColumnMeans) {
    const auto x = blobs(50, {{0, 0}, {5, 3}}, 1.0, 3);
    const auto m = kmeans_fit(x.view(), config(1));
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.n; ++i) {
        mx += x.flat[2 * i];
        my += x.flat[2 * i + 1];
    }
    mx /= static_cast<double>(x.n);
    my /= static_cast<double>(x.n);
    double ss = 0;
    for (std::size_t i = 0; i < x.n; ++i) {
        ss += (x.flat[2 * i] - mx) * (x.flat[2 * i] - mx) + (x.flat[2 * i + 1] - my) * (x.flat[2 * i + 1] - my);
    }
    EXPECT_NEAR(m.centroid(0)[0], mx, 1e-12);
    EXPECT_NEAR(m.centroid(0)[1], my, 1e-12);
    EXPECT_NEAR(m.inertia, ss, 1e-9 * ss);
}

TEST(Kmeans, KEqualsNGivesZeroInertia) {
    const auto x = blobs(4, {{0, 0}, {3, 3}}, 1.0, 9);
    const auto m = kmeans_fit(x.view(), config(x.n));
    EXPECT_EQ(m.inertia, 0.0);
    auto sizes = m.cluster_sizes();
    EXPECT_TRUE(std::all_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 1; }));
}

TEST(Kmeans, Errors) {
    const Data dup{{1, 1, 1, 1, 2, 2}, 3, 2};
    EXPECT_THROW(kmeans_fit(dup.view(), config(3)), NumericError);
    EXPECT_THROW(kmeans_fit(dup.view(), config(4)), NumericError);
    const Data bad{{1, NAN, 2, 2}, 2, 2};
    EXPECT_THROW(kmeans_fit(bad.view(), config(1)), NumericError);
    auto c = config(0);
    EXPECT_THROW(kmeans_fit(dup.view(), c), ConfigError);
}

TEST(Kmeans, ModelInvariants) {
    const auto x = blobs(80, {{0, 0}, {4, 0}, {2, 3}}, 1.0, 11);
    for (auto init : {KmeansInit::kmeanspp, KmeansInit::random_points}) {
        auto cfg = config(3);
        cfg.init = init;
        const auto m = kmeans_fit(x.view(), cfg);
        // Inertia matches a recomputation.
        const double re = compute_inertia(x.view(), m.centroids, m.assignments);
        EXPECT_NEAR(m.inertia, re, 1e-9 * re);
        // Non-empty clusters.
        for (auto s : m.cluster_sizes()) EXPECT_GT(s, 0u);
        // Assignment optimality with ties to the lowest id.
        for (std::size_t i = 0; i < x.n; ++i) {
            const double own = squared_distance(x.view().row(i), m.centroid(static_cast<std::size_t>(m.assignments[i])));
            for (std::size_t c = 0; c < m.k; ++c) {
                const double dc = squared_distance(x.view().row(i), m.centroid(c));
                EXPECT_LE(own, dc);
                if (dc == own) {
                    EXPECT_LE(m.assignments[i], static_cast<int>(c));
                }
            }
        }
        // Lloyd monotonicity.
        for (std::size_t t = 1; t < m.inertia_trace.size(); ++t) {
            EXPECT_LE(m.inertia_trace[t], m.inertia_trace[t - 1] * (1 + 1e-12));
        }
    }
}

TEST(Kmeans, MonotoneTraceOnEveryRestart) {
    const auto x = blobs(60, {{0, 0}, {1, 1}, {2, 0}, {0, 2}}, 0.8, 5);
    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto m = detail::lloyd(x.view(), config(4), s);
        for (std::size_t t = 1; t < m.inertia_trace.size(); ++t) {
            ASSERT_LE(m.inertia_trace[t], m.inertia_trace[t - 1] * (1 + 1e-12)) << "seed " << s << " iter " << t;
        }
    }
}

TEST(Kmeans, DeterministicAndIndependentOfOrder) {
    const auto x = blobs(100, {{0, 0}, {3, 0}, {0, 3}}, 1.2, 2);
    const auto a = kmeans_fit(x.view(), config(3, 16, 5));
    const auto b = kmeans_fit(x.view(), config(3, 16, 5));
    EXPECT_EQ(a.assignments, b.assignments);
    EXPECT_EQ(a.centroids, b.centroids);
    EXPECT_EQ(a.inertia, b.inertia);
    EXPECT_EQ(a.restart_index, b.restart_index);
    // The winner equals the best of the individually run restarts.
    double best = INFINITY;
    std::size_t arg = 0;
    for (std::size_t r = 0; r < 16; ++r) {
        const auto m = detail::lloyd(x.view(), config(3), 5 + r);
        if (m.inertia < best) {
            best = m.inertia;
            arg = r;
        }
    }
    EXPECT_EQ(a.inertia, best);
    EXPECT_EQ(a.restart_index, arg);
    EXPECT_EQ(a.seed_used, 5 + arg);
}

TEST(Kmeans, EmptyClusterRepairTakesFarthestPoint) {
    const Data x{{0, 0, 1, 0, 10, 0}, 3, 2};
    std::vector<double> centroids{0.5, 0, 100, 100};
    std::vector<int> labels{0, 0, 0};
    const auto pts = PointView(x.flat, 3, 2);
    EXPECT_TRUE(detail::repair_empty(pts, centroids, 2, labels));
    EXPECT_EQ(labels, (std::vector<int>{0, 0, 1}));
    EXPECT_EQ(centroids[2], 10);
}

TEST(Kmeans, MatchesExhaustiveOracleOnSmallInstances) {
    Rng rng(2024);
    int matched = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 5 + rng.index(5);
        const int k = 2 + static_cast<int>(rng.index(2));
        Data x{{}, n, 2};
        for (std::size_t i = 0; i < 2 * n; ++i) x.flat.push_back(rng.uniform(0, 10));
        const double best = oracle::exhaustive_min_inertia(x.rows(), k);
        const auto m = kmeans_fit(x.view(), config(static_cast<std::size_t>(k), 50, 1000 + trial));
        EXPECT_GE(m.inertia, best * (1 - 1e-9));
        matched += std::abs(m.inertia - best) <= 1e-6 * best;
    }
    EXPECT_GE(matched, 28);
}

TEST(Silhouette, OneDimensionalExample) {
    const Data x{{0, 0.1, 10, 10.1}, 4, 1};
    const std::vector<int> labels{0, 0, 1, 1};
    const auto s = silhouette_values(x.view(), labels);
    // Outer points see b = 10.05, inner points b = 9.95; a = 0.1 for all.
    const double outer = (10.05 - 0.1) / 10.05, inner = (9.95 - 0.1) / 9.95;
    EXPECT_NEAR(s[0], outer, 1e-15);
    EXPECT_NEAR(s[1], inner, 1e-15);
    EXPECT_NEAR(s[2], inner, 1e-15);
    EXPECT_NEAR(s[3], outer, 1e-15);
    EXPECT_NEAR(mean_silhouette(s), (outer + inner) / 2, 1e-15);
}

TEST(Silhouette, DegenerateConventions) {
    const Data x{{0, 1, 5, 6}, 4, 1};
    const auto s = silhouette_values(x.view(), std::vector<int>{0, 0, 0, 1});
    EXPECT_EQ(s[3], 0.0);
    const Data same{{2, 2, 2, 2}, 4, 1};
    for (double v : silhouette_values(same.view(), std::vector<int>{0, 0, 1, 1})) EXPECT_EQ(v, 0.0);
    EXPECT_THROW(silhouette_values(x.view(), std::vector<int>{0, 0, 0, 0}), NumericError);
    EXPECT_THROW(silhouette_values(x.view(), std::vector<int>{0, 0, 2, 2}), NumericError);
    EXPECT_EQ(mean_silhouette(std::vector<double>{1, 1, 1, 1}), 1.0);
}

TEST(Silhouette, MatchesNaiveOracle) {
    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 10 + rng.index(150);
        const std::size_t d = 1 + rng.index(4);
        Data x{{}, n, d};
        for (std::size_t i = 0; i < n * d; ++i) x.flat.push_back(rng.normal());
        const int k = 2 + static_cast<int>(rng.index(4));
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % static_cast<std::size_t>(k));
        const auto got = silhouette_values(x.view(), labels);
        const auto want = oracle::silhouette(x.rows(), labels);
        for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(got[i], want[i], 1e-12);
    }
}

TEST(Silhouette, LabelPermutationInvariance) {
    const auto x = blobs(40, {{0, 0}, {4, 0}, {0, 4}}, 1.0, 8);
    const auto m = kmeans_fit(x.view(), config(3));
    const std::vector<int> perm{2, 0, 1};
    std::vector<int> relabelled(m.assignments.size());
    std::vector<double> cents(m.centroids.size());
    for (std::size_t i = 0; i < relabelled.size(); ++i) relabelled[i] = perm[static_cast<std::size_t>(m.assignments[i])];
    for (std::size_t c = 0; c < 3; ++c) {
        std::copy_n(m.centroids.begin() + static_cast<std::ptrdiff_t>(2 * c), 2,
                    cents.begin() + static_cast<std::ptrdiff_t>(2 * static_cast<std::size_t>(perm[c])));
    }
    EXPECT_EQ(mean_silhouette(silhouette_values(x.view(), relabelled)),
              mean_silhouette(silhouette_values(x.view(), m.assignments)));
    EXPECT_EQ(compute_inertia(x.view(), cents, relabelled), m.inertia);
}

TEST(Silhouette, CsvGroupedAndDescending) {
    const std::vector<double> v{0.1, 0.9, 0.5, 0.7};
    const std::vector<int> l{1, 0, 1, 0};
    const std::vector<double> depth{1, 2, 3, 4};
    EXPECT_EQ(silhouette_csv(v, l, depth), "cluster_id,depth,silhouette\n0,2,0.9\n0,4,0.7\n1,3,0.5\n1,1,0.1\n");
}

TEST(Knee, SecondDifferenceExample) {
    const auto r = knee_by_second_difference(std::vector<double>{100, 20, 18, 17}, 1);
    ASSERT_TRUE(r.k.has_value());
    EXPECT_EQ(*r.k, 2u);
    EXPECT_FALSE(r.low_confidence);
}

TEST(Knee, LinearSequenceIsLowConfidenceAtKMinPlusOne) {
    const auto r = knee_by_second_difference(std::vector<double>{50, 40, 30, 20, 10}, 2);
    ASSERT_TRUE(r.k.has_value());
    EXPECT_EQ(*r.k, 3u);
    EXPECT_TRUE(r.low_confidence);
}

TEST(Knee, UndefinedForShortCurves) {
    EXPECT_FALSE(knee_by_second_difference(std::vector<double>{5}, 3).k.has_value());
    EXPECT_FALSE(knee_by_second_difference(std::vector<double>{5, 4}, 3).k.has_value());
}

TEST(SelectK, TwoBlobsPickTwo) {
    const auto x = blobs(60, {{0, 0}, {20, 20}}, 1.0, 4);
    const auto rep = select_k(x.view(), 2, 5, config(0, 5));
    ASSERT_TRUE(rep.best_silhouette_k.has_value());
    EXPECT_EQ(*rep.best_silhouette_k, 2u);
    EXPECT_EQ(rep.k_values, (std::vector<std::size_t>{2, 3, 4, 5}));
    for (std::size_t i = 1; i < rep.inertias.size(); ++i) EXPECT_LE(rep.inertias[i], rep.inertias[i - 1]);
    for (double s : rep.mean_silhouettes) {
        EXPECT_GE(s, -1);
        EXPECT_LE(s, 1);
    }
    // Mean silhouette of the k = 2 model agrees with the oracle.
    const auto want = oracle::silhouette(x.rows(), rep.model_for(2).assignments);
    EXPECT_NEAR(rep.mean_silhouettes[0], std::accumulate(want.begin(), want.end(), 0.0) / static_cast<double>(want.size()),
                1e-12);
}

TEST(SelectK, SingleEntryRangeHasUndefinedKnee) {
    const auto x = blobs(30, {{0, 0}, {5, 5}}, 1.0, 6);
    const auto rep = select_k(x.view(), 3, 3, config(0, 3));
    EXPECT_EQ(rep.k_values.size(), 1u);
    EXPECT_FALSE(rep.knee.k.has_value());
    EXPECT_TRUE(rep.knee.low_confidence);
    EXPECT_EQ(rep.to_csv().rfind("k,inertia,mean_silhouette,knee_flag\n3,", 0), 0u);
}

TEST(SelectK, KOneHasNoSilhouetteAndRangeIsChecked) {
    const auto x = blobs(20, {{0, 0}, {5, 5}}, 1.0, 6);
    const auto rep = select_k(x.view(), 1, 3, config(0, 3));
    EXPECT_TRUE(std::isnan(rep.mean_silhouettes[0]));
    EXPECT_NE(rep.to_csv().find("\n1,"), std::string::npos);
    EXPECT_THROW(select_k(x.view(), 3, 2, config(0)), ConfigError);
    EXPECT_THROW(select_k(x.view(), 2, 100, config(0)), ConfigError);
}

TEST(Ari, AgreesWithPairCountingOracle) {
    Rng rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 5 + rng.index(80);
        std::vector<int> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = static_cast<int>(rng.index(4));
            b[i] = rng.uniform() < 0.7 ? a[i] : static_cast<int>(rng.index(3));
        }
        EXPECT_NEAR(adjusted_rand_index(a, b), oracle::ari_pairs(a, b), 1e-12);
    }
    const std::vector<int> t{0, 0, 1, 1, 2, 2};
    EXPECT_EQ(adjusted_rand_index(t, std::vector<int>{5, 5, 3, 3, 9, 9}), 1.0);
}
