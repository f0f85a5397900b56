#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "tameflow/asymptotics.hpp"
#include "tameflow/random.hpp"

using namespace tameflow;

TEST(Parallelism, IdenticalAndDisplayedPair) {
    EXPECT_TRUE(parallelism_check({0.5, 0.2, 0.3}, {0.5, 0.2, 0.3}, 1.0).parallel);
    auto r = parallelism_check({0.5, 0.2, 0.3}, {0.3, 0.4, 0.3}, 2.0);
    EXPECT_TRUE(r.parallel);
    EXPECT_LT(r.level_difference, 1e-12);
    EXPECT_THROW(parallelism_check({0.5, 0.2, 0.3}, {0.3, 0.3, 0.4}, 1.0), ValidationError);
}

TEST(Parallelism, RandomPairsInFourSimplex) {
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        auto p = rng.simplex_point(5);
        auto q = rng.simplex_point(5);
        // Rescale q's lower coordinates so both share the top coordinate.
        double scale = (1 - p[4]) / (1 - q[4]);
        for (int j = 0; j < 4; ++j)
            q[static_cast<std::size_t>(j)] *= scale;
        q[4] = p[4];
        double t = static_cast<double>(static_cast<int>(rng.index(7)) - 3);
        auto r = parallelism_check(p, q, t);
        EXPECT_TRUE(r.parallel) << "t=" << t << " sine=" << r.shadow_sine;
    }
}

TEST(WpmFaces, Descriptions) {
    auto w0 = wpm_faces(2, 0);
    EXPECT_TRUE(w0.plus.zero.empty());
    EXPECT_EQ(w0.minus.zero, (std::vector<std::size_t>{1, 2}));
    auto w2 = wpm_faces(2, 2);
    EXPECT_EQ(w2.plus.zero, (std::vector<std::size_t>{0, 1}));
    EXPECT_TRUE(w2.minus.zero.empty());
    auto w1 = wpm_faces(2, 1);
    EXPECT_EQ(w1.minus.description, "{t2=0, t1>0}");
    EXPECT_EQ(w1.plus.description, "{t0=0, t1>0}");
    EXPECT_THROW(wpm_faces(2, 3), ValidationError);
}

TEST(WpmFaces, AgreeWithNumericLimits) {
    Rng rng(9);
    for (int i = 0; i < 30; ++i) {
        std::vector<double> x{rng.uniform(0.05, 1), rng.uniform(0.05, 1), 0.0};
        double s = x[0] + x[1];
        x[0] /= s;
        x[1] /= s;
        EXPECT_EQ(unstable_index(x), 1u);
        EXPECT_NEAR(simplex_flow(x, -40)[1], 1.0, 1e-6);
        std::vector<double> y{0.0, x[0], x[1]};
        EXPECT_EQ(stable_index(y), 1u);
        EXPECT_NEAR(simplex_flow(y, 40)[1], 1.0, 1e-6);
    }
    EXPECT_THROW(stable_index({0.0, 0.0}), ValidationError);
}

TEST(NormalSlice, StationaryCase) {
    auto s = normal_slice_intersection({0, 1, 0}, {0, 1, 0}, 1, 3.0);
    EXPECT_EQ(s.x, (std::vector<double>{0, 1, 0}));
    EXPECT_EQ(s.y, (std::vector<double>{0, 1, 0}));
    EXPECT_EQ(normal_slice_threshold({0, 1, 0}, {0, 1, 0}, 1), -std::numeric_limits<double>::infinity());
}

TEST(NormalSlice, TwoSimplexAtTimeEight) {
    std::vector<double> wp{0.0, 0.9, 0.1}, wm{0.1, 0.9, 0.0};
    auto s = normal_slice_intersection(wp, wm, 1, 8.0);
    auto fw = simplex_flow(wp, 8.0);
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_NEAR(s.y[i], fw[i] + wm[i] - (i == 1 ? 1.0 : 0.0), 1e-3);
    EXPECT_LT(s.residual, 1e-8);
    auto back = simplex_flow(s.x, 8.0);
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_NEAR(back[i], s.y[i], 1e-8);
}

TEST(NormalSlice, BelowThresholdRejected) {
    std::vector<double> wp{0.0, 0.5, 0.5}, wm{0.6, 0.4, 0.0};
    double th = normal_slice_threshold(wp, wm, 1);
    EXPECT_GT(th, 0.0);
    EXPECT_THROW(normal_slice_intersection(wp, wm, 1, th - 0.1), ValidationError);
    EXPECT_NO_THROW(normal_slice_intersection(wp, wm, 1, th + 0.1));
    EXPECT_THROW(normal_slice_intersection(wm, wp, 1, 5.0), ValidationError);
}

TEST(NormalSlice, GridSearchFindsOneGraphPoint) {
    std::vector<double> wp{0.0, 0.7, 0.3}, wm{0.2, 0.8, 0.0};
    const double t = 2.0;
    auto s = normal_slice_intersection(wp, wm, 1, t);
    const int n = 400;
    double best = 1e9;
    std::vector<std::vector<double>> hits;
    for (int i = 1; i < n; ++i)
        for (int j = 1; i + j < n; ++j) {
            std::vector<double> x{i / double(n), j / double(n), 1.0 - (i + j) / double(n)};
            auto fx = simplex_flow(x, t);
            double d = 0;
            for (std::size_t c = 0; c < 3; ++c)
                d = std::max(d, std::abs(fx[c] - s.y[c]));
            best = std::min(best, d);
            if (d < 4.0 / n)
                hits.push_back(x);
        }
    ASSERT_FALSE(hits.empty());
    for (const auto& h : hits)
        for (std::size_t c = 0; c < 3; ++c)
            EXPECT_NEAR(h[c], s.x[c], 0.05);
    EXPECT_LT(best, 4.0 / n);
}

TEST(AsymptoticSample, NoViolationsInThreeSimplex) {
    auto rep = asymptotic_pair_sample(3, 1000, 20.0, 42);
    EXPECT_EQ(rep.violations, 0u);
    std::size_t total = 0;
    for (const auto& [cls, c] : rep.histogram) {
        EXPECT_GE(cls.first, cls.second);
        total += c;
    }
    EXPECT_EQ(total, 1000u);
}

TEST(AsymptoticSample, IntervalClasses) {
    auto rep = asymptotic_pair_sample(1, 300, 20.0, 1);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& kv : rep.histogram)
        seen.insert(kv.first);
    std::set<std::pair<std::size_t, std::size_t>> expected{{1, 0}, {0, 0}, {1, 1}};
    EXPECT_EQ(seen, expected);
}

TEST(AsymptoticSample, DeterministicAndValidated) {
    auto a = asymptotic_pair_sample(2, 200, 25.0, 7);
    auto b = asymptotic_pair_sample(2, 200, 25.0, 7);
    EXPECT_EQ(a.histogram, b.histogram);
    EXPECT_THROW(asymptotic_pair_sample(2, 10, 5.0, 0), ValidationError);
    EXPECT_THROW(asymptotic_pair_sample(2, 0, 25.0, 0), ValidationError);
}
