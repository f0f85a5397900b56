#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "tameflow/flow.hpp"
#include "tameflow/random.hpp"

using namespace tameflow;

namespace {

Orientation ordered_simplex(int n) {
    std::vector<Label> vs;
    std::map<Label, double> f;
    for (int i = 0; i < n; ++i) {
        vs.push_back("v" + std::to_string(i));
        f[vs.back()] = i;
    }
    return Orientation::from_function(Complex::simplex(vs), f);
}

double sup_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace

TEST(ScalarFlow, FixedPointsAndClosedForm) {
    EXPECT_EQ(scalar_flow(0.0, 3.0), 0.0);
    EXPECT_EQ(scalar_flow(1.0, -7.0), 1.0);
    auto rk = oracle::rk4([](const std::vector<double>& x) { return std::vector<double>{x[0] * (x[0] - 1)}; },
                          {0.5}, std::log(2.0), 2000);
    EXPECT_NEAR(scalar_flow(0.5, std::log(2.0)), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(rk[0], 1.0 / 3.0, 1e-8);
    EXPECT_THROW(scalar_flow(1.5, 0.0), ValidationError);
    EXPECT_THROW(scalar_flow(-0.1, 0.0), ValidationError);
}

TEST(ScalarFlow, MonotoneAndOverflowFree) {
    for (double a : {0.1, 0.5, 0.9})
        for (double t = -5; t < 5; t += 0.5) {
            EXPECT_GT(scalar_flow(a, t), scalar_flow(a, t + 0.5));
            EXPECT_LT(scalar_flow(a, t), scalar_flow(a + 0.05, t));
        }
    for (double t : {700.0, -700.0, 1e4, -1e4}) {
        double x = scalar_flow(0.3, t);
        EXPECT_TRUE(std::isfinite(x));
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
    }
}

TEST(SimplexFlow, VerticesAreStationary) {
    for (int i = 0; i < 4; ++i) {
        std::vector<double> e(4, 0.0);
        e[static_cast<std::size_t>(i)] = 1.0;
        EXPECT_EQ(simplex_flow(e, 2.5), e);
    }
}

TEST(SimplexFlow, MatchesTwoSimplexFormula) {
    const double x0 = 0.25, y0 = 0.25;
    for (double t : {-2.0, 0.0, 0.7, 3.0}) {
        double y = std::exp(-t) * y0 / (1 - y0 + std::exp(-t) * y0);
        double x = (1 - y) * std::exp(-t) * x0 / (1 - x0 - y0 + std::exp(-t) * x0);
        auto r = simplex_flow({0.5, x0, y0}, t);
        EXPECT_NEAR(r[1], x, 1e-14);
        EXPECT_NEAR(r[2], y, 1e-14);
        EXPECT_NEAR(r[0], 1 - x - y, 1e-14);
    }
}

TEST(SimplexFlow, MatchesConeFieldOde) {
    Rng rng(11);
    for (int i = 0; i < 5; ++i) {
        auto p = rng.simplex_point(4);
        auto rk = oracle::to_barycentric(oracle::rk4(oracle::cone_field, oracle::to_linear(p), 1.5, 3000));
        EXPECT_LT(sup_dist(simplex_flow(p, 1.5), rk), 1e-6);
    }
}

TEST(SimplexFlow, GroupLawAndSupportInvariance) {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        auto p = rng.simplex_point(4);
        double s = rng.uniform(-5, 5), t = rng.uniform(-5, 5);
        EXPECT_LT(sup_dist(simplex_flow(p, s + t), simplex_flow(simplex_flow(p, t), s)), 1e-9);
    }
    auto far = simplex_flow({0.2, 0.3, 0.5}, 40.0);
    for (double c : far)
        EXPECT_GT(c, 0.0);
    auto face = simplex_flow({0.0, 0.4, 0.6}, 2.0);
    EXPECT_EQ(face[0], 0.0);
    EXPECT_GT(face[1], 0.0);
    auto logs = simplex_flow_log({std::log(0.2), std::log(0.3), std::log(0.5)}, 900.0);
    for (double l : logs)
        EXPECT_TRUE(std::isfinite(l));
}

TEST(ComplexFlow, OrderMismatchAndGluing) {
    auto o = ordered_simplex(3);
    auto p = BarycentricPoint::make({"v0", "v1", "v2"}, {0.2, 0.3, 0.5});
    EXPECT_THROW(simplex_flow(p, {"v0", "v1"}, 1.0), ValidationError);
    auto v = BarycentricPoint::vertex("v1");
    EXPECT_EQ(complex_flow(o, v, 3.0).coords, v.coords);

    // Two triangles sharing the edge [b,c]; orientation from f.
    auto k = Complex::from_facets({{"a", "b", "c"}, {"b", "c", "d"}});
    auto ko = Orientation::from_function(k, {{"a", 0}, {"b", 1}, {"c", 2}, {"d", 3}});
    auto q = BarycentricPoint::make({"b", "c"}, {0.3, 0.7});
    auto via_k = complex_flow(ko, q, 1.3);
    auto left = Orientation::from_function(Complex::simplex({"a", "b", "c"}), {{"a", 0}, {"b", 1}, {"c", 2}});
    auto right = Orientation::from_function(Complex::simplex({"b", "c", "d"}), {{"b", 1}, {"c", 2}, {"d", 3}});
    EXPECT_EQ(complex_flow(left, q, 1.3).coords, via_k.coords);
    EXPECT_EQ(complex_flow(right, q, 1.3).coords, via_k.coords);
    EXPECT_THROW(complex_flow(ko, BarycentricPoint::make({"a", "d"}, {0.5, 0.5}), 1.0), ValidationError);
}

TEST(ComplexFlow, EdgeOfCircleTendsToLowerVertex) {
    auto circle = Complex::simplex_boundary({"v0", "v1", "v2"});
    auto o = Orientation::from_function(circle, {{"v0", 0}, {"v1", 1}, {"v2", 2}});
    auto p = BarycentricPoint::make({"v1", "v2"}, {0.4, 0.6});
    auto q = complex_flow(o, p, 2.0);
    EXPECT_EQ(q.carrier, p.carrier);
    EXPECT_NEAR(q.coord("v2"), scalar_flow(0.6, 2.0), 1e-15);
    EXPECT_NEAR(complex_flow(o, p, 40).coord("v1"), 1.0, 1e-6);
    EXPECT_EQ(flow_limits(o, p).forward, "v1");
}

TEST(Points, Validation) {
    EXPECT_THROW(BarycentricPoint::make({"a", "b"}, {0.5, 0.6}), ValidationError);
    EXPECT_THROW(BarycentricPoint::make({"a", "b"}, {1.0, 0.0}), ValidationError);
    EXPECT_THROW(BarycentricPoint::make({"a"}, {0.5, 0.5}), ValidationError);
    auto p = BarycentricPoint::make({"b", "a"}, {0.25, 0.75});
    EXPECT_EQ(p.carrier, (Face{"a", "b"}));
    EXPECT_EQ(p.coord("a"), 0.75);
}

TEST(Lyapunov, ValuesAndMonotonicity) {
    auto o = ordered_simplex(3);
    std::map<Label, double> lam{{"v0", 0}, {"v1", 1}, {"v2", 2}};
    EXPECT_EQ(lyapunov_value(BarycentricPoint::vertex("v2"), lam), 2.0);
    EXPECT_NEAR(lyapunov_value(BarycentricPoint::make({"v0", "v1", "v2"}, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1e-9), lam),
                1.0, 1e-12);
    EXPECT_TRUE(is_admissible_lyapunov(o, lam));
    EXPECT_FALSE(is_admissible_lyapunov(o, {{"v0", 2}, {"v1", 1}, {"v2", 0}}));
    EXPECT_THROW(lyapunov_value(BarycentricPoint::make({"v0", "v1"}, {0.5, 0.5}), {{"v0", 1}, {"v1", 1}}),
                 ValidationError);
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        auto c = rng.simplex_point(3);
        auto p = BarycentricPoint::make({"v0", "v1", "v2"}, c, 1e-9);
        EXPECT_LT(lyapunov_value(complex_flow(o, p, 1.0), lam), lyapunov_value(p, lam));
    }
}

TEST(Limits, MatchNumericFlow) {
    auto o = ordered_simplex(3);
    auto p = BarycentricPoint::make({"v0", "v1", "v2"}, {0.2, 0.3, 0.5});
    auto lim = flow_limits(o, p);
    EXPECT_EQ(lim.forward, "v0");
    EXPECT_EQ(lim.backward, "v2");
    EXPECT_NEAR(complex_flow(o, p, 40).coord("v0"), 1.0, 1e-6);
    EXPECT_NEAR(complex_flow(o, p, -40).coord("v2"), 1.0, 1e-6);
    auto e = BarycentricPoint::make({"v1", "v2"}, {0.5, 0.5});
    EXPECT_EQ(flow_limits(o, e).forward, "v1");
    EXPECT_EQ(flow_limits(o, e).backward, "v2");
    EXPECT_NEAR(complex_flow(o, e, 40).coord("v1"), 1.0, 1e-6);
    EXPECT_NEAR(complex_flow(o, e, -40).coord("v2"), 1.0, 1e-6);
    auto v = BarycentricPoint::vertex("v1");
    EXPECT_EQ(flow_limits(o, v).forward, "v1");
    EXPECT_EQ(flow_limits(o, v).backward, "v1");
}

TEST(Linearization, FactTwoSpectrum) {
    auto o = ordered_simplex(3);
    const double t = 0.1;
    Face tri{"v0", "v1", "v2"};
    auto l0 = vertex_linearization(o, tri, "v0", t);
    auto l1 = vertex_linearization(o, tri, "v1", t);
    auto l2 = vertex_linearization(o, tri, "v2", t);
    EXPECT_EQ(l1.rank, 1u);
    for (double e : l0.eigenvalues)
        EXPECT_NEAR(e, std::exp(-t), 1e-3);
    for (double e : l2.eigenvalues)
        EXPECT_NEAR(e, std::exp(t), 1e-3);
    EXPECT_NEAR(l1.eigenvalues[0], std::exp(-t), 1e-3);
    EXPECT_NEAR(l1.eigenvalues[1], std::exp(t), 1e-3);
    EXPECT_THROW(vertex_linearization(o, tri, "zz"), ValidationError);
}

TEST(ProductFlow, ComponentwiseAndLyapunovSum) {
    auto r = product_flow({1.0, 0.0}, {0.0, 1.0}, 2.0);
    EXPECT_EQ(r.first, (std::vector<double>{1.0, 0.0}));
    EXPECT_EQ(r.second, (std::vector<double>{0.0, 1.0}));
    auto q = product_flow({0.3, 0.7}, {0.6, 0.4}, 1.0);
    EXPECT_NEAR(q.first[1], scalar_flow(0.7, 1.0), 1e-15);
    EXPECT_NEAR(q.second[1], scalar_flow(0.4, 1.0), 1e-15);
    Rng rng(8);
    for (int i = 0; i < 50; ++i) {
        auto a = rng.simplex_point(3), b = rng.simplex_point(2);
        std::vector<double> la{0, 1, 2}, lb{0, 5};
        auto step = product_flow(a, b, 0.5);
        EXPECT_LT(product_lyapunov(step.first, la, step.second, lb), product_lyapunov(a, la, b, lb));
    }
}
