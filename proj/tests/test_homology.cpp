#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tameflow/homology.hpp"
#include "tameflow/random.hpp"

using namespace tameflow;

namespace {

std::vector<std::int64_t> diag_as_ints(const SmithForm& s) {
    std::vector<std::int64_t> out;
    for (const auto& d : s.diagonal)
        out.push_back(static_cast<std::int64_t>(d));
    return out;
}

std::vector<Complex> corpus() {
    return {Complex::from_facets({{"p"}}),
            zero_sphere(),
            Complex::simplex_boundary({"a", "b", "c"}),
            Complex::simplex_boundary({"a", "b", "c", "d"}),
            join(zero_sphere(), zero_sphere()),
            barycentric_subdivision(Complex::simplex_boundary({"a", "b", "c"})),
            Complex::simplex({"a", "b", "c"}),
            Complex::from_facets({{"a", "b"}, {"b", "c"}, {"c", "a"}, {"c", "d"}, {"d", "e"}, {"e", "c"}}),
            cone(Complex::simplex_boundary({"a", "b", "c", "d"}))};
}

} // namespace

TEST(Homology, BoundaryMatrices) {
    EXPECT_TRUE(boundary_matrices(Complex::from_facets({{"p"}})).empty());
    auto e = boundary_matrices(Complex::simplex({"a", "b"}));
    ASSERT_EQ(e.size(), 1u);
    EXPECT_EQ(e[0](0, 0), -1);
    EXPECT_EQ(e[0](1, 0), 1);
    auto c = boundary_matrices(Complex::simplex_boundary({"a", "b", "c"}));
    ASSERT_EQ(c[0].rows(), 3u);
    ASSERT_EQ(c[0].cols(), 3u);
    EXPECT_EQ(smith_normal_form(c[0]).rank, 2u);
}

TEST(Homology, BoundarySquaredIsZero) {
    for (const auto& k : corpus()) {
        auto b = boundary_matrices(k);
        for (std::size_t i = 1; i < b.size(); ++i)
            EXPECT_TRUE((b[i - 1] * b[i]).is_zero());
    }
}

TEST(Homology, SmithNormalForm) {
    auto id = smith_normal_form(IntMatrix{{1, 0}, {0, 1}});
    EXPECT_EQ(diag_as_ints(id), (std::vector<std::int64_t>{1, 1}));
    EXPECT_EQ(id.rank, 2u);
    EXPECT_EQ(diag_as_ints(smith_normal_form(IntMatrix{{2, 0}, {0, 4}})), (std::vector<std::int64_t>{2, 4}));
    EXPECT_EQ(diag_as_ints(smith_normal_form(IntMatrix{{2, 4}, {6, 8}})), (std::vector<std::int64_t>{2, 4}));
    // diag(2,3) has invariant factors (1,6)
    EXPECT_EQ(diag_as_ints(smith_normal_form(IntMatrix{{2, 0}, {0, 3}})), (std::vector<std::int64_t>{1, 6}));
    EXPECT_EQ(smith_normal_form(IntMatrix{{0, 0}, {0, 0}}).rank, 0u);
}

TEST(Homology, SmithRankMatchesOracleOnRandomMatrices) {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t r = 1 + rng.index(5), c = 1 + rng.index(5);
        IntMatrix m(r, c);
        std::vector<std::vector<long double>> a(r, std::vector<long double>(c));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                long x = static_cast<long>(rng.index(7)) - 3;
                m(i, j) = x;
                a[i][j] = x;
            }
        auto s = smith_normal_form(m);
        EXPECT_EQ(s.rank, oracle::rank(a));
        for (std::size_t i = 1; i < s.diagonal.size(); ++i)
            EXPECT_EQ(s.diagonal[i] % s.diagonal[i - 1], 0);
    }
}

TEST(Homology, PoincarePolynomials) {
    EXPECT_EQ(poincare_polynomial(Complex::simplex_boundary({"a", "b", "c", "d"})), (PolyZ{1, 0, 1}));
    EXPECT_EQ(poincare_polynomial(zero_sphere(), true), PolyZ{1});
    EXPECT_EQ(poincare_polynomial(join(zero_sphere(), zero_sphere())), (PolyZ{1, 1}));
    EXPECT_THROW(poincare_polynomial(Complex{}, true), ValidationError);
    EXPECT_TRUE(poincare_polynomial(Complex{}).is_zero());
}

TEST(Homology, BettiMatchesOracleAndSubdivision) {
    for (const auto& k : corpus()) {
        auto b = betti_numbers(k);
        std::set<std::vector<std::string>> faces(k.faces().begin(), k.faces().end());
        auto ob = oracle::betti(faces);
        ASSERT_EQ(b.size(), ob.size());
        for (std::size_t i = 0; i < b.size(); ++i)
            EXPECT_EQ(b[i], ob[i]);
        EXPECT_EQ(poincare_polynomial(barycentric_subdivision(k)), poincare_polynomial(k));
        std::int64_t alt = 0;
        for (std::size_t i = 0; i < b.size(); ++i)
            alt += (i % 2 ? -1 : 1) * b[i];
        EXPECT_EQ(alt, k.euler_characteristic());
    }
}

TEST(Homology, TorsionDiagnostic) {
    // Minimal 6-vertex triangulation of RP^2: H_1 = Z/2.
    auto rp2 = Complex::from_facets({{"1", "2", "3"}, {"1", "3", "4"}, {"1", "4", "5"}, {"1", "5", "6"},
                                     {"1", "2", "6"}, {"2", "3", "5"}, {"2", "4", "5"}, {"2", "4", "6"},
                                     {"3", "4", "6"}, {"3", "5", "6"}});
    auto h = homology(rp2);
    EXPECT_EQ(h.betti, (std::vector<std::int64_t>{1, 0, 0}));
    EXPECT_EQ(h.torsion[1], (std::vector<std::string>{"2"}));
}

TEST(Homology, PairPolynomials) {
    auto edge = Complex::simplex({"a", "b"});
    EXPECT_EQ(pair_poincare_polynomial(edge, zero_sphere("a", "b")), (PolyZ{0, 1}));
    auto s0 = zero_sphere();
    EXPECT_EQ(pair_poincare_polynomial(cone(s0), s0), (PolyZ{0, 1}));
    auto k = Complex::simplex_boundary({"a", "b", "c", "d"});
    EXPECT_EQ(pair_poincare_polynomial(k, Complex{}), poincare_polynomial(k));
    EXPECT_THROW(pair_poincare_polynomial(edge, Complex::from_facets({{"z"}})), ValidationError);
    for (const auto& l : corpus())
        EXPECT_EQ(pair_poincare_polynomial(cone(l), l), poincare_polynomial(l, true).shifted(1));
}

TEST(Polynomial, SucceqCertificates) {
    PolyZ a{4, 6, 4}, b{1, 0, 1};
    EXPECT_EQ(poly_succeq(a, a), PolyZ{});
    EXPECT_EQ(poly_succeq(a, b), (PolyZ{3, 3}));
    EXPECT_FALSE(poly_succeq(PolyZ{1, 3}, PolyZ{1, 1}).has_value());
    EXPECT_FALSE(poly_succeq(PolyZ{1}, PolyZ{2, 1}).has_value()); // Q = -1
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        PolyZ x{static_cast<std::int64_t>(rng.index(5)), static_cast<std::int64_t>(rng.index(5)),
                static_cast<std::int64_t>(rng.index(5))};
        PolyZ y{static_cast<std::int64_t>(rng.index(5)), static_cast<std::int64_t>(rng.index(5))};
        if (auto q = poly_succeq(x, y)) {
            EXPECT_EQ(x.eval(-1), y.eval(-1));
            EXPECT_GE(x.eval(1), y.eval(1));
            EXPECT_EQ(x, (y + PolyZ{1, 1} * *q));
        }
    }
}

TEST(Polynomial, Formatting) {
    EXPECT_EQ(PolyZ{}.to_string(), "0");
    EXPECT_EQ((PolyZ{3, 3, 1}).to_string(), "3+3t+t^2");
    EXPECT_EQ((PolyZ{0, -1}).to_string(), "-t");
    EXPECT_EQ((PolyZ{1, 0, 0}).degree(), 0);
}
