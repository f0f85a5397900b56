#ifndef TAMEFLOW_TESTS_ORACLES_HPP
#define TAMEFLOW_TESTS_ORACLES_HPP

// Independent reference computations used to check the library. None of
// them call into the code under test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace oracle {

/// Iterated-cone vector field Z_k in the linear coordinates (x_1..x_k) with
/// origin v_0:  Z^k = x_k (x_k - 1),  Z^i = x_k x_i + (1 - x_k) Z_{k-1}^i(x / (1 - x_k)).
inline std::vector<double> cone_field(const std::vector<double>& x) {
    const std::size_t k = x.size();
    if (k == 0)
        return {};
    const double top = x[k - 1];
    std::vector<double> shadow(x.begin(), x.end() - 1);
    for (auto& s : shadow)
        s /= (1.0 - top);
    auto inner = cone_field(shadow);
    std::vector<double> z(k);
    for (std::size_t i = 0; i + 1 < k; ++i)
        z[i] = top * x[i] + (1.0 - top) * inner[i];
    z[k - 1] = top * (top - 1.0);
    return z;
}

inline std::vector<double> rk4(const std::function<std::vector<double>(const std::vector<double>&)>& f,
                               std::vector<double> x, double t, std::size_t steps) {
    const double h = t / static_cast<double>(steps);
    auto axpy = [](const std::vector<double>& a, double c, const std::vector<double>& b) {
        std::vector<double> r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            r[i] = a[i] + c * b[i];
        return r;
    };
    for (std::size_t s = 0; s < steps; ++s) {
        auto k1 = f(x);
        auto k2 = f(axpy(x, h / 2, k1));
        auto k3 = f(axpy(x, h / 2, k2));
        auto k4 = f(axpy(x, h, k3));
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    return x;
}

/// Barycentric (t_0..t_k) -> linear coordinates (t_1..t_k) and back.
inline std::vector<double> to_linear(const std::vector<double>& bary) { return {bary.begin() + 1, bary.end()}; }
inline std::vector<double> to_barycentric(const std::vector<double>& lin) {
    double s = 0;
    for (double x : lin)
        s += x;
    std::vector<double> b{1.0 - s};
    b.insert(b.end(), lin.begin(), lin.end());
    return b;
}

/// All nonempty subsets of each facet, as sorted string vectors.
inline std::set<std::vector<std::string>> enumerate_faces(const std::vector<std::vector<std::string>>& facets) {
    std::set<std::vector<std::string>> out;
    for (auto f : facets) {
        std::sort(f.begin(), f.end());
        for (unsigned long mask = 1; mask < (1UL << f.size()); ++mask) {
            std::vector<std::string> s;
            for (std::size_t i = 0; i < f.size(); ++i)
                if (mask & (1UL << i))
                    s.push_back(f[i]);
            out.insert(s);
        }
    }
    return out;
}

/// Rank of a small integer matrix by fraction-free Gaussian elimination in
/// long double (exact enough for 0/±1 matrices of desk size).
inline std::size_t rank(std::vector<std::vector<long double>> a) {
    std::size_t r = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && std::fabs(a[p][c]) < 1e-9L)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && std::fabs(a[i][c]) > 1e-12L) {
                long double q = a[i][c] / a[r][c];
                for (std::size_t j = c; j < cols; ++j)
                    a[i][j] -= q * a[r][j];
            }
        ++r;
    }
    return r;
}

/// Betti numbers over Q by ranks of boundary maps built directly from faces.
inline std::vector<long> betti(const std::set<std::vector<std::string>>& faces) {
    std::size_t top = 0;
    for (const auto& f : faces)
        top = std::max(top, f.size());
    std::vector<std::vector<std::vector<std::string>>> by_dim(top);
    for (const auto& f : faces)
        by_dim[f.size() - 1].push_back(f);
    std::vector<std::size_t> rk(top + 1, 0); // rk[d] = rank of boundary C_d -> C_{d-1}
    for (std::size_t d = 1; d < top; ++d) {
        std::vector<std::vector<long double>> m(by_dim[d - 1].size(), std::vector<long double>(by_dim[d].size(), 0));
        for (std::size_t j = 0; j < by_dim[d].size(); ++j)
            for (std::size_t i = 0; i < by_dim[d][j].size(); ++i) {
                auto sub = by_dim[d][j];
                sub.erase(sub.begin() + static_cast<long>(i));
                auto it = std::find(by_dim[d - 1].begin(), by_dim[d - 1].end(), sub);
                m[static_cast<std::size_t>(it - by_dim[d - 1].begin())][j] = (i % 2 ? -1 : 1);
            }
        rk[d] = rank(m);
    }
    std::vector<long> b(top);
    for (std::size_t d = 0; d < top; ++d)
        b[d] = static_cast<long>(by_dim[d].size()) - static_cast<long>(rk[d]) - static_cast<long>(rk[d + 1]);
    return b;
}

} // namespace oracle

#endif
