#ifndef TAMEFLOW_HOMOLOGY_HPP
#define TAMEFLOW_HOMOLOGY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tameflow/complex.hpp"
#include "tameflow/errors.hpp"
#include "tameflow/polynomial.hpp"

namespace tameflow {

using BigInt = boost::multiprecision::cpp_int;

/// Dense integer matrix with arbitrary-precision entries.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw ValidationError("IntMatrix: ragged initializer");
            for (long x : row)
                a_.emplace_back(x);
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
        if (x.cols_ != y.rows_)
            throw ValidationError("IntMatrix: shape mismatch in product");
        IntMatrix out(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (x(i, k) == 0)
                    continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    out(i, j) += x(i, k) * y(k, j);
            }
        return out;
    }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const BigInt& x) { return x == 0; });
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BigInt> a_;
};

struct SmithForm {
    std::vector<BigInt> diagonal; ///< invariant factors d1 | d2 | ... , all positive
    std::size_t rank = 0;
};

/// Invariant factors of an integer matrix (smallest-absolute pivoting).
inline SmithForm smith_normal_form(IntMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<BigInt> diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // Pivot: nonzero entry of smallest absolute value in the trailing block.
        std::size_t pi = rows, pj = cols;
        BigInt best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m(i, j) != 0 && (pi == rows || abs(m(i, j)) < best)) {
                    best = abs(m(i, j));
                    pi = i;
                    pj = j;
                }
        if (pi == rows)
            break;
        for (std::size_t j = 0; j < cols; ++j)
            std::swap(m(t, j), m(pi, j));
        for (std::size_t i = 0; i < rows; ++i)
            std::swap(m(i, t), m(i, pj));

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m(i, t) == 0)
                    continue;
                BigInt q = m(i, t) / m(t, t);
                for (std::size_t j = t; j < cols; ++j)
                    m(i, j) -= q * m(t, j);
                if (m(i, t) != 0) {
                    for (std::size_t j = t; j < cols; ++j)
                        std::swap(m(t, j), m(i, j));
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m(t, j) == 0)
                    continue;
                BigInt q = m(t, j) / m(t, t);
                for (std::size_t i = t; i < rows; ++i)
                    m(i, j) -= q * m(i, t);
                if (m(t, j) != 0) {
                    for (std::size_t i = t; i < rows; ++i)
                        std::swap(m(i, t), m(i, j));
                    clean = false;
                }
            }
            if (!clean)
                continue;
            // Divisibility: fold a row holding a non-multiple into row t.
            for (std::size_t i = t + 1; i < rows && clean; ++i)
                for (std::size_t j = t + 1; j < cols && clean; ++j)
                    if (m(i, j) % m(t, t) != 0) {
                        for (std::size_t k = t; k < cols; ++k)
                            m(t, k) += m(i, k);
                        clean = false;
                    }
        }
        diag.push_back(abs(m(t, t)));
        ++t;
    }
    SmithForm out;
    out.rank = diag.size();
    out.diagonal = std::move(diag);
    return out;
}

/// Matrices of the simplicial boundary maps. Entry k is ∂_{k+1}: rows are
/// the k-faces, columns the (k+1)-faces, both in canonical order. Removing
/// the i-th vertex of a sorted face carries the sign (-1)^i.
inline std::vector<IntMatrix> boundary_matrices(const Complex& k) {
    std::vector<IntMatrix> out;
    for (int d = 1; d <= k.dim(); ++d) {
        auto lower = k.faces_of_dim(d - 1);
        auto upper = k.faces_of_dim(d);
        std::map<Face, std::size_t> row;
        for (std::size_t i = 0; i < lower.size(); ++i)
            row[lower[i]] = i;
        IntMatrix m(lower.size(), upper.size());
        for (std::size_t j = 0; j < upper.size(); ++j)
            for (std::size_t i = 0; i < upper[j].size(); ++i) {
                Face sub = upper[j];
                sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
                m(row.at(sub), j) = (i % 2 == 0) ? 1 : -1;
            }
        out.push_back(std::move(m));
    }
    return out;
}

struct HomologyReport {
    std::vector<std::int64_t> betti;               ///< rational Betti numbers b_0..b_dim
    std::vector<std::vector<std::string>> torsion; ///< torsion coefficients per degree
};

namespace detail {

inline HomologyReport chain_complex_homology(const std::vector<std::size_t>& ranks_of_chains,
                                             const std::vector<IntMatrix>& boundaries) {
    // boundaries[k] : C_{k+1} -> C_k
    const std::size_t top = ranks_of_chains.size();
    std::vector<SmithForm> snf;
    for (const auto& b : boundaries)
        snf.push_back(smith_normal_form(b));
    HomologyReport r;
    r.betti.assign(top, 0);
    r.torsion.assign(top, {});
    for (std::size_t k = 0; k < top; ++k) {
        std::size_t rank_out = (k >= 1 && k - 1 < snf.size()) ? snf[k - 1].rank : 0;
        std::size_t rank_in = k < snf.size() ? snf[k].rank : 0;
        r.betti[k] = static_cast<std::int64_t>(ranks_of_chains[k]) - static_cast<std::int64_t>(rank_out) -
                     static_cast<std::int64_t>(rank_in);
        if (k < snf.size())
            for (const auto& d : snf[k].diagonal)
                if (d > 1)
                    r.torsion[k].push_back(d.str());
    }
    return r;
}

} // namespace detail

/// Integer homology of K: rational Betti numbers plus torsion diagnostics.
inline HomologyReport homology(const Complex& k) {
    auto f = k.f_vector();
    return detail::chain_complex_homology(f, boundary_matrices(k));
}

inline std::vector<std::int64_t> betti_numbers(const Complex& k) { return homology(k).betti; }

/// P_K(t); with `reduced` one is subtracted in degree 0. The reduced
/// polynomial of the empty complex has no polynomial representative
/// (it would be t^{-1}) and is rejected.
inline PolyZ poincare_polynomial(const Complex& k, bool reduced = false) {
    if (reduced && k.empty())
        throw ValidationError("reduced Poincaré polynomial of the empty complex is t^-1");
    PolyZ p(betti_numbers(k));
    if (reduced)
        p -= PolyZ{1};
    return p;
}

/// Poincaré polynomial of the pair (K, L) via the quotient chain complex
/// C(K)/C(L), whose basis is the faces of K not in L.
inline PolyZ pair_poincare_polynomial(const Complex& k, const Complex& l) {
    if (!l.is_subcomplex_of(k))
        throw ValidationError("pair homology: L is not a subcomplex of K");
    const int top = k.dim();
    if (top < 0)
        return {};
    std::vector<std::vector<Face>> cells(static_cast<std::size_t>(top + 1));
    for (const auto& f : k.faces())
        if (!l.contains(f))
            cells[f.size() - 1].push_back(f);
    std::vector<std::size_t> sizes;
    for (const auto& c : cells)
        sizes.push_back(c.size());
    std::vector<IntMatrix> bd;
    for (int d = 1; d <= top; ++d) {
        const auto& lower = cells[static_cast<std::size_t>(d - 1)];
        const auto& upper = cells[static_cast<std::size_t>(d)];
        std::map<Face, std::size_t> row;
        for (std::size_t i = 0; i < lower.size(); ++i)
            row[lower[i]] = i;
        IntMatrix m(lower.size(), upper.size());
        for (std::size_t j = 0; j < upper.size(); ++j)
            for (std::size_t i = 0; i < upper[j].size(); ++i) {
                Face sub = upper[j];
                sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
                auto it = row.find(sub);
                if (it != row.end())
                    m(it->second, j) = (i % 2 == 0) ? 1 : -1;
            }
        bd.push_back(std::move(m));
    }
    return PolyZ(detail::chain_complex_homology(sizes, bd).betti);
}

} // namespace tameflow

#endif
