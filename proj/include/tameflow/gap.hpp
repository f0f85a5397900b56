#ifndef TAMEFLOW_GAP_HPP
#define TAMEFLOW_GAP_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tameflow/errors.hpp"
#include "tameflow/random.hpp"

namespace tameflow {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Linear subspace of R^n held as an n×k matrix with orthonormal columns.
class Subspace {
public:
    Subspace() = default;

    /// Span of the columns of `spanning`, which must be linearly independent.
    /// Columns that are not already orthonormal (to 1e-10) are replaced by an
    /// orthonormal basis of their span, and `reorthonormalized()` is set.
    explicit Subspace(const Matrix& spanning, double tol = 1e-10) : n_(spanning.rows()) {
        const Eigen::Index k = spanning.cols();
        if (k == 0) {
            basis_ = Matrix(n_, 0);
            return;
        }
        if (k > n_)
            throw ValidationError("subspace: more spanning vectors than the ambient dimension");
        Matrix gram = spanning.transpose() * spanning;
        if ((gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() <= tol) {
            basis_ = spanning;
            return;
        }
        Eigen::JacobiSVD<Matrix> svd(spanning, Eigen::ComputeThinU);
        const auto& s = svd.singularValues();
        if (s(k - 1) <= tol * std::max(1.0, s(0)))
            throw ValidationError("subspace: spanning vectors are linearly dependent");
        basis_ = svd.matrixU();
        reorthonormalized_ = true;
    }

    static Subspace zero(Eigen::Index n) { return Subspace(Matrix(n, 0)); }

    /// span{e_i : i in idx}
    static Subspace coordinate(Eigen::Index n, const std::vector<Eigen::Index>& idx) {
        Matrix b = Matrix::Zero(n, static_cast<Eigen::Index>(idx.size()));
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (idx[j] < 0 || idx[j] >= n)
                throw ValidationError("subspace: coordinate index out of range");
            b(idx[j], static_cast<Eigen::Index>(j)) = 1.0;
        }
        return Subspace(b);
    }

    /// Span of an n×k Gaussian matrix drawn from rng (uniform on Gr_k).
    static Subspace random(Eigen::Index n, Eigen::Index k, Rng& rng) {
        Matrix g(n, k);
        for (Eigen::Index j = 0; j < k; ++j)
            for (Eigen::Index i = 0; i < n; ++i)
                g(i, j) = rng.normal();
        return Subspace(g);
    }

    Eigen::Index ambient_dim() const { return n_; }
    Eigen::Index dim() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }
    bool reorthonormalized() const { return reorthonormalized_; }

    Matrix projector() const { return basis_ * basis_.transpose(); }

    /// Orthonormal basis of the orthogonal complement from a full
    /// Householder QR, which keeps tiny angles accurate.
    Subspace complement() const {
        const Eigen::Index k = dim();
        if (k == 0)
            return Subspace(Matrix::Identity(n_, n_));
        Eigen::HouseholderQR<Matrix> qr(basis_);
        Matrix q = qr.householderQ() * Matrix::Identity(n_, n_);
        Subspace c;
        c.n_ = n_;
        c.basis_ = q.rightCols(n_ - k);
        return c;
    }

    /// U + W for subspaces meeting only in 0.
    Subspace sum(const Subspace& w) const {
        Matrix b(n_, dim() + w.dim());
        b << basis_, w.basis_;
        return Subspace(b);
    }

private:
    Eigen::Index n_ = 0;
    Matrix basis_;
    bool reorthonormalized_ = false;
};

inline Matrix projector(const Subspace& u) { return u.projector(); }

inline double operator_norm(const Matrix& m) {
    if (m.size() == 0)
        return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

namespace detail {

inline void same_ambient(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim())
        throw ValidationError("subspaces live in different ambient spaces");
}

} // namespace detail

/// δ(U, V) = sup over unit u ∈ U of dist(u, V) = ‖P_{V⊥} P_U‖.
inline double gap(const Subspace& u, const Subspace& v) {
    detail::same_ambient(u, v);
    if (u.dim() == 0)
        return 0.0;
    Subspace vc = v.complement();
    if (vc.dim() == 0)
        return 0.0;
    return std::min(1.0, operator_norm(vc.basis().transpose() * u.basis()));
}

struct HatGap {
    double value = 0.0;        ///< δ(U,V) + δ(V,U)
    double projector_distance = 0.0; ///< ‖P_U - P_V‖
    bool sandwich = false;     ///< ‖P_U-P_V‖ ≤ δ̂ ≤ 2‖P_U-P_V‖
};

inline HatGap hat_gap(const Subspace& u, const Subspace& v, double tol = 1e-12) {
    HatGap h;
    h.value = gap(u, v) + gap(v, u);
    h.projector_distance = operator_norm(u.projector() - v.projector());
    h.sandwich = h.projector_distance <= h.value + tol && h.value <= 2.0 * h.projector_distance + tol;
    return h;
}

/// Γ_S = {u + Su}; S is (n-k)×k in the frames (basis of U, basis of U⊥).
inline Subspace graph_subspace(const Subspace& u, const Matrix& s) {
    Subspace uc = u.complement();
    if (s.rows() != uc.dim() || s.cols() != u.dim())
        throw ValidationError("graph_subspace: slope has the wrong shape");
    return Subspace(Matrix(u.basis() + uc.basis() * s));
}

inline double graph_gap_formula(double norm_s) { return norm_s / std::sqrt(1.0 + norm_s * norm_s); }

/// |δ(Γ_S, U) - ‖S‖(1+‖S‖²)^{-1/2}|
inline double graph_gap_check(const Subspace& u, const Matrix& s) {
    return std::abs(gap(graph_subspace(u, s), u) - graph_gap_formula(operator_norm(s)));
}

struct ShadowSlope {
    Subspace shadow;       ///< S: orthogonal projection of U on V
    Subspace kernel;       ///< T = V ∩ U⊥
    Subspace sum;          ///< W = U + T
    Matrix slope;          ///< M with S = graph of M over U, frames as in graph_subspace
    double gap_uv = 0.0;   ///< δ(U, V)
    double gap_wv = 0.0;   ///< δ(W, V)
    double gap_us = 0.0;   ///< δ(U, S)
    double gap_su = 0.0;   ///< δ(S, U)
    double chain_residual = 0.0; ///< max pairwise spread of δ(W,V), δ(U,V), δ(U,S)
    double slope_residual = 0.0; ///< |δ(S,U) - ‖M‖(1+‖M‖²)^{-1/2}|
};

/// Shadow, kernel and slope of a transversal pair (dim U ≤ dim V, V ⋔ U⊥).
inline ShadowSlope shadow_slope(const Subspace& u, const Subspace& v, double tol = 1e-10) {
    detail::same_ambient(u, v);
    if (u.dim() > v.dim())
        throw ValidationError("shadow_slope: dim U must not exceed dim V");
    ShadowSlope r;
    if (u.dim() == 0) {
        r.shadow = u;
        r.kernel = v;
        r.sum = v;
        r.slope = Matrix(u.ambient_dim(), 0);
        return r;
    }
    // P_V restricted to U has full rank iff V ⋔ U⊥.
    Matrix c = v.basis().transpose() * u.basis(); // dim V × dim U
    Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Index k = u.dim(), m = v.dim();
    if (k > 0 && svd.singularValues()(k - 1) <= tol)
        throw ValidationError("shadow_slope: V is not transversal to the complement of U");
    // Left singular vectors of c span the shadow (first k) and the kernel (rest).
    r.shadow = Subspace(Matrix(v.basis() * svd.matrixU().leftCols(k)));
    r.kernel = Subspace(Matrix(v.basis() * svd.matrixU().rightCols(m - k)));
    r.sum = u.sum(r.kernel);
    Subspace uc = u.complement();
    Matrix x = u.basis().transpose() * r.shadow.basis();
    Matrix y = uc.basis().transpose() * r.shadow.basis();
    r.slope = k > 0 ? Matrix(y * x.inverse()) : Matrix(uc.dim(), 0);
    r.gap_uv = gap(u, v);
    r.gap_wv = gap(r.sum, v);
    r.gap_us = gap(u, r.shadow);
    r.gap_su = gap(r.shadow, u);
    r.chain_residual = std::max({std::abs(r.gap_wv - r.gap_uv), std::abs(r.gap_us - r.gap_uv),
                                 std::abs(r.gap_wv - r.gap_us)});
    r.slope_residual = std::abs(r.gap_su - graph_gap_formula(operator_norm(r.slope)));
    return r;
}

/// Spectral data of a symmetric operator.
struct SymOperator {
    Matrix matrix;
    Vector eigenvalues;  ///< ascending
    Matrix eigenvectors; ///< columns

    explicit SymOperator(Matrix a, double tol = 1e-12) : matrix(std::move(a)) {
        if (matrix.rows() != matrix.cols())
            throw ValidationError("operator must be square");
        if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > tol * std::max(1.0, matrix.cwiseAbs().maxCoeff()))
            throw ValidationError("operator must be symmetric");
        Eigen::SelfAdjointEigenSolver<Matrix> es(matrix);
        eigenvalues = es.eigenvalues();
        eigenvectors = es.eigenvectors();
    }

    /// Span of the eigenvectors with positive eigenvalues.
    Subspace positive_eigenspace() const {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
            if (eigenvalues(i) > 0)
                idx.push_back(i);
        Matrix b(matrix.rows(), static_cast<Eigen::Index>(idx.size()));
        for (std::size_t j = 0; j < idx.size(); ++j)
            b.col(static_cast<Eigen::Index>(j)) = eigenvectors.col(idx[j]);
        return Subspace(b);
    }

    /// m_+(A): smallest positive eigenvalue; m_-(A): smallest positive eigenvalue of -A.
    std::pair<double, double> spectral_margins() const {
        double mp = std::numeric_limits<double>::infinity(), mm = mp;
        for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
            if (eigenvalues(i) > 0)
                mp = std::min(mp, eigenvalues(i));
            else if (eigenvalues(i) < 0)
                mm = std::min(mm, -eigenvalues(i));
        }
        return {mp, mm};
    }
};

/// e^{tA} V without forming e^{tA}.
///
/// In the eigenbasis of A the flowed subspace is the column space of D C with
/// D = diag(e^{λ_i t}) and C the eigen-coordinates of V. Column operations on
/// C bring it to echelon form along rows sorted by decreasing λ_i t; each
/// column is then scaled by its pivot's factor, so only ratios e^{(λ_i-λ_p)t}
/// ≤ 1 are ever evaluated and large |t| cannot overflow.
inline Subspace flow_subspace(const SymOperator& a, const Subspace& v, double t, double tol = 1e-12) {
    const Eigen::Index n = a.matrix.rows();
    if (v.ambient_dim() != n)
        throw ValidationError("flow_subspace: dimension mismatch");
    const Eigen::Index k = v.dim();
    if (k == 0)
        return v;
    Matrix c = a.eigenvectors.transpose() * v.basis();
    std::vector<Eigen::Index> rows(static_cast<std::size_t>(n));
    std::iota(rows.begin(), rows.end(), 0);
    std::stable_sort(rows.begin(), rows.end(), [&](Eigen::Index i, Eigen::Index j) {
        return a.eigenvalues(i) * t > a.eigenvalues(j) * t;
    });
    std::vector<Eigen::Index> pivot_row(static_cast<std::size_t>(k), -1);
    Eigen::Index done = 0;
    for (Eigen::Index r : rows) {
        if (done == k)
            break;
        Eigen::Index best = done;
        for (Eigen::Index j = done + 1; j < k; ++j)
            if (std::abs(c(r, j)) > std::abs(c(r, best)))
                best = j;
        if (std::abs(c(r, best)) <= tol)
            continue;
        c.col(done).swap(c.col(best));
        for (Eigen::Index j = done + 1; j < k; ++j)
            c.col(j) -= (c(r, j) / c(r, done)) * c.col(done);
        pivot_row[static_cast<std::size_t>(done)] = r;
        ++done;
    }
    if (done < k)
        throw ValidationError("flow_subspace: lost rank during elimination");
    Matrix scaled(n, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        double lp = a.eigenvalues(pivot_row[static_cast<std::size_t>(j)]) * t;
        for (Eigen::Index i = 0; i < n; ++i)
            scaled(i, j) = c(i, j) == 0.0 ? 0.0 : c(i, j) * std::exp(a.eigenvalues(i) * t - lp);
    }
    return Subspace(Matrix(a.eigenvectors * scaled));
}

struct DecayRow {
    double t = 0.0;
    double gap = 0.0;   ///< δ(U, e^{tA} V)
    double bound = 0.0; ///< e^{-(m_+ + m_-) t} ‖M_V(U)‖
    bool holds = false;
};

/// δ(U, e^{tA}V) ≤ e^{-(m_+(A)+m_-(A))t} ‖M_V(U)‖ on a grid of times, with U
/// the positive eigenspace of A.
inline std::vector<DecayRow> decay_bound_check(const SymOperator& a, const Subspace& v,
                                               const std::vector<double>& tgrid, double tol = 1e-12) {
    for (Eigen::Index i = 0; i < a.eigenvalues.size(); ++i)
        if (a.eigenvalues(i) == 0.0)
            throw ValidationError("decay_bound_check: A must be invertible");
    Subspace u = a.positive_eigenspace();
    auto [mp, mm] = a.spectral_margins();
    double rate = (std::isfinite(mp) ? mp : 0.0) + (std::isfinite(mm) ? mm : 0.0);
    double slope_norm = operator_norm(shadow_slope(u, v).slope);
    std::vector<DecayRow> out;
    for (double t : tgrid) {
        DecayRow r;
        r.t = t;
        r.gap = gap(u, flow_subspace(a, v, t));
        r.bound = std::exp(-rate * t) * slope_norm;
        r.holds = r.gap <= r.bound + tol;
        out.push_back(r);
    }
    return out;
}

/// Graph of S over the coordinate subspace E_I: columns e_i + Σ_α s_{αi} e_α,
/// rows of S indexed by the coordinates α ∉ I in increasing order.
inline Subspace graph_over_coordinates(Eigen::Index n, const std::vector<Eigen::Index>& index_set, const Matrix& s) {
    std::vector<Eigen::Index> in = index_set, out;
    std::sort(in.begin(), in.end());
    if (std::adjacent_find(in.begin(), in.end()) != in.end())
        throw ValidationError("graph_over_coordinates: repeated index");
    for (Eigen::Index i = 0; i < n; ++i)
        if (!std::binary_search(in.begin(), in.end(), i))
            out.push_back(i);
    if (s.rows() != static_cast<Eigen::Index>(out.size()) || s.cols() != static_cast<Eigen::Index>(in.size()))
        throw ValidationError("graph_over_coordinates: S has the wrong shape");
    Matrix b = Matrix::Zero(n, s.cols());
    for (std::size_t j = 0; j < in.size(); ++j) {
        b(in[j], static_cast<Eigen::Index>(j)) = 1.0;
        for (std::size_t a = 0; a < out.size(); ++a)
            b(out[a], static_cast<Eigen::Index>(j)) = s(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j));
    }
    return Subspace(b);
}

/// Flow of A = diag(λ) on graphs over E_I: s_{αi} ↦ e^{(λ_α - λ_i)t} s_{αi}.
inline Matrix grassmann_graph_flow(const std::vector<Eigen::Index>& index_set, const Matrix& s,
                                   const std::vector<double>& lambdas, double t) {
    const auto n = static_cast<Eigen::Index>(lambdas.size());
    std::vector<Eigen::Index> in = index_set, out;
    std::sort(in.begin(), in.end());
    for (Eigen::Index i = 0; i < n; ++i)
        if (!std::binary_search(in.begin(), in.end(), i))
            out.push_back(i);
    if (s.rows() != static_cast<Eigen::Index>(out.size()) || s.cols() != static_cast<Eigen::Index>(in.size()))
        throw ValidationError("grassmann_graph_flow: S has the wrong shape");
    Matrix r(s.rows(), s.cols());
    for (std::size_t a = 0; a < out.size(); ++a)
        for (std::size_t j = 0; j < in.size(); ++j)
            r(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j)) =
                std::exp((lambdas[static_cast<std::size_t>(out[a])] - lambdas[static_cast<std::size_t>(in[j])]) * t) *
                s(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j));
    return r;
}

/// f_A(L) = tr(A P_L)
inline double trace_functional(const Matrix& a, const Subspace& l) {
    if (a.rows() != l.ambient_dim() || a.cols() != l.ambient_dim())
        throw ValidationError("trace_functional: dimension mismatch");
    return (a * l.projector()).trace();
}

/// |f_A(L) - |P_U - P_U P_L|_F² - dim L + dim U| for A = P_{U⊥}.
inline double fA_identity_check(const Subspace& u, const Subspace& l) {
    detail::same_ambient(u, l);
    Matrix pu = u.projector();
    Matrix a = Matrix::Identity(u.ambient_dim(), u.ambient_dim()) - pu;
    double lhs = trace_functional(a, l);
    double frob = (pu - pu * l.projector()).squaredNorm();
    return std::abs(lhs - frob - static_cast<double>(l.dim()) + static_cast<double>(u.dim()));
}

struct ContainingDistance {
    Subspace nearest; ///< W ⊇ U with dim W = k
    double distance = 0.0; ///< ‖P_L - P_W‖
};

/// Distance from L to the k-planes containing U, with the candidate
/// W = U ⊕ (dominant (k - dim U)-dimensional left singular subspace of the
/// part of L orthogonal to U).
inline ContainingDistance dist_to_containing(const Subspace& l, const Subspace& u, Eigen::Index k) {
    detail::same_ambient(l, u);
    if (k < u.dim() || k > u.ambient_dim())
        throw ValidationError("dist_to_containing: k out of range");
    Subspace uc = u.complement();
    const Eigen::Index extra = k - u.dim();
    Matrix w_basis(u.ambient_dim(), k);
    if (extra > 0) {
        Matrix m = uc.basis().transpose() * l.basis();
        Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
        w_basis << u.basis(), uc.basis() * svd.matrixU().leftCols(extra);
    } else {
        w_basis = u.basis();
    }
    ContainingDistance d;
    d.nearest = Subspace(w_basis);
    d.distance = operator_norm(l.projector() - d.nearest.projector());
    return d;
}

struct RatioBounds {
    double cmin = std::numeric_limits<double>::infinity();
    double cmax = 0.0;
    std::size_t used = 0; ///< samples with nonzero distance
};

struct MorseBottRatios {
    RatioBounds frobenius; ///< |P_U - P_U P_L|_F² / dist²
    RatioBounds gap;       ///< δ(U, L) / dist
};

/// Empirical constants of the two-sided comparison between |P_U - P_U P_L|²
/// and dist(L, Gr_k(E)_U)², and of δ(U, L) ≤ c dist, over a fixed sample.
inline MorseBottRatios morse_bott_ratio_check(const Subspace& u, const std::vector<Subspace>& samples,
                                              double min_distance = 1e-12) {
    MorseBottRatios r;
    Matrix pu = u.projector();
    for (const auto& l : samples) {
        double d = dist_to_containing(l, u, l.dim()).distance;
        if (d <= min_distance)
            continue;
        double frob = (pu - pu * l.projector()).squaredNorm() / (d * d);
        double g = gap(u, l) / d;
        r.frobenius.cmin = std::min(r.frobenius.cmin, frob);
        r.frobenius.cmax = std::max(r.frobenius.cmax, frob);
        r.gap.cmin = std::min(r.gap.cmin, g);
        r.gap.cmax = std::max(r.gap.cmax, g);
        ++r.frobenius.used;
        ++r.gap.used;
    }
    return r;
}

/// ν = min over points of (γ_u + γ_s) / Γ_s, where γ_u is the distance of
/// the negative part of the spectrum to 0, γ_s that of the positive part,
/// and Γ_s the largest positive eigenvalue.
inline double spectral_nu(const std::vector<std::vector<double>>& spectra) {
    if (spectra.empty())
        throw ValidationError("spectral_nu: no spectra");
    double nu = std::numeric_limits<double>::infinity();
    for (const auto& s : spectra) {
        double gu = std::numeric_limits<double>::infinity(), gs = gu, big = 0.0;
        for (double x : s) {
            if (x == 0.0)
                throw ValidationError("spectral_nu: zero eigenvalue (not hyperbolic)");
            if (x < 0)
                gu = std::min(gu, -x);
            else {
                gs = std::min(gs, x);
                big = std::max(big, x);
            }
        }
        if (!std::isfinite(gu) || !std::isfinite(gs))
            throw ValidationError("spectral_nu: spectrum needs both signs");
        nu = std::min(nu, (gu + gs) / big);
    }
    return nu;
}

/// Spectra μ_j = j - i (j ≠ i) at the stationary points p_i, 0 < i < n, of
/// the gradient flow on RP^n with λ_i = i.
inline std::vector<std::vector<double>> projective_spectra(int n) {
    std::vector<std::vector<double>> out;
    for (int i = 1; i < n; ++i) {
        std::vector<double> s;
        for (int j = 0; j <= n; ++j)
            if (j != i)
                s.push_back(static_cast<double>(j - i));
        out.push_back(s);
    }
    return out;
}

struct SivRow {
    double t = 0.0;
    double gap = 0.0;         ///< δ(span e_x, span{e_z, e_x + a e^{-2t} e_y})
    double closed_form = 0.0; ///< |b|/sqrt(1+b²), b = a e^{-2t}
    double dist = 0.0;        ///< e^{-3t}
    double ratio = 0.0;       ///< gap / dist
};

inline std::vector<SivRow> siv_model_demo(double a, const std::vector<double>& tgrid) {
    if (a == 0.0)
        throw ValidationError("siv_model_demo: a must be nonzero");
    std::vector<SivRow> rows;
    Subspace u = Subspace::coordinate(3, {0});
    for (double t : tgrid) {
        double b = a * std::exp(-2.0 * t);
        Matrix v(3, 2);
        v << 0, 1, 0, b, 1, 0;
        SivRow r;
        r.t = t;
        r.gap = gap(u, Subspace(v));
        r.closed_form = std::abs(b) / std::sqrt(1.0 + b * b);
        r.dist = std::exp(-3.0 * t);
        r.ratio = r.gap / r.dist;
        rows.push_back(r);
    }
    return rows;
}

} // namespace tameflow

#endif
