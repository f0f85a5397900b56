#ifndef TAMEFLOW_FLOW_HPP
#define TAMEFLOW_FLOW_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tameflow/complex.hpp"
#include "tameflow/errors.hpp"
#include "tameflow/orientation.hpp"

namespace tameflow {

/// A point of |K|: the open face `carrier` and its barycentric coordinates,
/// listed in the carrier's (sorted) vertex order.
struct BarycentricPoint {
    Face carrier;
    std::vector<double> coords;

    /// Validating constructor: coordinates must be positive and sum to one.
    static BarycentricPoint make(Face carrier, std::vector<double> coords, double tol = 1e-12) {
        if (carrier.empty())
            throw ValidationError("point: empty carrier");
        if (carrier.size() != coords.size())
            throw ValidationError("point: carrier and coordinates differ in length");
        Face sorted = make_face(carrier);
        if (sorted != carrier) {
            std::vector<std::size_t> idx(carrier.size());
            std::iota(idx.begin(), idx.end(), 0);
            std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return carrier[a] < carrier[b]; });
            std::vector<double> c;
            for (auto i : idx)
                c.push_back(coords[i]);
            coords = std::move(c);
            carrier = std::move(sorted);
        }
        double sum = 0.0;
        for (double c : coords) {
            if (!(c > 0.0))
                throw ValidationError("point: barycentric coordinates must be positive on the carrier");
            sum += c;
        }
        if (std::abs(sum - 1.0) > tol)
            throw ValidationError("point: coordinates sum to " + std::to_string(sum));
        return {std::move(carrier), std::move(coords)};
    }

    static BarycentricPoint vertex(const Label& v) { return {{v}, {1.0}}; }

    double coord(const Label& v) const {
        auto it = std::lower_bound(carrier.begin(), carrier.end(), v);
        return (it != carrier.end() && *it == v) ? coords[static_cast<std::size_t>(it - carrier.begin())] : 0.0;
    }
};

/// x(t) for ẋ = x(x-1), x(0) = a, in the overflow-free rational form.
inline double scalar_flow(double a, double t) {
    if (!(a >= 0.0 && a <= 1.0))
        throw ValidationError("scalar_flow: a must lie in [0,1]");
    if (a == 0.0 || a == 1.0)
        return a;
    if (t >= 0.0) {
        double e = std::exp(-t);
        return e * a / ((1.0 - a) + e * a);
    }
    double e = std::exp(t);
    return a / ((1.0 - a) * e + a);
}

namespace detail {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

inline double logsumexp(const double* first, const double* last) {
    double m = neg_inf;
    for (auto p = first; p != last; ++p)
        m = std::max(m, *p);
    if (m == neg_inf)
        return neg_inf;
    double s = 0.0;
    for (auto p = first; p != last; ++p)
        s += std::exp(*p - m);
    return m + std::log(s);
}

inline double logaddexp(double a, double b) {
    if (a == neg_inf)
        return b;
    if (b == neg_inf)
        return a;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

} // namespace detail

/// Canonical flow on an ordered simplex, in log coordinates.
///
/// `log_coords[i]` is the log of the barycentric coordinate of u_i, with u_0
/// the sink and the last vertex the source; -inf marks a zero coordinate.
/// The input need not be normalized. Working with logs keeps every positive
/// coordinate positive for all finite t instead of underflowing.
inline std::vector<double> simplex_flow_log(std::vector<double> log_coords, double t) {
    const std::size_t n = log_coords.size();
    if (n == 0)
        throw ValidationError("simplex_flow: empty simplex");
    if (!std::isfinite(t))
        throw ValidationError("simplex_flow: time must be finite");
    double total = detail::logsumexp(log_coords.data(), log_coords.data() + n);
    if (total == detail::neg_inf || std::isnan(total))
        throw ValidationError("simplex_flow: coordinates are all zero");
    for (auto& l : log_coords)
        l -= total;
    std::vector<double> out(n, detail::neg_inf);
    // Peel the top vertex off one level at a time.
    double offset = 0.0; // log of the product of (1 - x) factors so far
    std::size_t k = n - 1;
    while (true) {
        if (k == 0) {
            out[0] = offset;
            break;
        }
        double top = log_coords[k];
        double rest = detail::logsumexp(log_coords.data(), log_coords.data() + k);
        if (rest == detail::neg_inf) {
            out[k] = offset;
            break;
        }
        if (top == detail::neg_inf) {
            --k;
            continue;
        }
        double grow = -t + top;
        double denom = detail::logaddexp(rest, grow);
        out[k] = offset + grow - denom;
        offset += rest - denom;
        for (std::size_t i = 0; i < k; ++i)
            log_coords[i] -= rest;
        --k;
    }
    return out;
}

/// Canonical flow on an ordered simplex; `coords[i]` belongs to u_i.
inline std::vector<double> simplex_flow(const std::vector<double>& coords, double t) {
    std::vector<double> logs;
    for (double c : coords) {
        if (c < 0.0 || std::isnan(c))
            throw ValidationError("simplex_flow: negative coordinate");
        logs.push_back(c > 0.0 ? std::log(c) : detail::neg_inf);
    }
    auto r = simplex_flow_log(std::move(logs), t);
    for (auto& x : r)
        x = std::exp(x);
    return r;
}

/// Simplex flow on a point whose carrier is ordered by `order` (sink first).
inline BarycentricPoint simplex_flow(const BarycentricPoint& p, const std::vector<Label>& order, double t) {
    if (make_face(order) != p.carrier)
        throw ValidationError("simplex_flow: order does not match the carrier " + face_to_string(p.carrier));
    std::vector<double> ordered;
    for (const auto& v : order)
        ordered.push_back(p.coord(v));
    auto moved = simplex_flow(ordered, t);
    BarycentricPoint q{p.carrier, std::vector<double>(p.carrier.size())};
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto pos = std::lower_bound(q.carrier.begin(), q.carrier.end(), order[i]) - q.carrier.begin();
        q.coords[static_cast<std::size_t>(pos)] = moved[i];
    }
    return q;
}

/// Simplicial flow on K: the canonical simplex flow on the carrier of p,
/// ordered by the orientation.
inline BarycentricPoint complex_flow(const Orientation& orient, const BarycentricPoint& p, double t) {
    if (!orient.complex().contains(p.carrier))
        throw ValidationError("complex_flow: carrier " + face_to_string(p.carrier) + " is not a face");
    return simplex_flow(p, orient.order_on(p.carrier), t);
}

/// f_λ(p) = Σ λ_v p_v. λ must be injective on the carrier.
inline double lyapunov_value(const BarycentricPoint& p, const std::map<Label, double>& lambda) {
    std::vector<double> seen;
    double acc = 0.0;
    for (std::size_t i = 0; i < p.carrier.size(); ++i) {
        auto it = lambda.find(p.carrier[i]);
        if (it == lambda.end())
            throw ValidationError("lyapunov: no weight for '" + p.carrier[i] + "'");
        if (std::find(seen.begin(), seen.end(), it->second) != seen.end())
            throw ValidationError("lyapunov: weights are not injective on the carrier");
        seen.push_back(it->second);
        acc += it->second * p.coords[i];
    }
    return acc;
}

/// True when λ increases strictly along every face order (sink lowest),
/// which makes f_λ a Lyapunov function for the simplicial flow.
inline bool is_admissible_lyapunov(const Orientation& orient, const std::map<Label, double>& lambda) {
    for (const auto& [u, v] : orient.edges()) {
        auto a = lambda.find(u), b = lambda.find(v);
        if (a == lambda.end() || b == lambda.end() || !(a->second > b->second))
            return false;
    }
    return true;
}

struct FlowLimits {
    Label forward;
    Label backward;
};

/// Φ_{+∞}(p) is the sink of the carrier, Φ_{-∞}(p) its source.
inline FlowLimits flow_limits(const Orientation& orient, const BarycentricPoint& p) {
    auto order = orient.order_on(p.carrier);
    return {order.front(), order.back()};
}

struct Linearization {
    Eigen::MatrixXd jacobian;
    std::vector<double> eigenvalues; ///< real parts, ascending
    double max_imaginary = 0.0;
    std::size_t rank = 0;            ///< position ℓ of the vertex in the face order
};

/// Finite-difference Jacobian of Φ_t at the vertex v of `face`, in the affine
/// chart v + Σ s_i (u_i - v) over the other vertices of the face.
inline Linearization vertex_linearization(const Orientation& orient, const Face& face, const Label& v,
                                          double t = 0.1, double h = 1e-5) {
    auto order = orient.order_on(face);
    auto pos = std::find(order.begin(), order.end(), v);
    if (pos == order.end())
        throw ValidationError("linearization: '" + v + "' is not a vertex of " + face_to_string(face));
    const std::size_t n = order.size();
    const std::size_t iv = static_cast<std::size_t>(pos - order.begin());
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < n; ++i)
        if (i != iv)
            others.push_back(i);
    Linearization lin;
    lin.rank = iv;
    lin.jacobian = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n - 1));
    for (std::size_t c = 0; c < others.size(); ++c) {
        std::vector<double> x(n, 0.0);
        x[iv] = 1.0 - h;
        x[others[c]] = h;
        auto y = simplex_flow(x, t);
        for (std::size_t r = 0; r < others.size(); ++r)
            lin.jacobian(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = y[others[r]] / h;
    }
    if (n > 1) {
        Eigen::EigenSolver<Eigen::MatrixXd> es(lin.jacobian);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            lin.eigenvalues.push_back(es.eigenvalues()[i].real());
            lin.max_imaginary = std::max(lin.max_imaginary, std::abs(es.eigenvalues()[i].imag()));
        }
        std::sort(lin.eigenvalues.begin(), lin.eigenvalues.end());
    }
    return lin;
}

/// Product of two canonical simplex flows, coordinates sink first.
inline std::pair<std::vector<double>, std::vector<double>>
product_flow(const std::vector<double>& a, const std::vector<double>& b, double t) {
    return {simplex_flow(a, t), simplex_flow(b, t)};
}

/// (f ⊞ g)(a, b) = f(a) + g(b) for weight vectors indexed sink first.
inline double product_lyapunov(const std::vector<double>& a, const std::vector<double>& la,
                               const std::vector<double>& b, const std::vector<double>& lb) {
    if (a.size() != la.size() || b.size() != lb.size())
        throw ValidationError("product_lyapunov: weight length mismatch");
    return std::inner_product(a.begin(), a.end(), la.begin(), 0.0) +
           std::inner_product(b.begin(), b.end(), lb.begin(), 0.0);
}

} // namespace tameflow

#endif
