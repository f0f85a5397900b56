#ifndef TAMEFLOW_ASYMPTOTICS_HPP
#define TAMEFLOW_ASYMPTOTICS_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tameflow/errors.hpp"
#include "tameflow/flow.hpp"
#include "tameflow/random.hpp"

// Points of the standard simplex Δ_m are coordinate vectors (t_0, ..., t_m)
// with e_0 the sink and e_m the source of the canonical flow.

namespace tameflow {

namespace detail {

inline double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

/// sin of the angle between two vectors; 0 if either is (numerically) zero.
inline double relative_sine(const std::vector<double>& a, const std::vector<double>& b) {
    double na = norm2(a), nb = norm2(b);
    if (na < 1e-300 || nb < 1e-300)
        return 0.0;
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        dot += (a[i] / na) * (b[i] / nb);
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] / na - dot * b[i] / nb;
    return norm2(r);
}

inline std::vector<double> minus(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        d[i] = a[i] - b[i];
    return d;
}

} // namespace detail

/// Radial projection from the source e_m onto the opposite face.
inline std::vector<double> project_from_source(const std::vector<double>& x) {
    const std::size_t m = x.size() - 1;
    double rest = 1.0 - x[m];
    if (!(rest > 0.0))
        throw ValidationError("projection from the source is undefined at the source");
    std::vector<double> s(x.size(), 0.0);
    for (std::size_t i = 0; i < m; ++i)
        s[i] = x[i] / rest;
    return s;
}

struct ParallelismReport {
    bool parallel = false;
    double level_difference = 0.0; ///< |t_m(Φp) - t_m(Φq)|
    double shadow_sine = 0.0;      ///< sine between Φp-Φq and P_m(Φp)-P_m(Φq)
    double initial_sine = 0.0;     ///< sine between Φp-Φq and p-q (diagnostic only)
};

/// Points on a common level t_m = c stay on a common level, and the image
/// chord stays parallel to the chord of the projections from the source.
inline ParallelismReport parallelism_check(const std::vector<double>& p, const std::vector<double>& q, double t,
                                           double level_tol = 1e-9, double sine_tol = 1e-7) {
    if (p.size() != q.size() || p.size() < 2)
        throw ValidationError("parallelism_check: points must lie in the same simplex of dimension >= 1");
    if (std::abs(p.back() - q.back()) > 1e-12)
        throw ValidationError("parallelism_check: top coordinates differ");
    auto fp = simplex_flow(p, t), fq = simplex_flow(q, t);
    ParallelismReport r;
    r.level_difference = std::abs(fp.back() - fq.back());
    auto chord = detail::minus(fp, fq);
    r.shadow_sine = detail::relative_sine(chord, detail::minus(project_from_source(fp), project_from_source(fq)));
    r.initial_sine = detail::relative_sine(chord, detail::minus(p, q));
    r.parallel = r.level_difference < level_tol && r.shadow_sine < sine_tol;
    return r;
}

struct CoordinateFace {
    std::vector<std::size_t> zero;  ///< indices forced to vanish
    std::size_t positive = 0;       ///< index required to be positive
    std::vector<std::size_t> free;  ///< remaining indices, any value >= 0
    std::string description;
};

struct WpmFaces {
    CoordinateFace plus;  ///< stable variety W⁺_k: forward limit e_k
    CoordinateFace minus; ///< unstable variety W⁻_k: backward limit e_k
};

/// W⁺_k = {t_i = 0 for i < k, t_k > 0} and W⁻_k = {t_j = 0 for j > k, t_k > 0}.
inline WpmFaces wpm_faces(std::size_t m, std::size_t k) {
    if (k > m)
        throw ValidationError("wpm_faces: index out of range");
    auto describe = [k](const CoordinateFace& f) {
        std::string s = "{";
        for (auto i : f.zero)
            s += "t" + std::to_string(i) + "=0, ";
        return s + "t" + std::to_string(k) + ">0}";
    };
    WpmFaces w;
    w.plus.positive = w.minus.positive = k;
    for (std::size_t i = 0; i <= m; ++i) {
        if (i < k) {
            w.plus.zero.push_back(i);
            w.minus.free.push_back(i);
        } else if (i > k) {
            w.plus.free.push_back(i);
            w.minus.zero.push_back(i);
        }
    }
    w.plus.description = describe(w.plus);
    w.minus.description = describe(w.minus);
    return w;
}

/// Index of the stable variety containing x: the smallest index of its support.
inline std::size_t stable_index(const std::vector<double>& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > 0.0)
            return i;
    throw ValidationError("stable_index: zero vector");
}

/// Index of the unstable variety containing x: the largest index of its support.
inline std::size_t unstable_index(const std::vector<double>& x) {
    for (std::size_t i = x.size(); i-- > 0;)
        if (x[i] > 0.0)
            return i;
    throw ValidationError("unstable_index: zero vector");
}

struct SliceIntersection {
    std::vector<double> x;   ///< Φ_{-t}(y)
    std::vector<double> y;   ///< w₊(t) + w₋ - e_k
    double residual = 0.0;   ///< ‖Φ_t(x) - y‖∞
};

namespace detail {

inline std::vector<double> slice_point(const std::vector<double>& w_plus, const std::vector<double>& w_minus,
                                       std::size_t k, double t) {
    auto y = simplex_flow(w_plus, t);
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] += w_minus[i];
    y[k] -= 1.0;
    return y;
}

inline void check_slice_inputs(const std::vector<double>& w_plus, const std::vector<double>& w_minus,
                               std::size_t k) {
    if (w_plus.size() != w_minus.size() || k >= w_plus.size())
        throw ValidationError("normal slice: shape mismatch");
    if (stable_index(w_plus) != k)
        throw ValidationError("normal slice: w_plus is not in W+_" + std::to_string(k));
    if (unstable_index(w_minus) != k)
        throw ValidationError("normal slice: w_minus is not in W-_" + std::to_string(k));
}

} // namespace detail

/// Smallest t for which the slice point w₊(t) + w₋ - e_k lies in Δ_m. Found by
/// doubling and then bisection; -inf if it lies in Δ_m for every t.
inline double normal_slice_threshold(const std::vector<double>& w_plus, const std::vector<double>& w_minus,
                                     std::size_t k) {
    detail::check_slice_inputs(w_plus, w_minus, k);
    auto valid = [&](double t) { return detail::slice_point(w_plus, w_minus, k, t)[k] >= 0.0; };
    double lo, hi;
    if (valid(0.0)) {
        hi = 0.0;
        lo = -1.0;
        while (valid(lo)) {
            if (lo < -1e3)
                return -std::numeric_limits<double>::infinity();
            hi = lo;
            lo *= 2.0;
        }
    } else {
        lo = 0.0;
        hi = 1.0;
        while (!valid(hi)) {
            if (hi > 1e3)
                throw ValidationError("normal slice: no valid time found");
            lo = hi;
            hi *= 2.0;
        }
    }
    for (int i = 0; i < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++i) {
        double mid = 0.5 * (lo + hi);
        (valid(mid) ? hi : lo) = mid;
    }
    return hi;
}

/// The point of the graph of Φ_t on the normal slice through w₊(t) + w₋.
inline SliceIntersection normal_slice_intersection(const std::vector<double>& w_plus,
                                                   const std::vector<double>& w_minus, std::size_t k, double t,
                                                   double tol = 1e-8) {
    detail::check_slice_inputs(w_plus, w_minus, k);
    SliceIntersection s;
    s.y = detail::slice_point(w_plus, w_minus, k, t);
    if (!(s.y[k] >= 0.0))
        throw ValidationError("normal slice: t = " + std::to_string(t) + " is below the threshold " +
                              std::to_string(normal_slice_threshold(w_plus, w_minus, k)));
    for (auto& c : s.y)
        c = std::max(c, 0.0);
    s.x = simplex_flow(s.y, -t);
    auto back = simplex_flow(s.x, t);
    for (std::size_t i = 0; i < back.size(); ++i)
        s.residual = std::max(s.residual, std::abs(back[i] - s.y[i]));
    if (s.residual > tol)
        throw CertificateFailure("normal slice: round trip residual " + std::to_string(s.residual));
    return s;
}

struct AsymptoticSample {
    std::size_t ell = 0; ///< x∞ ∈ W⁺_ℓ
    std::size_t k = 0;   ///< y∞ ∈ W⁻_k
    bool tie = false;    ///< some decay rate fell in the ambiguous band
};

struct AsymptoticReport {
    std::size_t m = 0, count = 0;
    double horizon = 0.0;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> histogram; ///< (ℓ, k) -> count
    std::size_t violations = 0; ///< samples with ℓ < k
    std::size_t ties = 0;
    std::vector<AsymptoticSample> samples;
};

/// Samples limit pairs of the graph of Φ_T as T → ∞.
///
/// Each sample fixes a limit x∞ with random support and approaches it along
/// x(T) = x∞ + Σ c_i e^{-α_i T} e_i over some indices off the support. The
/// pair (x(T), Φ_T x(T)) is evaluated at T and 2T; a coordinate of Φ_T x(T)
/// whose log decays faster than `decay_slope` per unit time is taken to
/// vanish in the limit, which identifies the unstable index k of y∞.
inline AsymptoticReport asymptotic_pair_sample(std::size_t m, std::size_t count, double horizon, std::uint64_t seed,
                                               double decay_slope = -0.1) {
    if (horizon < 20.0)
        throw ValidationError("asymptotic_pair_sample: horizon must be at least 20");
    if (count < 1)
        throw ValidationError("asymptotic_pair_sample: count must be positive");
    static constexpr double rates[] = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    Rng rng(seed);
    AsymptoticReport rep;
    rep.m = m;
    rep.count = count;
    rep.horizon = horizon;
    const std::size_t n = m + 1;
    for (std::size_t s = 0; s < count; ++s) {
        std::vector<bool> support(n, false);
        bool any = false;
        while (!any)
            for (std::size_t i = 0; i < n; ++i) {
                support[i] = rng.uniform() < 0.5;
                any = any || support[i];
            }
        std::vector<double> base(n, detail::neg_inf), rate(n, 0.0), scale(n, 0.0);
        std::vector<bool> perturbed(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            if (support[i]) {
                base[i] = std::log(rng.uniform(0.05, 1.0));
            } else if (rng.uniform() < 0.5) {
                perturbed[i] = true;
                rate[i] = rates[rng.index(std::size(rates))];
                scale[i] = std::log(rng.uniform(0.1, 2.0));
            }
        }
        auto image = [&](double T) {
            std::vector<double> lx = base;
            for (std::size_t i = 0; i < n; ++i)
                if (perturbed[i])
                    lx[i] = scale[i] - rate[i] * T;
            return simplex_flow_log(lx, T);
        };
        auto y1 = image(horizon), y2 = image(2.0 * horizon);
        AsymptoticSample smp;
        smp.ell = stable_index(std::vector<double>(support.begin(), support.end()));
        bool found = false;
        for (std::size_t j = n; j-- > 0;) {
            if (y1[j] == detail::neg_inf)
                continue;
            double slope = (y2[j] - y1[j]) / horizon;
            if (std::abs(slope - decay_slope) < 0.05)
                smp.tie = true;
            if (slope >= decay_slope && !found) {
                smp.k = j;
                found = true;
            }
        }
        if (!found)
            throw CertificateFailure("asymptotic_pair_sample: every coordinate decays");
        if (smp.tie)
            ++rep.ties;
        if (smp.ell < smp.k)
            ++rep.violations;
        ++rep.histogram[{smp.ell, smp.k}];
        rep.samples.push_back(smp);
    }
    return rep;
}

} // namespace tameflow

#endif
