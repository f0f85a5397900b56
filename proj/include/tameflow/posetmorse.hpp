#ifndef TAMEFLOW_POSETMORSE_HPP
#define TAMEFLOW_POSETMORSE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tameflow/complex.hpp"
#include "tameflow/conley.hpp"
#include "tameflow/contractibility.hpp"
#include "tameflow/errors.hpp"
#include "tameflow/homology.hpp"
#include "tameflow/polynomial.hpp"
#include "tameflow/poset.hpp"

namespace tameflow {

/// Real function on a poset taking distinct values on comparable elements.
/// Values are stored by element index.
class AdmissibleFunction {
public:
    AdmissibleFunction() = default;

    static AdmissibleFunction make(const Poset& p, const std::map<Label, double>& values) {
        AdmissibleFunction f;
        for (const auto& [l, v] : values)
            p.require(l);
        for (std::size_t i = 0; i < p.size(); ++i) {
            auto it = values.find(p.label(i));
            if (it == values.end())
                throw ValidationError("function: no value for '" + p.label(i) + "'");
            f.v_.push_back(it->second);
        }
        f.check(p);
        return f;
    }

    static AdmissibleFunction make(const Poset& p, std::vector<double> values) {
        if (values.size() != p.size())
            throw ValidationError("function: expected one value per element");
        AdmissibleFunction f;
        f.v_ = std::move(values);
        f.check(p);
        return f;
    }

    double operator()(std::size_t i) const { return v_.at(i); }
    const std::vector<double>& values() const { return v_; }

    /// Restriction to the given elements, listed in the same order.
    AdmissibleFunction restricted(const std::vector<std::size_t>& elems) const {
        AdmissibleFunction f;
        for (auto e : elems)
            f.v_.push_back(v_.at(e));
        return f;
    }

private:
    void check(const Poset& p) const {
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j)
                if (p.less(i, j) && v_[i] == v_[j])
                    throw ValidationError("function is not admissible: comparable '" + p.label(i) + "' and '" +
                                          p.label(j) + "' share a value");
    }

    std::vector<double> v_;
};

/// Face poset of a regular CW complex: a poset graded by dimension (+1 along
/// every cover) in which two faces with a common lower bound have a meet.
class CWFacePoset {
public:
    /// `dims` gives every element's dimension. `meets` lists triples
    /// (a, b, a∧b); if it is nonempty it must list exactly the pairs of
    /// distinct elements with a common lower bound and is cross-checked.
    static CWFacePoset make(Poset p, const std::map<Label, int>& dims,
                            const std::vector<std::tuple<Label, Label, Label>>& meets = {}) {
        CWFacePoset cw;
        cw.poset_ = std::move(p);
        const Poset& P = cw.poset_;
        const std::size_t n = P.size();
        for (std::size_t i = 0; i < n; ++i) {
            auto it = dims.find(P.label(i));
            if (it == dims.end())
                throw ValidationError("cw: no dimension for '" + P.label(i) + "'");
            cw.dim_.push_back(it->second);
        }
        for (auto [a, b] : P.covers())
            if (cw.dim_[b] != cw.dim_[a] + 1)
                throw ValidationError("cw: dimension does not go up by one from '" + P.label(a) + "' to '" +
                                      P.label(b) + "'");
        cw.meet_.assign(n, std::vector<long>(n, -1));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                std::vector<std::size_t> common;
                for (std::size_t c = 0; c < n; ++c)
                    if (P.leq(c, a) && P.leq(c, b))
                        common.push_back(c);
                if (common.empty())
                    continue;
                std::optional<std::size_t> glb;
                for (auto c : common)
                    if (std::all_of(common.begin(), common.end(), [&](std::size_t d) { return P.leq(d, c); }))
                        glb = c;
                if (!glb)
                    throw ValidationError("cw: '" + P.label(a) + "' and '" + P.label(b) +
                                          "' have common lower bounds but no meet");
                cw.meet_[a][b] = static_cast<long>(*glb);
            }
        if (!meets.empty()) {
            std::set<std::pair<std::size_t, std::size_t>> listed;
            for (const auto& [la, lb, lc] : meets) {
                std::size_t a = P.require(la), b = P.require(lb), c = P.require(lc);
                if (cw.meet_[a][b] != static_cast<long>(c))
                    throw ValidationError("cw: listed meet of '" + la + "' and '" + lb + "' is not '" + lc + "'");
                listed.insert({std::min(a, b), std::max(a, b)});
            }
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a + 1; b < n; ++b)
                    if (cw.meet_[a][b] >= 0 && !listed.count({a, b}))
                        throw ValidationError("cw: meet of '" + P.label(a) + "' and '" + P.label(b) +
                                              "' exists but is not listed");
        }
        return cw;
    }

    /// Face poset of a simplicial complex with dim = #vertices - 1.
    static CWFacePoset from_complex(const Complex& k) {
        Poset p = face_poset(k);
        std::map<Label, int> dims;
        for (const auto& f : k.faces())
            dims[face_label(f)] = static_cast<int>(f.size()) - 1;
        return make(std::move(p), dims);
    }

    const Poset& poset() const { return poset_; }
    int dim(std::size_t i) const { return dim_.at(i); }
    const std::vector<int>& dims() const { return dim_; }

    /// a ∧ b, or nothing when the two faces do not meet.
    std::optional<std::size_t> meet(std::size_t a, std::size_t b) const {
        long m = meet_.at(a).at(b);
        if (m < 0)
            return std::nullopt;
        return static_cast<std::size_t>(m);
    }

private:
    Poset poset_;
    std::vector<int> dim_;
    std::vector<std::vector<long>> meet_;
};

struct ViolationSets {
    std::vector<std::size_t> plus;  ///< V⁺(x) = {y > x : f(x) > f(y)}
    std::vector<std::size_t> minus; ///< V⁻(x) = {z < x : f(z) > f(x)}
};

inline ViolationSets violation_sets(const Poset& p, const AdmissibleFunction& f, std::size_t x) {
    ViolationSets v;
    for (std::size_t y = 0; y < p.size(); ++y) {
        if (p.less(x, y) && f(x) > f(y))
            v.plus.push_back(y);
        if (p.less(y, x) && f(y) > f(x))
            v.minus.push_back(y);
    }
    return v;
}

struct CoherenceReport {
    bool coherent = true;
    std::size_t omega = 0;
    std::optional<std::pair<std::size_t, std::size_t>> offending; ///< first violation interval on which f is not order-reversing
};

/// Coherent: on every violation interval [x, y] (x < y, f(x) > f(y)) the
/// function reverses the order. ω(f) is the longest such interval.
inline CoherenceReport coherence(const Poset& p, const AdmissibleFunction& f) {
    CoherenceReport r;
    for (std::size_t x = 0; x < p.size(); ++x)
        for (std::size_t y : violation_sets(p, f, x).plus) {
            r.omega = std::max(r.omega, p.longest_chain(x, y));
            if (!r.coherent)
                continue;
            auto iv = p.interval(x, y);
            for (auto u : iv)
                for (auto w : iv)
                    if (p.less(u, w) && !(f(u) > f(w)) && r.coherent) {
                        r.coherent = false;
                        r.offending = {x, y};
                    }
        }
    return r;
}

struct CPlusMinus {
    std::vector<std::optional<std::size_t>> c_plus;  ///< C₊(x) or nothing where S⁺(x) is not [x, y]
    std::vector<std::optional<std::size_t>> c_minus; ///< C₋(x) or nothing where S⁻(x) is not [z, x]
    bool plus_holds() const {
        return std::all_of(c_plus.begin(), c_plus.end(), [](const auto& c) { return c.has_value(); });
    }
    bool minus_holds() const {
        return std::all_of(c_minus.begin(), c_minus.end(), [](const auto& c) { return c.has_value(); });
    }
};

inline CPlusMinus c_plus_minus(const Poset& p, const AdmissibleFunction& f) {
    CPlusMinus out;
    auto as_interval = [&](std::vector<std::size_t> s, std::size_t x, bool upward) -> std::optional<std::size_t> {
        s.push_back(x);
        std::sort(s.begin(), s.end());
        for (auto e : s) {
            bool extreme = std::all_of(s.begin(), s.end(), [&](std::size_t o) { return upward ? p.leq(o, e) : p.leq(e, o); });
            if (!extreme)
                continue;
            auto iv = upward ? p.interval(x, e) : p.interval(e, x);
            std::sort(iv.begin(), iv.end());
            if (iv == s)
                return e;
            return std::nullopt;
        }
        return std::nullopt;
    };
    for (std::size_t x = 0; x < p.size(); ++x) {
        auto v = violation_sets(p, f, x);
        out.c_plus.push_back(as_interval(v.plus, x, true));
        out.c_minus.push_back(as_interval(v.minus, x, false));
    }
    return out;
}

struct PointVerdict {
    Regularity verdict = Regularity::Unknown;
    std::string reason;
};

/// x is regular when the nerve of V⁺(x) or of P_{<x} ∖ V⁻(x) is contractible.
inline std::vector<PointVerdict> regular_points(const Poset& p, const AdmissibleFunction& f) {
    std::vector<PointVerdict> out;
    for (std::size_t x = 0; x < p.size(); ++x) {
        auto v = violation_sets(p, f, x);
        std::vector<std::size_t> lower;
        for (auto y : p.strictly_below(x))
            if (!std::binary_search(v.minus.begin(), v.minus.end(), y))
                lower.push_back(y);
        auto up = contractibility(nerve(p.induced(v.plus)));
        auto down = contractibility(nerve(p.induced(lower)));
        PointVerdict pv;
        if (up.verdict == Verdict::Contractible)
            pv = {Regularity::Regular, "V+ " + up.method};
        else if (down.verdict == Verdict::Contractible)
            pv = {Regularity::Regular, "P<x\\V- " + down.method};
        else if (up.verdict == Verdict::NotContractible && down.verdict == Verdict::NotContractible)
            pv = {Regularity::Critical, "V+ " + up.method + ", P<x\\V- " + down.method};
        else
            pv = {Regularity::Unknown, "undecided"};
        out.push_back(pv);
    }
    return out;
}

/// M⁺(F): nerve of the cover of V⁺(F) by the half-open intervals (F, T] over
/// its maximal elements T. A set of maximal elements spans a face when its
/// iterated meet exists and lies strictly above F. Vertices are labelled by
/// the poset labels.
inline Complex mplus_complex(const CWFacePoset& fp, const AdmissibleFunction& f, std::size_t face) {
    const Poset& p = fp.poset();
    auto vplus = violation_sets(p, f, face).plus;
    std::vector<std::size_t> maximal;
    for (auto y : vplus)
        if (std::none_of(vplus.begin(), vplus.end(), [&](std::size_t z) { return p.less(y, z); }))
            maximal.push_back(y);
    if (maximal.size() > 20)
        throw ValidationError("mplus_complex: too many maximal elements");
    FaceSet faces;
    for (unsigned long mask = 1; mask < (1UL << maximal.size()); ++mask) {
        std::optional<std::size_t> m;
        Face labels;
        bool ok = true;
        for (std::size_t i = 0; i < maximal.size() && ok; ++i) {
            if (!(mask & (1UL << i)))
                continue;
            labels.push_back(p.label(maximal[i]));
            if (!m)
                m = maximal[i];
            else {
                m = fp.meet(*m, maximal[i]);
                if (!m)
                    ok = false;
            }
        }
        if (ok && p.less(face, *m))
            faces.insert(make_face(std::move(labels)));
    }
    return Complex::from_faces(std::move(faces));
}

struct FaceContribution {
    std::size_t face = 0;
    std::optional<std::size_t> c_minus;
    PolyZ polynomial;  ///< 0 when F != C₋(F), else t^{dim F + 1} P̃_{M⁺(F)}(t)
    bool critical = false;
    Complex mplus;
};

struct CMinusReport {
    std::vector<FaceContribution> faces;
    PolyZ space;                         ///< P_X
    PolyZ sum1;                          ///< Σ over F = C₋(F)
    std::optional<PolyZ> certificate1;
    bool c_holds = false;
    PolyZ sum2;                          ///< Σ_{F = C₋(F) = C₊(F)} t^{dim F}
    std::optional<PolyZ> certificate2;
};

/// Morse inequalities for a function satisfying C₋ on a CW face poset.
/// `space` defaults to the Poincaré polynomial of the nerve of the poset.
inline CMinusReport cminus_morse_report(const CWFacePoset& fp, const AdmissibleFunction& f,
                                        std::optional<PolyZ> space = std::nullopt) {
    const Poset& p = fp.poset();
    auto c = c_plus_minus(p, f);
    if (!c.minus_holds()) {
        for (std::size_t x = 0; x < p.size(); ++x)
            if (!c.c_minus[x])
                throw ValidationError("condition C- fails at '" + p.label(x) + "'");
    }
    CMinusReport rep;
    rep.space = space ? *space : poincare_polynomial(nerve(p));
    rep.c_holds = c.plus_holds();
    for (std::size_t x = 0; x < p.size(); ++x) {
        FaceContribution fc;
        fc.face = x;
        fc.c_minus = c.c_minus[x];
        if (*c.c_minus[x] == x) {
            fc.mplus = mplus_complex(fp, f, x);
            int d = fp.dim(x);
            fc.polynomial = fc.mplus.empty() ? PolyZ::monomial(1, d)
                                             : poincare_polynomial(fc.mplus, true).shifted(d + 1);
        }
        fc.critical = !fc.polynomial.is_zero();
        rep.sum1 += fc.polynomial;
        if (rep.c_holds && *c.c_minus[x] == x && *c.c_plus[x] == x)
            rep.sum2 += PolyZ::monomial(1, fp.dim(x));
        rep.faces.push_back(std::move(fc));
    }
    rep.certificate1 = poly_succeq(rep.sum1, rep.space);
    if (rep.c_holds)
        rep.certificate2 = poly_succeq(rep.sum2, rep.space);
    return rep;
}

} // namespace tameflow

#endif
