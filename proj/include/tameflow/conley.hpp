#ifndef TAMEFLOW_CONLEY_HPP
#define TAMEFLOW_CONLEY_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tameflow/complex.hpp"
#include "tameflow/contractibility.hpp"
#include "tameflow/errors.hpp"
#include "tameflow/homology.hpp"
#include "tameflow/orientation.hpp"
#include "tameflow/polynomial.hpp"

namespace tameflow {

/// Faces A ⊆ L(v⇝). Star-restricted (the default) keeps only those A with
/// A ∪ {v} ∈ K; the literal variant keeps the full subcomplex on L(v⇝).
/// The two differ on the source of ∂Δ₂, where only the star-restricted
/// link gives the Conley index of a circle's source.
inline Complex unstable_link(const Orientation& orient, const Label& v, bool star_restricted = true) {
    const Complex& k = orient.complex();
    if (!k.has_vertex(v))
        throw ValidationError("unstable_link: unknown vertex '" + v + "'");
    auto lower = orient.lower_neighbors(v);
    Complex literal = full_subcomplex(k, lower);
    if (!star_restricted)
        return literal;
    FaceSet kept;
    for (const auto& f : literal.faces()) {
        Face g = f;
        g.insert(std::upper_bound(g.begin(), g.end(), v), v);
        if (k.contains(g))
            kept.insert(f);
    }
    return Complex::from_faces(std::move(kept));
}

/// Unstable link of the reversed orientation.
inline Complex stable_link(const Orientation& orient, const Label& v, bool star_restricted = true) {
    return unstable_link(orient.reversed(), v, star_restricted);
}

/// 1 for an empty link, otherwise t times the reduced Poincaré polynomial.
inline PolyZ morse_polynomial_of_link(const Complex& link) {
    if (link.empty())
        return PolyZ{1};
    return poincare_polynomial(link, true).shifted(1);
}

inline PolyZ morse_polynomial(const Orientation& orient, const Label& v, bool star_restricted = true) {
    return morse_polynomial_of_link(unstable_link(orient, v, star_restricted));
}

enum class Regularity { Regular, Critical, Unknown };

inline std::string to_string(Regularity r) {
    switch (r) {
    case Regularity::Regular:
        return "regular";
    case Regularity::Critical:
        return "critical";
    default:
        return "unknown";
    }
}

/// Regular exactly when the unstable link is contractible; an empty link
/// (a local minimum) is critical.
inline std::pair<Regularity, std::string> regularity_of_link(const Complex& link) {
    auto c = contractibility(link);
    switch (c.verdict) {
    case Verdict::Contractible:
        return {Regularity::Regular, c.method};
    case Verdict::NotContractible:
        return {Regularity::Critical, c.method};
    default:
        return {Regularity::Unknown, c.method};
    }
}

struct StationaryReport {
    Label vertex;
    Complex unstable_link;
    PolyZ morse_poly;
    Regularity regular = Regularity::Unknown;
    std::string verdict_method;
};

inline StationaryReport stationary_report(const Orientation& orient, const Label& v, bool star_restricted = true) {
    StationaryReport r;
    r.vertex = v;
    r.unstable_link = unstable_link(orient, v, star_restricted);
    r.morse_poly = morse_polynomial_of_link(r.unstable_link);
    std::tie(r.regular, r.verdict_method) = regularity_of_link(r.unstable_link);
    return r;
}

struct MorseReport {
    std::vector<StationaryReport> points; ///< in vertex label order
    PolyZ sum;
    PolyZ space;
    std::optional<PolyZ> certificate;     ///< Q with sum = space + (1+t)Q
    bool star_restricted = true;
};

/// Morse inequalities Σ_v M_v(t) ⪰ P_K(t). A missing certificate means the
/// implementation is wrong, so callers should treat it as a failure.
inline MorseReport morse_inequalities(const Orientation& orient, bool star_restricted = true) {
    MorseReport rep;
    rep.star_restricted = star_restricted;
    for (const auto& v : orient.complex().vertices()) {
        rep.points.push_back(stationary_report(orient, v, star_restricted));
        rep.sum += rep.points.back().morse_poly;
    }
    rep.space = poincare_polynomial(orient.complex());
    rep.certificate = poly_succeq(rep.sum, rep.space);
    return rep;
}

struct StiefelFlow {
    Complex subdivision;                ///< DK, vertices labelled by face_label
    Orientation orientation;            ///< b_S ⇝ b_T iff S ⊋ T
    std::map<Label, Face> barycenter_of; ///< vertex of DK -> face of K
};

/// Orientation of DK induced by f(S) = dim S.
inline StiefelFlow stiefel_orientation(const Complex& k) {
    if (k.empty())
        throw ValidationError("stiefel_orientation: empty complex");
    StiefelFlow s;
    s.subdivision = barycentric_subdivision(k);
    for (const auto& f : k.faces())
        s.barycenter_of[face_label(f)] = f;
    std::vector<std::pair<Label, Label>> edges;
    for (const auto& e : s.subdivision.faces_of_dim(1)) {
        const Face& a = s.barycenter_of.at(e[0]);
        const Face& b = s.barycenter_of.at(e[1]);
        if (a.size() > b.size())
            edges.emplace_back(e[0], e[1]);
        else
            edges.emplace_back(e[1], e[0]);
    }
    s.orientation = Orientation::validate(s.subdivision, edges);
    return s;
}

/// Full subcomplex of DK on the barycenters of the faces T ⊇ S.
inline Complex normal_star(const Complex& k, const Face& s) {
    Face sorted = make_face(s);
    if (!k.contains(sorted))
        throw ValidationError("normal_star: " + face_to_string(sorted) + " is not a face");
    std::set<Label> verts;
    for (const auto& f : k.faces())
        if (std::includes(f.begin(), f.end(), sorted.begin(), sorted.end()))
            verts.insert(face_label(f));
    return full_subcomplex(barycentric_subdivision(k), verts);
}

} // namespace tameflow

#endif
