#ifndef TAMEFLOW_COMPLEX_HPP
#define TAMEFLOW_COMPLEX_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tameflow/errors.hpp"
#include "tameflow/poset.hpp"

namespace tameflow {

/// A face is a sorted list of distinct vertex labels.
using Face = std::vector<Label>;

/// Canonical face order: by dimension, then lexicographically. Every
/// container of faces in the library uses it, which makes all outputs
/// deterministic and groups faces by dimension.
struct FaceOrder {
    bool operator()(const Face& a, const Face& b) const {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
};

using FaceSet = std::set<Face, FaceOrder>;

inline Face make_face(std::vector<Label> labels) {
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
        throw ValidationError("face has a repeated vertex '" +
                              *std::adjacent_find(labels.begin(), labels.end()) + "'");
    return labels;
}

/// Label used for the barycenter of a face: the vertex itself for a
/// singleton, "(a,b,...)" otherwise.
inline Label face_label(const Face& f) {
    if (f.size() == 1)
        return f.front();
    Label out = "(";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i)
            out += ",";
        out += f[i];
    }
    return out + ")";
}

inline std::string face_to_string(const Face& f) {
    std::string out = "{";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i)
            out += ",";
        out += f[i];
    }
    return out + "}";
}

/// Finite combinatorial simplicial complex: a downward closed family of
/// nonempty vertex sets. Immutable after construction.
class Complex {
public:
    /// The empty complex.
    Complex() = default;

    /// Closure of the given facets. Every declared vertex becomes a 0-face.
    static Complex from_facets(const std::vector<Label>& vertices,
                               const std::vector<std::vector<Label>>& facets) {
        std::set<Label> declared(vertices.begin(), vertices.end());
        if (declared.size() != vertices.size())
            throw ValidationError("complex: duplicate vertex label");
        FaceSet faces;
        for (const auto& v : declared)
            faces.insert(Face{v});
        for (const auto& raw : facets) {
            if (raw.empty())
                throw ValidationError("complex: empty facet");
            Face f = make_face(raw);
            for (const auto& v : f)
                if (!declared.count(v))
                    throw ValidationError("complex: unknown vertex label '" + v + "'");
            add_closure(faces, f);
        }
        return Complex(std::move(faces));
    }

    /// Closure of the given facets; the vertex set is read off the facets.
    static Complex from_facets(const std::vector<std::vector<Label>>& facets) {
        std::set<Label> vs;
        for (const auto& f : facets)
            vs.insert(f.begin(), f.end());
        return from_facets(std::vector<Label>(vs.begin(), vs.end()), facets);
    }

    /// Wraps a face family that is already downward closed (checked).
    static Complex from_faces(FaceSet faces) {
        for (const auto& f : faces) {
            if (f.empty())
                throw ValidationError("complex: empty face");
            if (f.size() > 1)
                for (std::size_t skip = 0; skip < f.size(); ++skip) {
                    Face sub;
                    for (std::size_t i = 0; i < f.size(); ++i)
                        if (i != skip)
                            sub.push_back(f[i]);
                    if (!faces.count(sub))
                        throw ValidationError("complex: not downward closed at " + face_to_string(f));
                }
        }
        return Complex(std::move(faces));
    }

    /// The full simplex on the given vertices.
    static Complex simplex(const std::vector<Label>& vertices) {
        return from_facets(vertices, {vertices});
    }

    /// Boundary of the full simplex on the given vertices (needs >= 2 of them).
    static Complex simplex_boundary(const std::vector<Label>& vertices) {
        std::vector<std::vector<Label>> facets;
        for (std::size_t skip = 0; skip < vertices.size(); ++skip) {
            std::vector<Label> f;
            for (std::size_t i = 0; i < vertices.size(); ++i)
                if (i != skip)
                    f.push_back(vertices[i]);
            facets.push_back(f);
        }
        return from_facets(vertices, facets);
    }

    bool empty() const { return faces_.empty(); }
    const FaceSet& faces() const { return faces_; }
    const std::vector<Label>& vertices() const { return vertices_; }
    bool contains(const Face& f) const { return faces_.count(f) > 0; }
    bool has_vertex(const Label& v) const { return contains(Face{v}); }

    /// -1 for the empty complex.
    int dim() const { return faces_.empty() ? -1 : static_cast<int>(faces_.rbegin()->size()) - 1; }

    std::vector<std::size_t> f_vector() const {
        std::vector<std::size_t> f(static_cast<std::size_t>(dim() + 1), 0);
        for (const auto& face : faces_)
            ++f[face.size() - 1];
        return f;
    }

    long euler_characteristic() const {
        long chi = 0;
        auto f = f_vector();
        for (std::size_t k = 0; k < f.size(); ++k)
            chi += (k % 2 == 0 ? 1L : -1L) * static_cast<long>(f[k]);
        return chi;
    }

    /// Faces of dimension k in canonical order.
    std::vector<Face> faces_of_dim(int k) const {
        std::vector<Face> out;
        for (const auto& f : faces_)
            if (static_cast<int>(f.size()) == k + 1)
                out.push_back(f);
        return out;
    }

    /// Maximal faces in canonical order.
    std::vector<Face> facets() const {
        std::vector<Face> out;
        for (const auto& f : faces_) {
            bool maximal = true;
            for (auto it = faces_.upper_bound(f); it != faces_.end() && maximal; ++it)
                if (it->size() > f.size() && std::includes(it->begin(), it->end(), f.begin(), f.end()))
                    maximal = false;
            if (maximal)
                out.push_back(f);
        }
        return out;
    }

    bool is_subcomplex_of(const Complex& k) const {
        return std::all_of(faces_.begin(), faces_.end(), [&](const Face& f) { return k.contains(f); });
    }

    bool operator==(const Complex& other) const { return faces_ == other.faces_; }
    bool operator!=(const Complex& other) const { return !(*this == other); }

private:
    explicit Complex(FaceSet faces) : faces_(std::move(faces)) {
        for (const auto& f : faces_)
            if (f.size() == 1)
                vertices_.push_back(f.front());
        std::sort(vertices_.begin(), vertices_.end());
    }

    static void add_closure(FaceSet& faces, const Face& f) {
        if (faces.count(f))
            return;
        // Enumerate all nonempty subsets; facets are small at desk scale.
        const std::size_t n = f.size();
        if (n > 24)
            throw ValidationError("complex: facet too large");
        for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
            Face sub;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1UL << i))
                    sub.push_back(f[i]);
            faces.insert(std::move(sub));
        }
    }

    FaceSet faces_;
    std::vector<Label> vertices_;
};

/// cl_c(A): smallest subcomplex of K containing the faces in A.
inline Complex combinatorial_closure(const Complex& k, const std::vector<Face>& faces) {
    std::vector<std::vector<Label>> facets;
    for (const auto& raw : faces) {
        Face f = make_face(raw);
        if (!k.contains(f))
            throw ValidationError("closure: " + face_to_string(f) + " is not a face of the complex");
        facets.push_back(f);
    }
    return Complex::from_facets(facets);
}

/// F(S): faces of K whose vertices all lie in S.
inline Complex full_subcomplex(const Complex& k, const std::set<Label>& selected) {
    FaceSet out;
    for (const auto& f : k.faces())
        if (std::all_of(f.begin(), f.end(), [&](const Label& v) { return selected.count(v) > 0; }))
            out.insert(f);
    return Complex::from_faces(std::move(out));
}

/// L(v): vertices adjacent to v.
inline std::set<Label> adjacent_vertices(const Complex& k, const Label& v) {
    if (!k.has_vertex(v))
        throw ValidationError("unknown vertex '" + v + "'");
    std::set<Label> out;
    for (const auto& f : k.faces_of_dim(1)) {
        if (f[0] == v)
            out.insert(f[1]);
        else if (f[1] == v)
            out.insert(f[0]);
    }
    return out;
}

struct StarLink {
    Complex star;
    Complex link;
};

/// Combinatorial star F(S(v)) and link F(L(v)) as full subcomplexes. For v2
/// in the boundary of a triangle the link is the whole opposite edge, which
/// differs from the geometric link; see closed_star / geometric_link.
inline StarLink star_and_link(const Complex& k, const Label& v) {
    auto nbrs = adjacent_vertices(k, v);
    auto with_v = nbrs;
    with_v.insert(v);
    return {full_subcomplex(k, with_v), full_subcomplex(k, nbrs)};
}

/// Union of the closed faces through v.
inline Complex closed_star(const Complex& k, const Label& v) {
    if (!k.has_vertex(v))
        throw ValidationError("unknown vertex '" + v + "'");
    std::vector<std::vector<Label>> facets;
    for (const auto& f : k.faces())
        if (std::binary_search(f.begin(), f.end(), v))
            facets.push_back(f);
    return Complex::from_facets(facets);
}

/// Faces A with v not in A and A + v a face of K.
inline Complex geometric_link(const Complex& k, const Label& v) {
    if (!k.has_vertex(v))
        throw ValidationError("unknown vertex '" + v + "'");
    FaceSet out;
    for (const auto& f : k.faces()) {
        if (std::binary_search(f.begin(), f.end(), v))
            continue;
        Face g = f;
        g.insert(std::upper_bound(g.begin(), g.end(), v), v);
        if (k.contains(g))
            out.insert(f);
    }
    return Complex::from_faces(std::move(out));
}

namespace detail {

inline Label unique_label(Label base, const std::set<Label>& taken, const std::string& suffix) {
    while (taken.count(base))
        base += suffix;
    return base;
}

} // namespace detail

/// Join K1 * K2. Labels of K2 that clash with K1 get the suffix "·R"
/// (repeated until unique); K1 keeps its labels.
inline Complex join(const Complex& k1, const Complex& k2) {
    std::set<Label> taken(k1.vertices().begin(), k1.vertices().end());
    std::map<Label, Label> rename;
    for (const auto& v : k2.vertices()) {
        Label fresh = detail::unique_label(v, taken, "·R");
        taken.insert(fresh);
        rename[v] = fresh;
    }
    std::vector<Face> left(k1.faces().begin(), k1.faces().end());
    std::vector<Face> right;
    for (const auto& f : k2.faces()) {
        Face g;
        for (const auto& v : f)
            g.push_back(rename.at(v));
        right.push_back(make_face(g));
    }
    left.push_back({});
    right.push_back({});
    FaceSet out;
    for (const auto& a : left)
        for (const auto& b : right) {
            if (a.empty() && b.empty())
                continue;
            Face g = a;
            g.insert(g.end(), b.begin(), b.end());
            out.insert(make_face(g));
        }
    return Complex::from_faces(std::move(out));
}

/// Cone with a fresh apex ("apex", suffixed with "·apex" on clash).
inline Complex cone(const Complex& k) {
    std::set<Label> taken(k.vertices().begin(), k.vertices().end());
    Label apex = detail::unique_label("apex", taken, "·apex");
    return join(k, Complex::from_facets({{apex}}));
}

inline Complex zero_sphere(const Label& north = "N", const Label& south = "S") {
    return Complex::from_facets({{north}, {south}});
}

/// n-fold suspension: iterated join with S^0 = {N, S}.
inline Complex suspension(const Complex& k, int n = 1) {
    if (n < 0)
        throw ValidationError("suspension: negative count");
    Complex out = k;
    for (int i = 0; i < n; ++i)
        out = join(out, zero_sphere());
    return out;
}

/// Face poset (K, ⊂), elements labelled by face_label in canonical face order.
inline Poset face_poset(const Complex& k) {
    std::vector<Face> faces(k.faces().begin(), k.faces().end());
    std::map<Face, std::size_t> index;
    std::vector<Label> labels;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        index[faces[i]] = i;
        labels.push_back(face_label(faces[i]));
    }
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t j = 0; j < faces.size(); ++j) {
        const Face& f = faces[j];
        if (f.size() < 2)
            continue;
        for (std::size_t skip = 0; skip < f.size(); ++skip) {
            Face sub;
            for (std::size_t i = 0; i < f.size(); ++i)
                if (i != skip)
                    sub.push_back(f[i]);
            rel.emplace_back(index.at(sub), j);
        }
    }
    return Poset::from_relation(std::move(labels), rel);
}

/// Nerve of a poset: vertices are its elements, faces its chains.
inline Complex nerve(const Poset& p) {
    FaceSet out;
    for (const auto& chain : p.chains()) {
        Face f;
        for (auto i : chain)
            f.push_back(p.label(i));
        out.insert(make_face(std::move(f)));
    }
    return Complex::from_faces(std::move(out));
}

/// n-th barycentric subdivision D^n K (nerve of the face poset, iterated).
inline Complex barycentric_subdivision(const Complex& k, int n = 1) {
    if (n < 1)
        throw ValidationError("barycentric_subdivision: n must be >= 1");
    Complex out = k;
    for (int i = 0; i < n; ++i)
        out = nerve(face_poset(out));
    return out;
}

} // namespace tameflow

#endif
