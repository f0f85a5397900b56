#ifndef TAMEFLOW_ORIENTATION_HPP
#define TAMEFLOW_ORIENTATION_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tameflow/complex.hpp"
#include "tameflow/errors.hpp"

namespace tameflow {

/// Dynamical orientation: a relation u ⇝ v on the vertices of a complex
/// that restricts to a strict linear order on every face. Flow goes from
/// u to v, so the ⇝-minimal vertex of a face is its sink.
class Orientation {
public:
    Orientation() = default;

    /// Validates `edges` (pairs u ⇝ v) against K. Throws naming the
    /// offending face if some face is not linearly ordered.
    static Orientation validate(const Complex& k, const std::vector<std::pair<Label, Label>>& edges) {
        Orientation o;
        o.complex_ = k;
        for (const auto& [u, v] : edges) {
            if (u == v)
                throw ValidationError("orientation: loop at '" + u + "'");
            if (!k.contains(make_face({u, v})))
                throw ValidationError("orientation: (" + u + ", " + v + ") is not an edge of the complex");
            if (o.arrows_.count({v, u}))
                throw ValidationError("orientation: edge " + face_to_string(make_face({u, v})) +
                                      " is oriented both ways");
            o.arrows_.insert({u, v});
        }
        for (const auto& e : k.faces_of_dim(1))
            if (!o.arrows_.count({e[0], e[1]}) && !o.arrows_.count({e[1], e[0]}))
                throw ValidationError("orientation: face " + face_to_string(e) + " has an incomparable pair");
        for (const auto& tri : k.faces_of_dim(2)) {
            // A tournament on three vertices is transitive iff it has no 3-cycle.
            const auto &a = tri[0], &b = tri[1], &c = tri[2];
            bool cyc1 = o.flows(a, b) && o.flows(b, c) && o.flows(c, a);
            bool cyc2 = o.flows(a, c) && o.flows(c, b) && o.flows(b, a);
            if (cyc1 || cyc2)
                throw ValidationError("orientation: face " + face_to_string(tri) + " is oriented cyclically");
        }
        return o;
    }

    /// x ⇝ y iff f(x) > f(y) on every edge; f must separate adjacent vertices.
    static Orientation from_function(const Complex& k, const std::map<Label, double>& f) {
        std::vector<std::pair<Label, Label>> edges;
        for (const auto& e : k.faces_of_dim(1)) {
            double a = value(f, e[0]), b = value(f, e[1]);
            if (a == b)
                throw ValidationError("orientation: function takes equal values on edge " + face_to_string(e));
            edges.emplace_back(a > b ? e[0] : e[1], a > b ? e[1] : e[0]);
        }
        return validate(k, edges);
    }

    const Complex& complex() const { return complex_; }

    /// u ⇝ v
    bool flows(const Label& u, const Label& v) const { return arrows_.count({u, v}) > 0; }

    std::vector<std::pair<Label, Label>> edges() const { return {arrows_.begin(), arrows_.end()}; }

    Orientation reversed() const {
        Orientation o;
        o.complex_ = complex_;
        for (const auto& [u, v] : arrows_)
            o.arrows_.insert({v, u});
        return o;
    }

    /// Vertices of a face listed sink first: u_j ⇝ u_i whenever j > i.
    std::vector<Label> order_on(const Face& face) const {
        if (!complex_.contains(face))
            throw ValidationError("orientation: " + face_to_string(face) + " is not a face");
        std::vector<std::pair<std::size_t, Label>> ranked;
        for (const auto& v : face) {
            std::size_t below = 0;
            for (const auto& w : face)
                if (flows(v, w))
                    ++below;
            ranked.emplace_back(below, v);
        }
        std::sort(ranked.begin(), ranked.end());
        std::vector<Label> out;
        for (auto& r : ranked)
            out.push_back(r.second);
        return out;
    }

    /// Neighbors w with v ⇝ w (the set L(v⇝)).
    std::set<Label> lower_neighbors(const Label& v) const {
        std::set<Label> out;
        for (const auto& [a, b] : arrows_)
            if (a == v)
                out.insert(b);
        return out;
    }

private:
    static double value(const std::map<Label, double>& f, const Label& v) {
        auto it = f.find(v);
        if (it == f.end())
            throw ValidationError("orientation: function has no value at '" + v + "'");
        return it->second;
    }

    Complex complex_;
    std::set<std::pair<Label, Label>> arrows_;
};

} // namespace tameflow

#endif
