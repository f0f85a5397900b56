// Flow a point on a triangle, then check the Morse inequalities of the
// circle and of the Stiefel flow of the triangle.

#include <cstdio>

#include "tameflow/tameflow.hpp"

using namespace tameflow;

int main() {
    Complex tri = Complex::simplex({"v0", "v1", "v2"});
    Orientation o = Orientation::from_function(tri, {{"v0", 0}, {"v1", 1}, {"v2", 2}});
    auto p = BarycentricPoint::make({"v0", "v1", "v2"}, {0.5, 0.25, 0.25});
    for (double t : {0.0, 1.0, 5.0}) {
        auto q = complex_flow(o, p, t);
        std::printf("t=%-4g (%.6f, %.6f, %.6f)\n", t, q.coords[0], q.coords[1], q.coords[2]);
    }
    auto lim = flow_limits(o, p);
    std::printf("limits: forward %s, backward %s\n", lim.forward.c_str(), lim.backward.c_str());

    Complex circle = Complex::simplex_boundary({"v0", "v1", "v2"});
    auto rep = morse_inequalities(Orientation::from_function(circle, {{"v0", 0}, {"v1", 1}, {"v2", 2}}));
    for (const auto& s : rep.points)
        std::printf("  %s: M(t) = %s (%s)\n", s.vertex.c_str(), s.morse_poly.to_string().c_str(),
                    to_string(s.regular).c_str());
    std::printf("circle: sum %s, P %s, Q %s\n", rep.sum.to_string().c_str(), rep.space.to_string().c_str(),
                rep.certificate ? rep.certificate->to_string().c_str() : "none");

    auto st = stiefel_orientation(tri);
    auto srep = morse_inequalities(st.orientation);
    std::printf("Stiefel flow of the triangle: sum %s, Q %s\n", srep.sum.to_string().c_str(),
                srep.certificate ? srep.certificate->to_string().c_str() : "none");
    return 0;
}
