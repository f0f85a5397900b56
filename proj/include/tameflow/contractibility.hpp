#ifndef TAMEFLOW_CONTRACTIBILITY_HPP
#define TAMEFLOW_CONTRACTIBILITY_HPP

#include <algorithm>
#include <optional>
#include <string>

#include "tameflow/complex.hpp"
#include "tameflow/homology.hpp"

namespace tameflow {

enum class Verdict { Contractible, NotContractible, Unknown };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Contractible:
        return "contractible";
    case Verdict::NotContractible:
        return "not_contractible";
    default:
        return "unknown";
    }
}

struct ContractibilityReport {
    Verdict verdict = Verdict::Unknown;
    std::string method; ///< "empty", "cone", "collapse", "homology" or "unknown"
};

/// A vertex v such that A ∪ {v} is a face for every face A, if any.
inline std::optional<Label> cone_apex(const Complex& k) {
    for (const auto& v : k.vertices()) {
        bool apex = true;
        for (const auto& f : k.faces()) {
            if (std::binary_search(f.begin(), f.end(), v))
                continue;
            Face g = f;
            g.insert(std::upper_bound(g.begin(), g.end(), v), v);
            if (!k.contains(g)) {
                apex = false;
                break;
            }
        }
        if (apex)
            return v;
    }
    return std::nullopt;
}

/// Greedy elementary collapses, always taking the first free pair in
/// canonical order. True when K collapses to a single vertex.
inline bool greedy_collapsible(const Complex& k, std::size_t max_steps = 100000) {
    FaceSet faces = k.faces();
    for (std::size_t step = 0; step < max_steps; ++step) {
        if (faces.size() == 1)
            return true;
        bool moved = false;
        for (auto it = faces.rbegin(); it != faces.rend() && !moved; ++it) {
            const Face& sigma = *it;
            // sigma is free if exactly one face properly contains it and that
            // face has one more vertex.
            const Face* owner = nullptr;
            std::size_t count = 0;
            for (auto jt = faces.upper_bound(sigma); jt != faces.end() && count < 2; ++jt)
                if (jt->size() > sigma.size() && std::includes(jt->begin(), jt->end(), sigma.begin(), sigma.end())) {
                    ++count;
                    owner = &*jt;
                }
            if (count == 1 && owner->size() == sigma.size() + 1) {
                Face tau = *owner, s = sigma;
                faces.erase(tau);
                faces.erase(s);
                moved = true;
            }
        }
        if (!moved)
            return false;
    }
    return false;
}

/// Tiered contractibility test: certified by a cone apex or a greedy
/// collapse, refuted by nonzero reduced rational homology, otherwise unknown.
/// The empty complex counts as not contractible.
inline ContractibilityReport contractibility(const Complex& k) {
    if (k.empty())
        return {Verdict::NotContractible, "empty"};
    if (cone_apex(k))
        return {Verdict::Contractible, "cone"};
    if (greedy_collapsible(k))
        return {Verdict::Contractible, "collapse"};
    if (!poincare_polynomial(k, true).is_zero())
        return {Verdict::NotContractible, "homology"};
    return {Verdict::Unknown, "unknown"};
}

} // namespace tameflow

#endif
