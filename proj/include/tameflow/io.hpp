#ifndef TAMEFLOW_IO_HPP
#define TAMEFLOW_IO_HPP

#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"

#include "tameflow/complex.hpp"
#include "tameflow/errors.hpp"
#include "tameflow/flow.hpp"
#include "tameflow/orientation.hpp"
#include "tameflow/polynomial.hpp"
#include "tameflow/poset.hpp"
#include "tameflow/posetmorse.hpp"

// JSON formats
//   complex      {"vertices": [...], "facets": [[...], ...]}   (vertices optional)
//   orientation  {"edges": [["u","v"], ...]}  meaning u ⇝ v,
//                or {"function": {"u": 2.0, ...}}  meaning u ⇝ v iff f(u) > f(v)
//   poset        {"elements": [...], "covers": [["a","b"], ...]}  b covers a
//   function     {"values": {"a": 3.0, ...}}
//   cw           poset fields plus {"dim": {...}, "meets": [["a","b","c"], ...]}
//   point        {"carrier": [...], "coords": [...]}

namespace tameflow {

using Json = nlohmann::json;

/// File could not be opened or written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

inline Json parse_json_text(const std::string& text, const std::string& source = "<input>") {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ValidationError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                              ": malformed JSON");
    }
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

namespace detail {

template <class T>
T field(const Json& j, const char* key, const std::string& what) {
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(what + ": missing field \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception&) {
        throw ValidationError(what + ": field \"" + key + "\" has the wrong type");
    }
}

} // namespace detail

inline Complex complex_from_json(const Json& j) {
    auto facets = detail::field<std::vector<std::vector<std::string>>>(j, "facets", "complex");
    if (j.contains("vertices"))
        return Complex::from_facets(detail::field<std::vector<std::string>>(j, "vertices", "complex"), facets);
    return Complex::from_facets(facets);
}

inline Json faces_to_json(const Complex& k) {
    Json arr = Json::array();
    for (const auto& f : k.faces())
        arr.push_back(f);
    return arr;
}

inline Json complex_to_json(const Complex& k) {
    Json j;
    j["vertices"] = k.vertices();
    Json facets = Json::array();
    for (const auto& f : k.facets())
        facets.push_back(f);
    j["facets"] = facets;
    j["faces"] = faces_to_json(k);
    j["f_vector"] = k.f_vector();
    return j;
}

inline Orientation orientation_from_json(const Complex& k, const Json& j) {
    if (j.is_object() && j.contains("function"))
        return Orientation::from_function(k, detail::field<std::map<std::string, double>>(j, "function", "orientation"));
    auto edges = detail::field<std::vector<std::vector<std::string>>>(j, "edges", "orientation");
    std::vector<std::pair<Label, Label>> pairs;
    for (const auto& e : edges) {
        if (e.size() != 2)
            throw ValidationError("orientation: every edge needs exactly two labels");
        pairs.emplace_back(e[0], e[1]);
    }
    return Orientation::validate(k, pairs);
}

inline Json orientation_to_json(const Orientation& o) {
    Json arr = Json::array();
    for (const auto& [u, v] : o.edges())
        arr.push_back({u, v});
    return Json{{"edges", arr}};
}

inline Poset poset_from_json(const Json& j) {
    auto elems = detail::field<std::vector<std::string>>(j, "elements", "poset");
    auto covers = detail::field<std::vector<std::vector<std::string>>>(j, "covers", "poset");
    std::vector<std::pair<Label, Label>> pairs;
    for (const auto& c : covers) {
        if (c.size() != 2)
            throw ValidationError("poset: every cover needs exactly two labels");
        pairs.emplace_back(c[0], c[1]);
    }
    return Poset::from_covers(elems, pairs);
}

inline std::map<Label, double> function_values_from_json(const Json& j) {
    return detail::field<std::map<std::string, double>>(j, "values", "function");
}

inline CWFacePoset cw_from_json(const Json& j) {
    Poset p = poset_from_json(j);
    auto dims = detail::field<std::map<std::string, int>>(j, "dim", "cw");
    std::vector<std::tuple<Label, Label, Label>> meets;
    if (j.contains("meets")) {
        for (const auto& m : detail::field<std::vector<std::vector<std::string>>>(j, "meets", "cw")) {
            if (m.size() != 3)
                throw ValidationError("cw: every meet needs three labels");
            meets.emplace_back(m[0], m[1], m[2]);
        }
    }
    return CWFacePoset::make(std::move(p), dims, meets);
}

inline BarycentricPoint point_from_json(const Json& j) {
    auto carrier = detail::field<std::vector<std::string>>(j, "carrier", "point");
    auto coords = detail::field<std::vector<double>>(j, "coords", "point");
    return BarycentricPoint::make(carrier, coords, 1e-9);
}

inline Json poly_to_json(const PolyZ& p) { return p.coefficients(); }

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

} // namespace tameflow

#endif
