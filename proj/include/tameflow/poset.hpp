#ifndef TAMEFLOW_POSET_HPP
#define TAMEFLOW_POSET_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tameflow/errors.hpp"

namespace tameflow {

using Label = std::string;

/// Finite poset given by its cover relation.
///
/// Elements are addressed by index (declaration order) or by label. The
/// strict order is stored as a dense closure matrix; posets here have at
/// most a few hundred elements.
class Poset {
public:
    Poset() = default;

    /// `covers` holds pairs (a, b) meaning b covers a. Rejects cycles,
    /// unknown labels and redundant covers.
    static Poset from_covers(std::vector<Label> elements,
                             const std::vector<std::pair<Label, Label>>& covers) {
        Poset p = with_elements(std::move(elements));
        const std::size_t n = p.size();
        std::vector<std::vector<std::size_t>> up(n);
        for (const auto& [a, b] : covers) {
            std::size_t i = p.require(a), j = p.require(b);
            if (i == j)
                throw ValidationError("poset: element '" + a + "' covers itself");
            if (std::find(up[i].begin(), up[i].end(), j) != up[i].end())
                throw ValidationError("poset: duplicate cover (" + a + ", " + b + ")");
            up[i].push_back(j);
        }
        p.close(up);
        // A cover b > a is redundant when some c satisfies a < c < b.
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j : up[i])
                for (std::size_t c = 0; c < n; ++c)
                    if (p.less_[i][c] && p.less_[c][j])
                        throw ValidationError("poset: redundant cover (" + p.labels_[i] + ", " +
                                              p.labels_[j] + ") via '" + p.labels_[c] + "'");
        p.covers_.clear();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j : up[i])
                p.covers_.emplace_back(i, j);
        std::sort(p.covers_.begin(), p.covers_.end());
        return p;
    }

    /// Builds the poset generated by arbitrary pairs a < b (transitive
    /// reduction is computed); cycles are rejected.
    static Poset from_relation(std::vector<Label> elements,
                               const std::vector<std::pair<std::size_t, std::size_t>>& less_pairs) {
        Poset p = with_elements(std::move(elements));
        const std::size_t n = p.size();
        std::vector<std::vector<std::size_t>> up(n);
        for (auto [i, j] : less_pairs) {
            if (i >= n || j >= n)
                throw ValidationError("poset: relation index out of range");
            up[i].push_back(j);
        }
        p.close(up);
        p.covers_.clear();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (!p.less_[i][j])
                    continue;
                bool cover = true;
                for (std::size_t c = 0; c < n && cover; ++c)
                    if (p.less_[i][c] && p.less_[c][j])
                        cover = false;
                if (cover)
                    p.covers_.emplace_back(i, j);
            }
        return p;
    }

    std::size_t size() const { return labels_.size(); }
    const std::vector<Label>& labels() const { return labels_; }
    const Label& label(std::size_t i) const { return labels_.at(i); }

    std::optional<std::size_t> find(const Label& l) const {
        auto it = index_.find(l);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    std::size_t require(const Label& l) const {
        auto i = find(l);
        if (!i)
            throw ValidationError("poset: unknown element '" + l + "'");
        return *i;
    }

    bool less(std::size_t i, std::size_t j) const { return less_[i][j] != 0; }
    bool leq(std::size_t i, std::size_t j) const { return i == j || less(i, j); }
    bool comparable(std::size_t i, std::size_t j) const { return leq(i, j) || leq(j, i); }

    /// Pairs (a, b) with b covering a, as indices.
    const std::vector<std::pair<std::size_t, std::size_t>>& covers() const { return covers_; }

    bool covered_by(std::size_t a, std::size_t b) const {
        return std::binary_search(covers_.begin(), covers_.end(), std::make_pair(a, b));
    }

    /// P_{<x}
    std::vector<std::size_t> strictly_below(std::size_t x) const {
        std::vector<std::size_t> out;
        for (std::size_t y = 0; y < size(); ++y)
            if (less(y, x))
                out.push_back(y);
        return out;
    }

    std::vector<std::size_t> strictly_above(std::size_t x) const {
        std::vector<std::size_t> out;
        for (std::size_t y = 0; y < size(); ++y)
            if (less(x, y))
                out.push_back(y);
        return out;
    }

    /// The order interval [x, y]; throws unless x <= y.
    std::vector<std::size_t> interval(std::size_t x, std::size_t y) const {
        if (!leq(x, y))
            throw ValidationError("poset: interval needs " + labels_[x] + " <= " + labels_[y]);
        std::vector<std::size_t> out;
        for (std::size_t z = 0; z < size(); ++z)
            if (leq(x, z) && leq(z, y))
                out.push_back(z);
        return out;
    }

    /// l(x, y): maximal length of a chain from x to y.
    std::size_t longest_chain(std::size_t x, std::size_t y) const {
        auto elems = interval(x, y);
        // Longest path in the interval, processed in a linear extension.
        auto order = linear_extension();
        std::vector<long> best(size(), -1);
        best[x] = 0;
        for (std::size_t u : order) {
            if (best[u] < 0 || !leq(u, y))
                continue;
            for (std::size_t v : elems)
                if (covered_by(u, v))
                    best[v] = std::max(best[v], best[u] + 1);
        }
        return static_cast<std::size_t>(best[y]);
    }

    /// Elements sorted so that i < j in the poset implies i comes first;
    /// ties keep declaration order.
    std::vector<std::size_t> linear_extension() const {
        std::vector<std::size_t> rank(size(), 0);
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                if (less(j, i))
                    ++rank[i];
        std::vector<std::size_t> order(size());
        for (std::size_t i = 0; i < size(); ++i)
            order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
        return order;
    }

    /// Induced subposet on the given elements (kept in the given order).
    Poset induced(const std::vector<std::size_t>& elems) const {
        std::vector<Label> names;
        std::vector<std::pair<std::size_t, std::size_t>> rel;
        for (std::size_t a = 0; a < elems.size(); ++a) {
            names.push_back(labels_[elems[a]]);
            for (std::size_t b = 0; b < elems.size(); ++b)
                if (less(elems[a], elems[b]))
                    rel.emplace_back(a, b);
        }
        return from_relation(std::move(names), rel);
    }

    /// Order ideal test: x in I implies P_{<=x} in I.
    bool is_ideal(const std::vector<std::size_t>& elems) const {
        std::vector<char> in(size(), 0);
        for (auto e : elems)
            in[e] = 1;
        for (auto e : elems)
            for (std::size_t y = 0; y < size(); ++y)
                if (less(y, e) && !in[y])
                    return false;
        return true;
    }

    /// All chains (nonempty totally ordered subsets), each listed bottom-up.
    std::vector<std::vector<std::size_t>> chains() const {
        std::vector<std::vector<std::vector<std::size_t>>> ending(size());
        std::vector<std::vector<std::size_t>> all;
        for (std::size_t v : linear_extension()) {
            ending[v].push_back({v});
            for (std::size_t u = 0; u < size(); ++u) {
                if (!less(u, v))
                    continue;
                for (const auto& c : ending[u]) {
                    auto ext = c;
                    ext.push_back(v);
                    ending[v].push_back(std::move(ext));
                }
            }
            for (const auto& c : ending[v])
                all.push_back(c);
        }
        return all;
    }

private:
    static Poset with_elements(std::vector<Label> elements) {
        Poset p;
        p.labels_ = std::move(elements);
        for (std::size_t i = 0; i < p.labels_.size(); ++i)
            if (!p.index_.emplace(p.labels_[i], i).second)
                throw ValidationError("poset: duplicate element '" + p.labels_[i] + "'");
        return p;
    }

    void close(const std::vector<std::vector<std::size_t>>& up) {
        const std::size_t n = size();
        less_.assign(n, std::vector<char>(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::size_t> stack(up[i].begin(), up[i].end());
            while (!stack.empty()) {
                std::size_t j = stack.back();
                stack.pop_back();
                if (less_[i][j])
                    continue;
                less_[i][j] = 1;
                for (std::size_t k : up[j])
                    stack.push_back(k);
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            if (less_[i][i])
                throw ValidationError("poset: relation has a cycle through '" + labels_[i] + "'");
    }

    std::vector<Label> labels_;
    std::map<Label, std::size_t> index_;
    std::vector<std::vector<char>> less_;
    std::vector<std::pair<std::size_t, std::size_t>> covers_;
};

} // namespace tameflow

#endif
