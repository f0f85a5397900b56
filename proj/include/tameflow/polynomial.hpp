#ifndef TAMEFLOW_POLYNOMIAL_HPP
#define TAMEFLOW_POLYNOMIAL_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tameflow {

/// Integer polynomial in t; coefficient i multiplies t^i. Trailing zeros
/// are always trimmed, so the zero polynomial has no coefficients.
class PolyZ {
public:
    PolyZ() = default;
    PolyZ(std::initializer_list<std::int64_t> c) : c_(c) { trim(); }
    explicit PolyZ(std::vector<std::int64_t> c) : c_(std::move(c)) { trim(); }

    static PolyZ monomial(std::int64_t coeff, int degree) {
        if (degree < 0)
            return {};
        std::vector<std::int64_t> c(static_cast<std::size_t>(degree) + 1, 0);
        c.back() = coeff;
        return PolyZ(std::move(c));
    }

    const std::vector<std::int64_t>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    /// -1 stands in for the degree of the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    std::int64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

    std::int64_t eval(std::int64_t t) const {
        std::int64_t acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * t + *it;
        return acc;
    }

    PolyZ& operator+=(const PolyZ& o) {
        if (c_.size() < o.c_.size())
            c_.resize(o.c_.size(), 0);
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] += o.c_[i];
        trim();
        return *this;
    }
    PolyZ& operator-=(const PolyZ& o) {
        if (c_.size() < o.c_.size())
            c_.resize(o.c_.size(), 0);
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend PolyZ operator+(PolyZ a, const PolyZ& b) { return a += b; }
    friend PolyZ operator-(PolyZ a, const PolyZ& b) { return a -= b; }

    friend PolyZ operator*(const PolyZ& a, const PolyZ& b) {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<std::int64_t> c(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return PolyZ(std::move(c));
    }

    /// Multiplication by t^k (k may be negative when the low terms vanish).
    PolyZ shifted(int k) const {
        if (is_zero())
            return {};
        if (k >= 0) {
            std::vector<std::int64_t> c(static_cast<std::size_t>(k), 0);
            c.insert(c.end(), c_.begin(), c_.end());
            return PolyZ(std::move(c));
        }
        auto drop = static_cast<std::size_t>(-k);
        for (std::size_t i = 0; i < std::min(drop, c_.size()); ++i)
            if (c_[i] != 0)
                throw std::domain_error("PolyZ::shifted: negative power of t");
        if (drop >= c_.size())
            return {};
        return PolyZ(std::vector<std::int64_t>(c_.begin() + static_cast<std::ptrdiff_t>(drop), c_.end()));
    }

    bool has_nonnegative_coefficients() const {
        return std::all_of(c_.begin(), c_.end(), [](std::int64_t x) { return x >= 0; });
    }

    bool operator==(const PolyZ& o) const { return c_ == o.c_; }
    bool operator!=(const PolyZ& o) const { return c_ != o.c_; }

    /// Human-readable form such as "3+3t+t^2"; "0" for the zero polynomial.
    std::string to_string() const {
        if (is_zero())
            return "0";
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            std::int64_t a = c_[i];
            if (a == 0)
                continue;
            if (!out.empty())
                out += a < 0 ? "-" : "+";
            else if (a < 0)
                out += "-";
            std::int64_t m = a < 0 ? -a : a;
            if (i == 0 || m != 1)
                out += std::to_string(m);
            if (i >= 1)
                out += "t";
            if (i >= 2)
                out += "^" + std::to_string(i);
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::vector<std::int64_t> c_;
};

/// Quotient and remainder of p by (1 + t), by synthetic division at t = -1.
inline std::pair<PolyZ, std::int64_t> divide_by_one_plus_t(const PolyZ& p) {
    const auto& c = p.coefficients();
    if (c.empty())
        return {PolyZ{}, 0};
    // p = (1+t) q + r; from the top: q_{n-1} = c_n, q_{i-1} = c_i - q_i.
    std::size_t n = c.size() - 1;
    std::vector<std::int64_t> q(n, 0);
    std::int64_t carry = c[n];
    for (std::size_t i = n; i >= 1; --i) {
        q[i - 1] = carry;
        carry = c[i - 1] - carry;
    }
    return {PolyZ(std::move(q)), carry};
}

/// A ⪰ B certificate: Q with A = B + (1+t)Q and all coefficients of Q
/// nonnegative, or nothing when no such Q exists.
inline std::optional<PolyZ> poly_succeq(const PolyZ& a, const PolyZ& b) {
    auto [q, r] = divide_by_one_plus_t(a - b);
    if (r != 0 || !q.has_nonnegative_coefficients())
        return std::nullopt;
    return q;
}

} // namespace tameflow

#endif
