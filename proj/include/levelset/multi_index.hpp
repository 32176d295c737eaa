#pragma once

// Multi-index combinatorics: exponent vectors alpha in N^n, the exact-degree
// index sets {alpha : |alpha| = d}, and the graded ordering used to index
// every vector and matrix in the library.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "levelset/errors.hpp"
#include "levelset/numeric.hpp"

namespace levelset {

// Exponent vector alpha of a monomial x^alpha. Immutable after construction.
class MultiIndex {
public:
    explicit MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
        if (e_.empty()) throw DimensionMismatch("multi-index must have dimension >= 1");
        for (int v : e_) {
            if (v < 0) throw ParseError("multi-index exponents must be nonnegative");
        }
    }

    MultiIndex(std::initializer_list<int> exponents)
        : MultiIndex(std::vector<int>(exponents)) {}

    int dimension() const { return static_cast<int>(e_.size()); }
    int degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }
    int operator[](std::size_t i) const { return e_[i]; }
    const std::vector<int>& exponents() const { return e_; }

    MultiIndex operator+(const MultiIndex& other) const {
        if (e_.size() != other.e_.size()) {
            throw DimensionMismatch("cannot add multi-indices of different dimension");
        }
        std::vector<int> s(e_.size());
        for (std::size_t i = 0; i < e_.size(); ++i) s[i] = e_[i] + other.e_[i];
        return MultiIndex(std::move(s));
    }

    bool operator==(const MultiIndex& other) const = default;

    std::string str() const {
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < e_.size(); ++i) os << (i ? "," : "") << e_[i];
        os << ")";
        return os.str();
    }

private:
    std::vector<int> e_;
};

// Strict weak order: degree-major, then lexicographic with x1 most
// significant and larger exponents first. Within one degree this lists
// (2,0), (1,1), (0,2) in that order, matching the coefficient vector
// layouts (g20, g11, g02) and (g40, ..., g04).
struct GradedLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        const int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.exponents() > b.exponents();
    }
};

// Number of monomials of exact degree d in n variables: C(n+d-1, d).
inline std::size_t monomial_count(int n, int d) {
    return static_cast<std::size_t>(binomial(n + d - 1, d));
}

// Dimension of the space of polynomials of degree at most d: C(n+d, n).
inline std::size_t polynomial_space_dim(int n, int d) {
    return static_cast<std::size_t>(binomial(n + d, n));
}

namespace detail {

inline void enumerate_rec(int remaining_dims, int remaining_deg, std::vector<int>& prefix,
                          std::vector<MultiIndex>& out) {
    if (remaining_dims == 1) {
        prefix.push_back(remaining_deg);
        out.push_back(MultiIndex(prefix));
        prefix.pop_back();
        return;
    }
    for (int v = remaining_deg; v >= 0; --v) {
        prefix.push_back(v);
        enumerate_rec(remaining_dims - 1, remaining_deg - v, prefix, out);
        prefix.pop_back();
    }
}

} // namespace detail

// All alpha with |alpha| = d in graded order; length C(n+d-1, d).
inline std::vector<MultiIndex> enumerate_degree(int n, int d) {
    if (n < 1) throw DimensionMismatch("dimension must be >= 1");
    if (d < 0) throw ParseError("degree must be >= 0");
    std::vector<MultiIndex> out;
    out.reserve(monomial_count(n, d));
    std::vector<int> prefix;
    detail::enumerate_rec(n, d, prefix, out);
    return out;
}

// Bijection between {alpha : |alpha| = d} and {0, ..., C(n+d-1,d)-1}
// in graded order. rank(unrank(i)) == i for all i.
class GradedOrder {
public:
    GradedOrder(int n, int d) : n_(n), d_(d), indices_(enumerate_degree(n, d)) {}

    int n() const { return n_; }
    int d() const { return d_; }
    std::size_t size() const { return indices_.size(); }

    const MultiIndex& unrank(std::size_t i) const { return indices_.at(i); }

    std::size_t rank(const MultiIndex& alpha) const {
        if (alpha.dimension() != n_ || alpha.degree() != d_) {
            throw DimensionMismatch("index " + alpha.str() + " is not in the degree-" +
                                    std::to_string(d_) + " set of dimension " + std::to_string(n_));
        }
        // Count indices that precede alpha: for each position, every choice of
        // a larger leading exponent contributes a full block of completions.
        std::size_t r = 0;
        int deg_left = d_;
        for (int pos = 0; pos < n_ - 1; ++pos) {
            const int a = alpha[static_cast<std::size_t>(pos)];
            for (int v = deg_left; v > a; --v) {
                r += monomial_count(n_ - pos - 1, deg_left - v);
            }
            deg_left -= a;
        }
        return r;
    }

    const std::vector<MultiIndex>& all() const { return indices_; }

private:
    int n_;
    int d_;
    std::vector<MultiIndex> indices_;
};

} // namespace levelset
