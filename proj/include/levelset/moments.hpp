#pragma once

// MomentVector: the map alpha -> lambda_alpha = integral of x^alpha over
// G = {x : g(x) <= 1}, with optional per-entry standard errors. This is both
// what the forward engines produce and what recovery consumes, including
// externally supplied moments.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "levelset/errors.hpp"
#include "levelset/multi_index.hpp"

namespace levelset {

enum class Provenance { radial_quadrature, monte_carlo, analytic, external };

inline std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::radial_quadrature: return "radial-quadrature";
        case Provenance::monte_carlo: return "monte-carlo";
        case Provenance::analytic: return "analytic";
        case Provenance::external: return "external";
    }
    return "external";
}

inline Provenance provenance_from_string(const std::string& s) {
    if (s == "radial-quadrature") return Provenance::radial_quadrature;
    if (s == "monte-carlo") return Provenance::monte_carlo;
    if (s == "analytic") return Provenance::analytic;
    if (s == "external") return Provenance::external;
    throw ParseError("unknown provenance \"" + s + "\"");
}

class MomentVector {
public:
    struct Entry {
        double value = 0.0;
        std::optional<double> stderr_value;
    };

    using EntryMap = std::map<MultiIndex, Entry, GradedLess>;

    explicit MomentVector(int n, Provenance provenance = Provenance::external)
        : n_(n), provenance_(provenance) {
        if (n_ < 1) throw DimensionMismatch("dimension must be >= 1");
    }

    int dimension() const { return n_; }
    Provenance provenance() const { return provenance_; }

    // When set, absent entries read as exact zeros. Off by default: a silent
    // zero for a merely forgotten moment corrupts recovery of asymmetric g,
    // so external files must opt in explicitly.
    bool implicit_zeros() const { return implicit_zeros_; }
    void set_implicit_zeros(bool v) { implicit_zeros_ = v; }

    void set(const MultiIndex& alpha, double value,
             std::optional<double> stderr_value = std::nullopt) {
        if (alpha.dimension() != n_) {
            throw DimensionMismatch("moment index " + alpha.str() + " has wrong dimension");
        }
        entries_[alpha] = Entry{value, stderr_value};
    }

    bool has(const MultiIndex& alpha) const { return entries_.count(alpha) > 0; }

    double value(const MultiIndex& alpha) const {
        auto it = entries_.find(alpha);
        if (it == entries_.end()) {
            if (implicit_zeros_) return 0.0;
            throw MissingMoment("moment " + alpha.str() + " is missing", {alpha.exponents()});
        }
        return it->second.value;
    }

    std::optional<double> stderr_value(const MultiIndex& alpha) const {
        auto it = entries_.find(alpha);
        if (it == entries_.end()) return std::nullopt;
        return it->second.stderr_value;
    }

    // Graded-order iteration (degree-major), matching serialization order.
    const EntryMap& entries() const { return entries_; }

    std::size_t size() const { return entries_.size(); }

    // Every alpha of the requested exact orders that is not present.
    std::vector<MultiIndex> missing_of_orders(const std::set<int>& orders) const {
        std::vector<MultiIndex> missing;
        if (implicit_zeros_) return missing;
        for (int o : orders) {
            for (const auto& alpha : enumerate_degree(n_, o)) {
                if (!has(alpha)) missing.push_back(alpha);
            }
        }
        return missing;
    }

private:
    int n_;
    Provenance provenance_;
    bool implicit_zeros_ = false;
    EntryMap entries_;
};

} // namespace levelset
