#pragma once

// JSON and CSV serialization for the file formats the CLI exchanges:
// polynomials, moment vectors, index families, recovery reports, and the
// identity-check table. JSON is the interchange format (also the input
// contract for externally supplied moments); CSV is a flat export for
// plotting. Both carry full-precision numbers.

#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "levelset/errors.hpp"
#include "levelset/moments.hpp"
#include "levelset/multi_index.hpp"
#include "levelset/polynomial.hpp"
#include "levelset/quadrature.hpp"
#include "levelset/recovery.hpp"

namespace levelset {

using json = nlohmann::json;

// 17 significant digits: enough to reproduce any double exactly on re-parse.
inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline std::vector<int> alpha_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("\"alpha\" must be a nonempty array");
    std::vector<int> e;
    for (const auto& v : j) {
        if (!v.is_number_integer() || v.get<long long>() < 0) {
            throw ParseError("\"alpha\" entries must be nonnegative integers");
        }
        e.push_back(v.get<int>());
    }
    return e;
}

inline json alpha_to_json(const MultiIndex& alpha) { return json(alpha.exponents()); }

template <typename T>
T getf(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ParseError(std::string("field \"") + key + "\" has the wrong type");
    }
}

} // namespace detail

// ---- polynomial: {"n": 2, "d": 4, "terms": [{"alpha": [4,0], "c": 1.0}, ...]} ----

inline json polynomial_to_json(const HomogeneousPolynomial& p) {
    json terms = json::array();
    for (const auto& [beta, c] : p.coeffs()) {
        terms.push_back({{"alpha", detail::alpha_to_json(beta)}, {"c", c}});
    }
    return {{"n", p.dimension()}, {"d", p.degree()}, {"terms", terms}};
}

inline HomogeneousPolynomial polynomial_from_json(const json& j) {
    const int n = detail::getf<int>(j, "n");
    const int d = detail::getf<int>(j, "d");
    if (!j.contains("terms") || !j.at("terms").is_array()) {
        throw ParseError("missing field \"terms\"");
    }
    HomogeneousPolynomial::CoeffMap coeffs;
    for (const auto& t : j.at("terms")) {
        MultiIndex alpha(detail::alpha_from_json(t.at("alpha")));
        const double c = detail::getf<double>(t, "c");
        auto [it, inserted] = coeffs.emplace(std::move(alpha), c);
        if (!inserted) throw ParseError("duplicate term " + it->first.str());
    }
    return HomogeneousPolynomial(n, d, std::move(coeffs)); // degree/dimension checks live there
}

// ---- moments: {"n": 2, "moments": [{"alpha": [2,0], "value": ..., "stderr": null}],
//                "provenance": "radial-quadrature"} ----

inline json moments_to_json(const MomentVector& mv) {
    json arr = json::array();
    for (const auto& [alpha, entry] : mv.entries()) {
        json e = {{"alpha", detail::alpha_to_json(alpha)}, {"value", entry.value}};
        e["stderr"] = entry.stderr_value ? json(*entry.stderr_value) : json(nullptr);
        arr.push_back(std::move(e));
    }
    json out = {{"n", mv.dimension()}, {"moments", arr}, {"provenance", to_string(mv.provenance())}};
    if (mv.implicit_zeros()) out["implicit_zeros"] = true;
    return out;
}

inline MomentVector moments_from_json(const json& j) {
    const int n = detail::getf<int>(j, "n");
    Provenance prov = Provenance::external;
    if (j.contains("provenance")) prov = provenance_from_string(detail::getf<std::string>(j, "provenance"));
    MomentVector mv(n, prov);
    if (j.contains("implicit_zeros")) mv.set_implicit_zeros(detail::getf<bool>(j, "implicit_zeros"));
    if (!j.contains("moments") || !j.at("moments").is_array()) {
        throw ParseError("missing field \"moments\"");
    }
    for (const auto& e : j.at("moments")) {
        MultiIndex alpha(detail::alpha_from_json(e.at("alpha")));
        if (mv.has(alpha)) throw ParseError("duplicate moment " + alpha.str());
        const double v = detail::getf<double>(e, "value");
        std::optional<double> se;
        if (e.contains("stderr") && !e.at("stderr").is_null()) se = detail::getf<double>(e, "stderr");
        mv.set(alpha, v, se);
    }
    return mv;
}

// ---- family: {"n": 2, "d": 2, "indices": [[0,0],[1,0],[0,1]]} ----

inline json family_to_json(const IndexFamily& fam) {
    json idx = json::array();
    for (const auto& a : fam.indices) idx.push_back(detail::alpha_to_json(a));
    return {{"n", fam.n}, {"d", fam.d}, {"indices", idx}};
}

inline IndexFamily family_from_json(const json& j) {
    IndexFamily fam;
    fam.n = detail::getf<int>(j, "n");
    fam.d = detail::getf<int>(j, "d");
    if (!j.contains("indices") || !j.at("indices").is_array()) {
        throw ParseError("missing field \"indices\"");
    }
    for (const auto& a : j.at("indices")) fam.indices.emplace_back(detail::alpha_from_json(a));
    return fam;
}

// ---- recovery report ----

inline json report_to_json(const RecoveryReport& r) {
    const auto& p = r.polynomial;
    json coeffs = json::array();
    for (double c : p.dense_coeffs()) coeffs.push_back(c);
    return {{"n", p.dimension()},
            {"d", p.degree()},
            {"coefficients", coeffs}, // graded order
            {"polynomial", polynomial_to_json(p)},
            {"residual", r.residual},
            {"condition", std::isfinite(r.condition) ? json(r.condition) : json(nullptr)},
            {"method", to_string(r.method)},
            {"warnings", r.warnings}};
}

// ---- CSV ----

inline std::string alpha_csv(const MultiIndex& alpha) {
    std::string s;
    for (int i = 0; i < alpha.dimension(); ++i) {
        s += (i ? " " : "") + std::to_string(alpha[static_cast<std::size_t>(i)]);
    }
    return s;
}

inline std::string moments_to_csv(const MomentVector& mv) {
    std::ostringstream os;
    os << "alpha,value,stderr\n";
    for (const auto& [alpha, entry] : mv.entries()) {
        os << alpha_csv(alpha) << "," << format_number(entry.value) << ",";
        if (entry.stderr_value) os << format_number(*entry.stderr_value);
        os << "\n";
    }
    return os.str();
}

inline std::string report_to_csv(const RecoveryReport& r) {
    std::ostringstream os;
    os << "alpha,coefficient\n";
    const GradedOrder order(r.polynomial.dimension(), r.polynomial.degree());
    const auto coeffs = r.polynomial.dense_coeffs();
    for (std::size_t i = 0; i < order.size(); ++i) {
        os << alpha_csv(order.unrank(i)) << "," << format_number(coeffs[i]) << "\n";
    }
    os << "residual," << format_number(r.residual) << "\n";
    os << "condition," << format_number(r.condition) << "\n";
    return os.str();
}

struct Lemma1Row {
    int k = 0;
    MultiIndex alpha;
    Lemma1Result result;
};

inline std::string lemma_table_to_csv(const std::vector<Lemma1Row>& rows) {
    std::ostringstream os;
    os << "k,alpha,lhs,rhs,relerr\n";
    for (const auto& row : rows) {
        os << row.k << "," << alpha_csv(row.alpha) << "," << format_number(row.result.lhs) << ","
           << format_number(row.result.rhs) << "," << format_number(row.result.relerr) << "\n";
    }
    return os.str();
}

// ---- file helpers ----

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

inline json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in " + what + ": " + e.what());
    }
}

} // namespace levelset
