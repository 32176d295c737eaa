#pragma once

// Coefficient recovery from moments. The moment matrix
//   M_d(lambda)[alpha, beta] = lambda_{alpha+beta},  |alpha| = |beta| = d,
// together with the order-d moment vector lambda^{(d)} determines the
// coefficient vector of g through
//   M_d(lambda) g = (n+d)/(n+2d) lambda^{(d)},
// which is the k = 1 identity applied at every |alpha| = d. More generally
// any family F of multi-indices alpha contributes one row
//   sum_{|beta|=d} g_beta lambda_{alpha+beta}
//     = (n+|alpha|)/(n+d+|alpha|) lambda_alpha
// per member. Systems are solved, never inverted, and every report carries
// a condition estimate because near-degenerate level sets push these
// matrices toward singularity fast.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "levelset/errors.hpp"
#include "levelset/moments.hpp"
#include "levelset/multi_index.hpp"
#include "levelset/polynomial.hpp"
#include "levelset/quadrature.hpp"

namespace levelset {

struct MomentMatrix {
    int n = 0;
    int d = 0;
    GradedOrder order;
    Eigen::MatrixXd m;

    MomentMatrix(int n_, int d_) : n(n_), d(d_), order(n_, d_) {}
};

enum class RecoveryMethod { theorem, family, least_squares };

inline std::string to_string(RecoveryMethod m) {
    switch (m) {
        case RecoveryMethod::theorem: return "theorem";
        case RecoveryMethod::family: return "family";
        case RecoveryMethod::least_squares: return "least-squares";
    }
    return "theorem";
}

struct RecoveryReport {
    HomogeneousPolynomial polynomial;
    double residual = 0.0;  // ||A g - b||_2 / ||b||_2
    double condition = 1.0; // kappa_2 of the solved system
    RecoveryMethod method = RecoveryMethod::theorem;
    std::vector<std::string> warnings;
};

// Family of equation indices; solvable once |indices| reaches the number
// C(n+d-1, d) of unknown coefficients.
struct IndexFamily {
    int n = 0;
    int d = 0;
    std::vector<MultiIndex> indices;
};

struct RecoveryOptions {
    bool force = false;             // demote singularity to a warning, solve by pseudo-inverse
    double condition_limit = 1e12;
};

namespace detail {

inline void throw_or_warn_singular(double cond, const RecoveryOptions& opt,
                                   std::vector<std::string>& warnings) {
    std::ostringstream os;
    os << "condition estimate " << cond << " exceeds " << opt.condition_limit
       << ": system is numerically singular";
    if (!opt.force) throw SingularMatrix(os.str());
    warnings.push_back(os.str());
}

inline std::string format_missing(const std::vector<MultiIndex>& missing) {
    std::string s;
    for (std::size_t i = 0; i < missing.size(); ++i) s += (i ? ", " : "") + missing[i].str();
    return s;
}

inline std::vector<std::vector<int>> raw_indices(const std::vector<MultiIndex>& v) {
    std::vector<std::vector<int>> out;
    out.reserve(v.size());
    for (const auto& a : v) out.push_back(a.exponents());
    return out;
}

inline HomogeneousPolynomial polynomial_from_dense(int n, int d, const Eigen::VectorXd& g) {
    const GradedOrder order(n, d);
    HomogeneousPolynomial::CoeffMap coeffs;
    for (std::size_t i = 0; i < order.size(); ++i) {
        coeffs.emplace(order.unrank(i), g(static_cast<Eigen::Index>(i)));
    }
    return HomogeneousPolynomial(n, d, std::move(coeffs));
}

inline double relative_residual(const Eigen::MatrixXd& A, const Eigen::VectorXd& g,
                                const Eigen::VectorXd& b) {
    const double nb = b.norm();
    const double r = (A * g - b).norm();
    return nb > 0.0 ? r / nb : r;
}

} // namespace detail

// Assembles M_d(lambda); requires every moment of order exactly 2d.
inline MomentMatrix build_moment_matrix(const MomentVector& lambda, int n, int d) {
    if (lambda.dimension() != n) throw DimensionMismatch("moment vector dimension mismatch");
    if (d < 1) throw ParseError("moment matrix degree must be >= 1");
    auto missing = lambda.missing_of_orders({2 * d});
    if (!missing.empty()) {
        throw MissingMoment("missing order-" + std::to_string(2 * d) + " moments: " +
                                detail::format_missing(missing),
                            detail::raw_indices(missing));
    }
    MomentMatrix M(n, d);
    const auto s = static_cast<Eigen::Index>(M.order.size());
    M.m.resize(s, s);
    for (Eigen::Index i = 0; i < s; ++i) {
        for (Eigen::Index j = i; j < s; ++j) {
            const double v = lambda.value(M.order.unrank(static_cast<std::size_t>(i)) +
                                          M.order.unrank(static_cast<std::size_t>(j)));
            M.m(i, j) = v;
            M.m(j, i) = v; // one read of lambda_{alpha+beta}; symmetry is exact
        }
    }
    return M;
}

// kappa_2(M) as the ratio of extreme absolute eigenvalues (M is symmetric).
inline double condition_report(const MomentMatrix& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.m, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double hi = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    double lo = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < ev.size(); ++i) lo = std::min(lo, std::abs(ev(i)));
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

inline Eigen::VectorXd symmetric_eigenvalues(const MomentMatrix& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

// g = (n+d)/(n+2d) M_d(lambda)^{-1} lambda^{(d)}, solved through an LDL^T
// factorization of the symmetric moment matrix.
inline RecoveryReport recover_theorem(const MomentVector& lambda, int n, int d,
                                      const RecoveryOptions& opt = {}) {
    if (d < 2 || d % 2 != 0) {
        throw ParseError("recovery requires even degree d >= 2, got d = " + std::to_string(d));
    }
    auto missing = lambda.missing_of_orders({d});
    if (!missing.empty()) {
        throw MissingMoment("missing order-" + std::to_string(d) + " moments: " +
                                detail::format_missing(missing),
                            detail::raw_indices(missing));
    }
    const MomentMatrix M = build_moment_matrix(lambda, n, d);

    const auto s = static_cast<Eigen::Index>(M.order.size());
    Eigen::VectorXd rhs(s);
    const double factor =
        static_cast<double>(n + d) / static_cast<double>(n + 2 * d);
    for (Eigen::Index i = 0; i < s; ++i) {
        rhs(i) = factor * lambda.value(M.order.unrank(static_cast<std::size_t>(i)));
    }

    std::vector<std::string> warnings;
    const double cond = condition_report(M);
    if (!(cond <= opt.condition_limit)) detail::throw_or_warn_singular(cond, opt, warnings);

    Eigen::VectorXd g;
    if (std::isfinite(cond)) {
        g = M.m.ldlt().solve(rhs);
    } else {
        // exactly singular; reachable only in force mode
        g = M.m.completeOrthogonalDecomposition().solve(rhs);
    }
    if (!g.allFinite()) {
        if (!opt.force) throw SingularMatrix("factorization of M_d(lambda) broke down");
        warnings.emplace_back("factorization breakdown; coefficients are not reliable");
        g = M.m.completeOrthogonalDecomposition().solve(rhs);
    }

    RecoveryReport report{detail::polynomial_from_dense(n, d, g),
                          detail::relative_residual(M.m, g, rhs), cond, RecoveryMethod::theorem,
                          std::move(warnings)};
    return report;
}

namespace detail {

struct FamilySystem {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    GradedOrder cols;

    FamilySystem(int n, int d) : cols(n, d) {}
};

inline FamilySystem build_family_system(const MomentVector& lambda, const IndexFamily& fam) {
    if (fam.n != lambda.dimension()) throw DimensionMismatch("family dimension mismatch");
    if (fam.d < 2 || fam.d % 2 != 0) {
        throw ParseError("recovery requires even degree d >= 2, got d = " + std::to_string(fam.d));
    }
    FamilySystem sys(fam.n, fam.d);
    const auto rows = static_cast<Eigen::Index>(fam.indices.size());
    const auto cols = static_cast<Eigen::Index>(sys.cols.size());

    std::vector<MultiIndex> missing;
    auto fetch = [&](const MultiIndex& gamma) {
        if (!lambda.has(gamma) && !lambda.implicit_zeros()) {
            missing.push_back(gamma);
            return 0.0;
        }
        return lambda.value(gamma);
    };

    sys.A.resize(rows, cols);
    sys.b.resize(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const MultiIndex& alpha = fam.indices[static_cast<std::size_t>(r)];
        if (alpha.dimension() != fam.n) throw DimensionMismatch("family index dimension mismatch");
        const int a = alpha.degree();
        const double factor =
            static_cast<double>(fam.n + a) / static_cast<double>(fam.n + fam.d + a);
        sys.b(r) = factor * fetch(alpha);
        for (Eigen::Index c = 0; c < cols; ++c) {
            sys.A(r, c) = fetch(alpha + sys.cols.unrank(static_cast<std::size_t>(c)));
        }
    }
    if (!missing.empty()) {
        std::sort(missing.begin(), missing.end(),
                  [](const MultiIndex& x, const MultiIndex& y) { return GradedLess{}(x, y); });
        missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
        throw MissingMoment("missing moments for family system: " + format_missing(missing),
                            raw_indices(missing));
    }
    return sys;
}

inline RecoveryReport solve_family_system(const FamilySystem& sys, int n, int d,
                                          RecoveryMethod method, const RecoveryOptions& opt) {
    std::vector<std::string> warnings;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    const double cond =
        smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    if (!(cond <= opt.condition_limit)) throw_or_warn_singular(cond, opt, warnings);

    // SVD solve doubles as least squares for overdetermined systems and as
    // the pseudo-inverse in force mode.
    const Eigen::VectorXd g = svd.solve(sys.b);

    RecoveryReport report{polynomial_from_dense(n, d, g), relative_residual(sys.A, g, sys.b),
                          cond, method, std::move(warnings)};
    return report;
}

} // namespace detail

// One equation per alpha in the family; square systems solve directly,
// larger families in the least-squares sense.
inline RecoveryReport recover_family(const MomentVector& lambda, const IndexFamily& fam,
                                     const RecoveryOptions& opt = {}) {
    const std::size_t needed = monomial_count(fam.n, fam.d);
    if (fam.indices.size() < needed) {
        throw UnderdeterminedFamily("family has " + std::to_string(fam.indices.size()) +
                                    " indices, needs at least " + std::to_string(needed));
    }
    const auto sys = detail::build_family_system(lambda, fam);
    const auto method =
        fam.indices.size() == needed ? RecoveryMethod::family : RecoveryMethod::least_squares;
    return detail::solve_family_system(sys, fam.n, fam.d, method, opt);
}

// Weighted least squares over a (typically overdetermined) family. With no
// weights and an invertible square family this coincides with
// recover_family.
inline RecoveryReport recover_least_squares(const MomentVector& lambda, const IndexFamily& fam,
                                            const std::optional<std::vector<double>>& row_weights =
                                                std::nullopt,
                                            const RecoveryOptions& opt = {}) {
    const std::size_t needed = monomial_count(fam.n, fam.d);
    if (fam.indices.size() < needed) {
        throw UnderdeterminedFamily("family has " + std::to_string(fam.indices.size()) +
                                    " indices, needs at least " + std::to_string(needed));
    }
    auto sys = detail::build_family_system(lambda, fam);
    if (row_weights) {
        if (row_weights->size() != fam.indices.size()) {
            throw DimensionMismatch("weight count does not match family size");
        }
        for (Eigen::Index r = 0; r < sys.A.rows(); ++r) {
            const double w = (*row_weights)[static_cast<std::size_t>(r)];
            if (!(w > 0.0)) throw Error("row weights must be > 0");
            sys.A.row(r) *= w;
            sys.b(r) *= w;
        }
    }
    return detail::solve_family_system(sys, fam.n, fam.d, RecoveryMethod::least_squares, opt);
}

struct RoundtripResult {
    RecoveryReport report;
    double coeff_error = 0.0; // max-norm coefficient difference, graded order
};

// Forward moments of orders {d, 2d} by the radial engine, then Theorem-style
// recovery; the max-norm coefficient error makes "moments encode g"
// executable.
inline RoundtripResult roundtrip(const HomogeneousPolynomial& p, const QuadratureConfig& cfg = {},
                                 const RecoveryOptions& opt = {}) {
    const CompactnessCertificate cert = min_on_sphere(p, cfg);
    detail::require_feasible(p, cert);
    const MomentVector lambda = moments_radial(p, {p.degree(), 2 * p.degree()}, cfg);
    RecoveryReport report = recover_theorem(lambda, p.dimension(), p.degree(), opt);
    if (cert.near_degenerate()) {
        std::ostringstream os;
        os << "sphere minimum " << cert.min_value << " is near zero (bounding radius "
           << cert.radius << "); moments and recovery are ill-conditioned";
        report.warnings.push_back(os.str());
    }

    const auto truth = p.dense_coeffs();
    const auto got = report.polynomial.dense_coeffs();
    double err = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) err = std::max(err, std::abs(truth[i] - got[i]));
    return RoundtripResult{std::move(report), err};
}

} // namespace levelset
