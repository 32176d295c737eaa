// Command-line driver: forward moment generation, recovery from external
// moments, round-trip validation, identity verification, and conditioning
// reports, all file-based for reproducible batch runs.
//
// Exit codes: 0 success, 2 noncompact level set, 3 parse/input error,
// 4 singular system, 5 missing moments, 1 anything else.

#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "levelset/levelset.hpp"

namespace {

using namespace levelset;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitNotCompact = 2;
constexpr int kExitParse = 3;
constexpr int kExitSingular = 4;
constexpr int kExitMissingMoment = 5;

struct CommonOpts {
    std::string poly_file;
    std::string builtin;
    int builtin_dim = 2;
    int sphere_points = 4096;
    long long samples = 1'000'000;
    std::uint64_t seed = 42;
    std::string engine = "radial";
    std::string out;
    std::string format = "json";
    double tol = 1e-8;
    bool force = false;
};

QuadratureConfig quad_config(const CommonOpts& o) {
    QuadratureConfig cfg;
    cfg.sphere_points = o.sphere_points;
    cfg.mc_samples = o.samples;
    cfg.seed = o.seed;
    return cfg;
}

void emit(const CommonOpts& o, const std::string& content) {
    if (o.out.empty()) {
        std::fputs(content.c_str(), stdout);
    } else {
        write_text_file(o.out, content);
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

HomogeneousPolynomial load_polynomial(const std::string& path) {
    return polynomial_from_json(parse_json(read_text_file(path), path));
}

MomentVector load_moments(const std::string& path) {
    return moments_from_json(parse_json(read_text_file(path), path));
}

// "--orders d,2d": tokens are integers or the symbols d / 2d, resolved
// against the integrand's declared degree.
std::set<int> parse_orders(const std::string& spec, int degree) {
    std::set<int> orders;
    std::string token;
    std::istringstream is(spec);
    while (std::getline(is, token, ',')) {
        if (token == "d") {
            orders.insert(degree);
        } else if (token == "2d") {
            orders.insert(2 * degree);
        } else {
            try {
                std::size_t pos = 0;
                const int v = std::stoi(token, &pos);
                if (pos != token.size() || v < 0) throw std::invalid_argument(token);
                orders.insert(v);
            } catch (const std::exception&) {
                throw ParseError("bad order token \"" + token + "\" (expected integer, d, or 2d)");
            }
        }
    }
    if (orders.empty()) throw ParseError("no moment orders requested");
    return orders;
}

void warn_near_degenerate(const CompactnessCertificate& cert) {
    if (cert.near_degenerate()) {
        std::fprintf(stderr,
                     "warning: sphere minimum %.3e is near zero (bounding radius %.3e); "
                     "results are ill-conditioned\n",
                     cert.min_value, cert.radius);
    }
}

template <PositivelyHomogeneous F>
int run_moments_for(const F& f, const CommonOpts& o, const std::string& orders_spec) {
    const QuadratureConfig cfg = quad_config(o);
    const auto orders = parse_orders(orders_spec, static_cast<int>(f.degree()));
    const CompactnessCertificate cert = min_on_sphere(f, cfg);
    detail::require_feasible(f, cert);
    warn_near_degenerate(cert);

    const MomentVector mv =
        o.engine == "mc" ? moments_mc(f, orders, cfg) : moments_radial(f, orders, cfg);
    emit(o, o.format == "csv" ? moments_to_csv(mv) : dump(moments_to_json(mv)));
    return kExitOk;
}

int run_moments(const CommonOpts& o, const std::string& orders_spec) {
    if (!o.builtin.empty()) {
        if (o.builtin != "euclidean-norm") throw ParseError("unknown builtin \"" + o.builtin + "\"");
        return run_moments_for(EuclideanNorm(o.builtin_dim), o, orders_spec);
    }
    return run_moments_for(load_polynomial(o.poly_file), o, orders_spec);
}

int run_recover(const CommonOpts& o, const std::string& moments_file,
                const std::string& family_file, int degree) {
    const MomentVector mv = load_moments(moments_file);
    RecoveryOptions opt;
    opt.force = o.force;

    RecoveryReport report = [&] {
        if (!family_file.empty()) {
            IndexFamily fam = family_from_json(parse_json(read_text_file(family_file), family_file));
            if (degree > 0 && degree != fam.d) {
                throw ParseError("--degree disagrees with the family file's d");
            }
            return recover_family(mv, fam, opt);
        }
        if (degree <= 0) throw ParseError("recover requires --degree (or a --family file)");
        return recover_theorem(mv, mv.dimension(), degree, opt);
    }();

    for (const auto& w : report.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    emit(o, o.format == "csv" ? report_to_csv(report) : dump(report_to_json(report)));
    return kExitOk;
}

int run_roundtrip(const CommonOpts& o) {
    const HomogeneousPolynomial p = load_polynomial(o.poly_file);
    QuadratureConfig cfg = quad_config(o);
    RecoveryOptions opt;
    opt.force = o.force;

    const RoundtripResult rt = roundtrip(p, cfg, opt);
    for (const auto& w : rt.report.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

    json j = report_to_json(rt.report);
    j["coeff_error"] = rt.coeff_error;
    if (!o.out.empty() || o.format == "csv") {
        emit(o, o.format == "csv" ? report_to_csv(rt.report) : dump(j));
    } else {
        std::fputs(dump(j).c_str(), stdout);
    }
    std::fprintf(stderr, "coeff_error = %s (tol %s)\n", format_number(rt.coeff_error).c_str(),
                 format_number(o.tol).c_str());
    return rt.coeff_error <= o.tol ? kExitOk : kExitFailure;
}

template <PositivelyHomogeneous F>
int run_verify_lemma_for(const F& f, const CommonOpts& o, const std::string& k_spec,
                         int alpha_max) {
    const QuadratureConfig cfg = quad_config(o);
    std::vector<int> ks;
    {
        std::istringstream is(k_spec);
        std::string token;
        while (std::getline(is, token, ',')) {
            try {
                ks.push_back(std::stoi(token));
            } catch (const std::exception&) {
                throw ParseError("bad k token \"" + token + "\"");
            }
        }
        if (ks.empty()) throw ParseError("no k values requested");
    }
    if (alpha_max < 0) alpha_max = static_cast<int>(f.degree());

    std::vector<Lemma1Row> rows;
    double max_relerr = 0.0;
    for (int k : ks) {
        for (int o_deg = 0; o_deg <= alpha_max; ++o_deg) {
            for (const auto& alpha : enumerate_degree(f.dimension(), o_deg)) {
                Lemma1Row row{k, alpha, lemma1_check(f, k, alpha, cfg)};
                max_relerr = std::max(max_relerr, row.result.relerr);
                rows.push_back(std::move(row));
            }
        }
    }
    emit(o, lemma_table_to_csv(rows));
    std::fprintf(stderr, "max relerr = %s (tol %s)\n", format_number(max_relerr).c_str(),
                 format_number(o.tol).c_str());
    return max_relerr <= o.tol ? kExitOk : kExitFailure;
}

int run_verify_lemma(const CommonOpts& o, const std::string& k_spec, int alpha_max) {
    if (!o.builtin.empty()) {
        if (o.builtin != "euclidean-norm") throw ParseError("unknown builtin \"" + o.builtin + "\"");
        return run_verify_lemma_for(EuclideanNorm(o.builtin_dim), o, k_spec, alpha_max);
    }
    return run_verify_lemma_for(load_polynomial(o.poly_file), o, k_spec, alpha_max);
}

int run_report(const CommonOpts& o, const std::string& moments_file, int degree) {
    if (degree <= 0) throw ParseError("report requires --degree");
    const MomentVector mv = load_moments(moments_file);
    const MomentMatrix M = build_moment_matrix(mv, mv.dimension(), degree);
    const Eigen::VectorXd ev = symmetric_eigenvalues(M);
    const double cond = condition_report(M);

    json j = {{"n", M.n},
              {"d", M.d},
              {"size", static_cast<int>(M.order.size())},
              {"condition", std::isfinite(cond) ? json(cond) : json(nullptr)},
              {"eigenvalue_min", ev(0)},
              {"eigenvalue_max", ev(ev.size() - 1)},
              {"warnings", json::array()}};
    if (!(cond <= 1e12)) {
        j["warnings"].push_back("condition exceeds 1e12: recovery from these moments is "
                                "numerically singular");
    }
    emit(o, dump(j));
    return kExitOk;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool wants_poly, bool wants_engine) {
    if (wants_poly) {
        cmd->add_option("--poly", o.poly_file, "polynomial JSON file");
        cmd->add_option("--builtin", o.builtin, "built-in evaluator (euclidean-norm)");
        cmd->add_option("--dim", o.builtin_dim, "dimension for --builtin")->check(CLI::PositiveNumber);
    }
    if (wants_engine) {
        cmd->add_option("--engine", o.engine, "moment engine")
            ->check(CLI::IsMember({"radial", "mc"}))
            ->capture_default_str();
        cmd->add_option("--sphere-points", o.sphere_points, "sphere quadrature node target")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--samples", o.samples, "Monte Carlo sample count")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--seed", o.seed, "RNG seed")->envname("LEVELSET_SEED")->capture_default_str();
    }
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lebesgue moments of {x : g(x) <= 1} for homogeneous g, and exact recovery "
                 "of g from moments of orders d and 2d"};
    app.require_subcommand(1);

    CommonOpts mo;
    std::string orders_spec = "d,2d";
    auto* cmd_moments = app.add_subcommand("moments", "compute moments of the level set");
    add_common(cmd_moments, mo, true, true);
    cmd_moments->add_option("--orders", orders_spec, "comma list of orders (integer, d, 2d)")
        ->capture_default_str();

    CommonOpts ro;
    std::string rec_moments_file, rec_family_file;
    int rec_degree = 0;
    auto* cmd_recover = app.add_subcommand("recover", "recover g from a moment file");
    add_common(cmd_recover, ro, false, false);
    cmd_recover->add_option("--moments", rec_moments_file, "moment JSON file")->required();
    cmd_recover->add_option("--degree,-d", rec_degree, "degree of the polynomial to recover");
    cmd_recover->add_option("--family", rec_family_file, "index family JSON file");
    cmd_recover->add_flag("--force", ro.force, "demote singularity errors to warnings");

    CommonOpts to;
    to.tol = 1e-6;
    auto* cmd_roundtrip = app.add_subcommand("roundtrip", "forward moments then recovery; "
                                                          "exit 0 iff max coefficient error <= --tol");
    add_common(cmd_roundtrip, to, true, true);
    cmd_roundtrip->add_option("--tol", to.tol, "coefficient error tolerance")->capture_default_str();
    cmd_roundtrip->add_flag("--force", to.force, "demote singularity errors to warnings");

    CommonOpts vo;
    std::string k_spec = "0,1,2,3";
    int alpha_max = -1;
    auto* cmd_verify = app.add_subcommand("verify-lemma", "check the homogeneity identity; "
                                                          "emits a (k, alpha, lhs, rhs, relerr) CSV table");
    add_common(cmd_verify, vo, true, true);
    cmd_verify->add_option("--k", k_spec, "comma list of k values")->capture_default_str();
    cmd_verify->add_option("--alpha-max", alpha_max, "check all |alpha| <= this (default: degree)");
    cmd_verify->add_option("--tol", vo.tol, "max acceptable relative error")->capture_default_str();

    CommonOpts po;
    std::string rep_moments_file;
    int rep_degree = 0;
    auto* cmd_report = app.add_subcommand("report", "conditioning diagnostics of M_d(lambda)");
    add_common(cmd_report, po, false, false);
    cmd_report->add_option("--moments", rep_moments_file, "moment JSON file")->required();
    cmd_report->add_option("--degree,-d", rep_degree, "moment matrix degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (cmd_moments->parsed()) return run_moments(mo, orders_spec);
        if (cmd_recover->parsed()) return run_recover(ro, rec_moments_file, rec_family_file, rec_degree);
        if (cmd_roundtrip->parsed()) return run_roundtrip(to);
        if (cmd_verify->parsed()) return run_verify_lemma(vo, k_spec, alpha_max);
        if (cmd_report->parsed()) return run_report(po, rep_moments_file, rep_degree);
        return kExitFailure;
    } catch (const NotCompact& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNotCompact;
    } catch (const MissingMoment& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitMissingMoment;
    } catch (const SingularMatrix& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSingular;
    } catch (const UnderdeterminedFamily& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParse;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParse;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }
}
