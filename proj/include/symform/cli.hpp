#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "symform/compound.hpp"
#include "symform/concavity.hpp"
#include "symform/form_checks.hpp"
#include "symform/inequalities.hpp"
#include "symform/majorization.hpp"
#include "symform/matrix_io.hpp"
#include "symform/parallel.hpp"
#include "symform/report_json.hpp"
#include "symform/sampling.hpp"

namespace symform::cli {

// exit codes: 0 completed with zero confirmed violations, 1 confirmed
// violation(s) found, 2 usage/config error, 3 numerical failure
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

struct RunConfig {
    std::string command;  // eval | verify | probe | conjecture | forms | majorize | compound
    std::string form = "trace";
    std::string ineq;
    std::string target;
    std::string check;          // forms: axioms | hoelder | concavity
    std::string op = "verdict"; // majorize
    std::string family = "power_product";
    std::string tau_mode = "half";
    int n = 4;
    int m = 2;
    int k = 1;
    long trials = 1000;
    std::uint64_t seed = 0;
    double tol_abs = 1e-9;
    double tol_rel = 1e-8;
    double theta = 0.5;
    std::optional<double> r, s, p, q;
    std::optional<double> exponent;  // Hoelder p / multi_gt p
    std::optional<double> t;         // alt lower exponent
    bool log_domain = false;
    bool allow_invalid = false;
    bool second_diff = false;
    std::string out_path;
    std::string matrix_path, matrix_b_path;
    std::string a_path, b_path, d_path;
    std::string command_echo;
};

namespace detail {

struct VerifyOutcome {
    bool skipped = false;
    bool violated = false;
    double slack = std::numeric_limits<double>::infinity();
    IneqResult worst;  // the minimum-margin result of the trial
};

// margin to failure; t_identity's slack is the raw side difference, so its
// margin is the distance to the 1e-6 ceiling
inline double margin_of(const IneqResult& res) {
    return res.name == "t_identity" ? res.tol - res.slack : res.slack;
}

inline void track(VerifyOutcome& oc, IneqResult&& res) {
    const double margin = margin_of(res);
    if (margin < oc.slack || oc.worst.name.empty()) {
        oc.slack = margin;
        oc.worst = std::move(res);
    }
}

// One sampled trial of a named inequality; the input layout per name is
// fixed so a (seed, index) pair pins the whole trial.
inline VerifyOutcome verify_trial(const RunConfig& cfg, const FormDescriptor& form, long index,
                                  const QuadratureSpec& spec) {
    VerifyOutcome oc;
    RandomStream rng(derive_trial_seed(cfg.seed, static_cast<std::uint64_t>(index)));
    const int n = cfg.n;
    try {
        if (cfg.ineq == "matrix_hoelder") {
            const PSDMatrix a = sample_psd(rng, n);
            const PSDMatrix b = sample_psd(rng, n);
            if (cfg.exponent) {
                track(oc, check_matrix_hoelder(form, a, b, *cfg.exponent));
            } else {
                const double inf = std::numeric_limits<double>::infinity();
                for (double p : {1.25, 2.0, 4.0, inf}) track(oc, check_matrix_hoelder(form, a, b, p));
            }
        } else if (cfg.ineq == "alt") {
            const PSDMatrix a = sample_psd(rng, n);
            const PSDMatrix b = sample_psd(rng, n);
            // exponent floor: the 1/t outer power amplifies eigensolver
            // noise like exp(eps/t), so keep t away from the denormal edge
            const double s = cfg.s ? *cfg.s : 1e-3 + (1.0 - 1e-3) * rng.uniform();
            const double t = cfg.t ? *cfg.t : s * (1e-3 + (1.0 - 1e-3) * rng.uniform());
            track(oc, check_alt(form, a, b, std::min(t, s), s));
        } else if (cfg.ineq == "gt") {
            const HermitianMatrix a = sample_hermitian(rng, n);
            const HermitianMatrix b = sample_hermitian(rng, n);
            track(oc, check_gt(form, a, b));
        } else if (cfg.ineq == "exp_convex") {
            const HermitianMatrix a = sample_hermitian(rng, n);
            const HermitianMatrix b = sample_hermitian(rng, n);
            const double tau = rng.uniform();
            track(oc, check_exp_convex(form, a, b, 0.5));
            track(oc, check_exp_convex(form, a, b, tau));
        } else if (cfg.ineq == "multi_gt") {
            std::vector<HermitianMatrix> as;
            for (int j = 0; j < std::max(1, cfg.m); ++j) as.push_back(sample_hermitian(rng, n));
            track(oc, check_multi_gt(form, as, cfg.exponent ? *cfg.exponent : 2.0, spec));
        } else if (cfg.ineq == "t_identity") {
            const PSDMatrix a = sample_psd(rng, n);
            const HermitianMatrix b = sample_hermitian(rng, n);
            track(oc, check_t_identity(a, b, spec));
        } else if (cfg.ineq == "three_matrix") {
            const HermitianMatrix a1 = sample_hermitian(rng, n);
            const HermitianMatrix a2 = sample_hermitian(rng, n);
            const HermitianMatrix a3 = sample_hermitian(rng, n);
            track(oc, check_three_matrix(form, a1, a2, a3));
        } else if (cfg.ineq == "lie_product") {
            // moderate norms keep the fixed 1e-4 convergence floor honest
            const HermitianMatrix a = sample_hermitian(rng, n, 0.3);
            const HermitianMatrix b = sample_hermitian(rng, n, 0.3);
            track(oc, check_lie_product(a, b));
        } else if (cfg.ineq == "interpolation") {
            if (cfg.family == "power_product") {
                std::vector<PSDMatrix> factors;
                for (int j = 0; j < std::max(1, cfg.m); ++j) factors.push_back(sample_psd(rng, n));
                const GFamily fam = GFamily::power_product(factors);
                track(oc, check_interpolation(form, fam, InterpolationParams(cfg.theta, 2.0, 2.0, 2.0),
                                              spec));
            } else if (cfg.family == "epstein") {
                const PSDMatrix x = sample_psd(rng, n);
                const PSDMatrix c = sample_psd(rng, n);
                const ComplexMatrix k = gaussian_matrix(rng, n, n);
                const double r = cfg.r ? *cfg.r : rng.uniform_pos();
                const double s = cfg.s ? *cfg.s : rng.uniform_pos();
                const GFamily fam = GFamily::epstein(x, c, k, r, s);
                const double inf = std::numeric_limits<double>::infinity();
                track(oc, check_interpolation(form, fam, InterpolationParams(s, inf, 2.0, 2.0 / s),
                                              spec));
            } else if (cfg.family == "lieb_two_var") {
                const PSDMatrix x1 = sample_psd(rng, n);
                const PSDMatrix x2 = sample_psd(rng, cfg.m);
                const PSDMatrix c1 = sample_psd(rng, n);
                const PSDMatrix c2 = sample_psd(rng, cfg.m);
                const ComplexMatrix k = gaussian_matrix(rng, n, cfg.m);
                const double total = cfg.p && cfg.q ? *cfg.p + *cfg.q : rng.uniform_pos();
                const double frac = cfg.p && cfg.q ? *cfg.p / total
                                                   : std::clamp(rng.uniform(), 1e-6, 1.0 - 1e-6);
                const double p = total * frac, q = total - p;
                const double s = cfg.s ? *cfg.s : rng.uniform_pos();
                const GFamily fam = GFamily::lieb_two_var(x1, x2, c1, c2, k, p, q, s);
                track(oc, check_interpolation(
                              form, fam,
                              InterpolationParams(p / (p + q), 2.0 / s, 2.0 / s, 2.0 / s), spec));
            } else {
                throw InvalidInputError("unknown interpolation family '" + cfg.family + "'");
            }
        } else {
            throw InvalidInputError("unknown inequality '" + cfg.ineq + "'");
        }
        oc.violated = !oc.worst.pass;
    } catch (const InvalidInputError&) {
        throw;  // configuration problems abort the whole run
    } catch (const Error&) {
        oc.skipped = true;
    }
    return oc;
}

inline Json wall_time_field(const std::chrono::steady_clock::time_point& start) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    return std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
}

inline void emit(const RunConfig& cfg, Json report,
                 const std::chrono::steady_clock::time_point& start) {
    report["wall_time_ms"] = wall_time_field(start);
    if (!cfg.out_path.empty()) write_report(report, cfg.out_path);
}

}  // namespace detail

inline int cmd_eval(const RunConfig& cfg, const std::chrono::steady_clock::time_point& start) {
    const FormDescriptor form = parse_form(cfg.form);
    if (cfg.matrix_path.empty()) throw InvalidInputError("eval: --matrix is required");
    const PSDMatrix a(load_hermitian(cfg.matrix_path));
    const double value = eval_form_matrix(form, a);
    std::cout.precision(17);
    std::cout << value << "\n";
    Json report = report_envelope(cfg.command_echo, cfg.seed);
    report["form"] = form.to_string();
    report["value"] = value;
    detail::emit(cfg, std::move(report), start);
    return kExitOk;
}

inline int cmd_verify(const RunConfig& cfg, const std::chrono::steady_clock::time_point& start) {
    const FormDescriptor form = parse_form(cfg.form);
    const QuadratureSpec spec{};
    if (cfg.trials < 1) throw InvalidInputError("verify: trials must be >= 1");

    // configuration errors must surface before the parallel section
    detail::verify_trial(cfg, form, 0, spec);

    const auto outcomes = run_trials<detail::VerifyOutcome>(
        cfg.trials, [&](long i) { return detail::verify_trial(cfg, form, i, spec); });

    Json report = report_envelope(cfg.command_echo, cfg.seed);
    report["ineq"] = cfg.ineq;
    report["form"] = form.to_string();
    report["n"] = cfg.n;
    report["m"] = cfg.m;
    long completed = 0, skipped = 0, violations = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    Json failures = Json::array();
    for (long i = 0; i < cfg.trials; ++i) {
        const auto& oc = outcomes[static_cast<std::size_t>(i)];
        if (oc.skipped) {
            ++skipped;
            continue;
        }
        ++completed;
        min_slack = std::min(min_slack, oc.slack);
        if (oc.violated) {
            ++violations;
            if (failures.size() < 32) {
                Json f = to_json(oc.worst);
                f["trial"] = i;
                failures.push_back(std::move(f));
            }
        }
    }
    Json trials;
    trials["attempted"] = cfg.trials;
    trials["completed"] = completed;
    trials["skipped"] = skipped;
    report["trials"] = std::move(trials);
    report["violations"] = violations;
    report["failures"] = std::move(failures);
    report["min_slack"] = finite_or_null(min_slack);
    report["pass"] = violations == 0;
    std::cout << "verify " << cfg.ineq << " form=" << form.to_string() << " n=" << cfg.n
              << " trials=" << completed << "/" << cfg.trials << " min_slack=" << min_slack << " "
              << (violations == 0 ? "PASS" : "FAIL") << "\n";
    detail::emit(cfg, std::move(report), start);
    return violations == 0 ? kExitOk : kExitViolation;
}

namespace detail {

inline ProbeTarget make_target(const RunConfig& cfg) {
    ProbeTarget target;
    target.kind = parse_target_kind(cfg.target);
    target.r = cfg.r;
    target.s = cfg.s;
    target.p = cfg.p;
    target.q = cfg.q;
    target.allow_invalid = cfg.allow_invalid;
    return target;
}

inline ProbeConfig make_probe_config(const RunConfig& cfg) {
    ProbeConfig pc;
    pc.n = cfg.n;
    pc.m = cfg.m;
    pc.trials = cfg.trials;
    pc.seed = cfg.seed;
    pc.tol_abs = cfg.tol_abs;
    pc.tol_rel = cfg.tol_rel;
    if (cfg.tau_mode == "uniform")
        pc.tau_mode = TauMode::uniform;
    else if (cfg.tau_mode == "half")
        pc.tau_mode = TauMode::fixed_half;
    else
        throw InvalidInputError("unknown tau mode '" + cfg.tau_mode + "'");
    pc.require_hoelder = !cfg.allow_invalid;
    return pc;
}

inline void print_probe_line(const ProbeReport& r) {
    std::cout << r.label << " trials=" << r.completed << "/" << r.attempted
              << " violations=" << r.violations.size() << " confirmed=" << r.confirmed_violations
              << " min_slack=" << r.min_slack << "\n";
}

}  // namespace detail

inline int cmd_probe(const RunConfig& cfg, const std::chrono::steady_clock::time_point& start) {
    const FormDescriptor form = parse_form(cfg.form);
    const ProbeTarget target = detail::make_target(cfg);
    ProbeConfig pc = detail::make_probe_config(cfg);
    if (cfg.allow_invalid) pc.require_hoelder = false;

    const ProbeReport report = cfg.second_diff ? probe_second_difference(target, form, pc)
                                               : probe_midpoint(target, form, pc);
    detail::print_probe_line(report);

    Json j = report_envelope(cfg.command_echo, cfg.seed);
    j["form"] = form.to_string();
    j["target"] = cfg.target;
    j["n"] = cfg.n;
    j["m"] = cfg.m;
    j["probe"] = to_json(report);
    detail::emit(cfg, std::move(j), start);
    return report.confirmed_violations == 0 ? kExitOk : kExitViolation;
}

inline int cmd_conjecture(const RunConfig& cfg, const std::chrono::steady_clock::time_point& start) {
    const ProbeTarget target = detail::make_target(cfg);
    ProbeConfig pc = detail::make_probe_config(cfg);
    const auto [mid, sd] = conjecture_search(cfg.k, cfg.n, target, pc);
    detail::print_probe_line(mid);
    detail::print_probe_line(sd);

    Json j = report_envelope(cfg.command_echo, cfg.seed);
    j["k"] = cfg.k;
    j["n"] = cfg.n;
    j["target"] = cfg.target;
    j["midpoint"] = to_json(mid);
    j["second_difference"] = to_json(sd);
    const long confirmed = mid.confirmed_violations + sd.confirmed_violations;
    j["confirmed_violations"] = confirmed;
    detail::emit(cfg, std::move(j), start);
    return confirmed == 0 ? kExitOk : kExitViolation;
}

inline int cmd_forms(const RunConfig& cfg, const std::chrono::steady_clock::time_point& start) {
    const FormDescriptor form = parse_form(cfg.form);
    FormPropertyReport report;
    if (cfg.check == "axioms")
        report = check_axioms(form, cfg.n, cfg.trials, cfg.seed);
    else if (cfg.check == "hoelder")
        report = check_hoelder(form, cfg.n, cfg.trials, cfg.seed);
    else if (cfg.check == "concavity")
        report = check_concavity_vector(form, cfg.n, cfg.trials, cfg.seed);
    else
        throw InvalidInputError("forms: --check must be axioms | hoelder | concavity");

    std::cout << "forms " << cfg.check << " form=" << form.to_string() << " n=" << cfg.n << " "
              << (report.pass() ? "PASS" : "FAIL") << "\n";
    Json j = report_envelope(cfg.command_echo, cfg.seed);
    j["form"] = form.to_string();
    j["check"] = cfg.check;
    j["n"] = cfg.n;
    j["report"] = to_json(report);
    detail::emit(cfg, std::move(j), start);
    return report.pass() ? kExitOk : kExitViolation;
}

inline int cmd_majorize(const RunConfig& cfg, const std::chrono::steady_clock::time_point& start) {
    Json j = report_envelope(cfg.command_echo, cfg.seed);
    j["op"] = cfg.op;

    const auto need_ab = [&]() -> std::pair<RealVector, RealVector> {
        if (cfg.a_path.empty() || cfg.b_path.empty())
            throw InvalidInputError("majorize: --a and --b vector files are required");
        return {load_vector(cfg.a_path), load_vector(cfg.b_path)};
    };

    if (cfg.op == "verdict") {
        const auto [a, b] = need_ab();
        const MajorizationVerdict v = verdict(a, b, cfg.log_domain);
        std::cout << "weak=" << (v.weak ? "true" : "false")
                  << " strict=" << (v.strict ? "true" : "false") << " min_slack=" << v.min_slack()
                  << "\n";
        j["verdict"] = to_json(v);
    } else if (cfg.op == "bridge") {
        const auto [a, b] = need_ab();
        const RealVector c = bridge(a, b);
        j["c"] = std::vector<double>(c.data(), c.data() + c.size());
        j["verdict_c_b"] = to_json(verdict(c, b));
        std::cout << "bridge ok, |c|_1=" << c.cwiseAbs().sum() << "\n";
    } else if (cfg.op == "ds") {
        const auto [a, b] = need_ab();
        const RealMatrix d = ds_from_majorization(a, b);
        Json rows = Json::array();
        for (Eigen::Index i = 0; i < d.rows(); ++i)
            rows.push_back(std::vector<double>(d.row(i).begin(), d.row(i).end()));
        j["d"] = std::move(rows);
        j["residual"] = (d * b - a).cwiseAbs().maxCoeff();
        std::cout << "ds ok, residual=" << j["residual"].get<double>() << "\n";
    } else if (cfg.op == "birkhoff") {
        RealMatrix d;
        if (!cfg.d_path.empty()) {
            const ComplexMatrix dm = load_matrix(cfg.d_path);
            if (dm.imag().cwiseAbs().maxCoeff() > 0.0)
                throw InvalidInputError("birkhoff: matrix must be real");
            d = dm.real();
        } else {
            const auto [a, b] = need_ab();
            d = ds_from_majorization(a, b);
        }
        const auto terms = birkhoff(d);
        Json jt = Json::array();
        RealMatrix recon = RealMatrix::Zero(d.rows(), d.cols());
        double weight_sum = 0.0;
        for (const auto& term : terms) {
            Json one;
            one["weight"] = term.weight;
            one["permutation"] = term.permutation;
            jt.push_back(std::move(one));
            recon += term.weight * permutation_matrix(term.permutation);
            weight_sum += term.weight;
        }
        j["terms"] = std::move(jt);
        j["weight_sum"] = weight_sum;
        j["reconstruction_error"] = (recon - d).cwiseAbs().maxCoeff();
        std::cout << "birkhoff terms=" << terms.size() << " weight_sum=" << weight_sum << "\n";
    } else {
        throw InvalidInputError("majorize: --op must be verdict | bridge | ds | birkhoff");
    }
    detail::emit(cfg, std::move(j), start);
    return kExitOk;
}

inline int cmd_compound(const RunConfig& cfg, const std::chrono::steady_clock::time_point& start) {
    ComplexMatrix a, b;
    if (!cfg.matrix_path.empty()) {
        a = load_matrix(cfg.matrix_path);
        b = cfg.matrix_b_path.empty() ? sample(SampleKind::general, a.rows(), cfg.seed + 1)
                                      : load_matrix(cfg.matrix_b_path);
    } else {
        a = sample(SampleKind::general, cfg.n, cfg.seed);
        b = sample(SampleKind::general, cfg.n, cfg.seed + 1);
    }
    const CompoundPropertyReport report = compound_property_check(a, b, cfg.k);
    std::cout << "compound k=" << cfg.k << " n=" << a.rows() << " "
              << (report.pass ? "PASS" : "FAIL") << "\n";
    Json j = report_envelope(cfg.command_echo, cfg.seed);
    j["k"] = cfg.k;
    j["n"] = a.rows();
    j["report"] = to_json(report);
    detail::emit(cfg, std::move(j), start);
    return report.pass ? kExitOk : kExitViolation;
}

inline int run_command(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    try {
        if (cfg.command == "eval") return cmd_eval(cfg, start);
        if (cfg.command == "verify") return cmd_verify(cfg, start);
        if (cfg.command == "probe") return cmd_probe(cfg, start);
        if (cfg.command == "conjecture") return cmd_conjecture(cfg, start);
        if (cfg.command == "forms") return cmd_forms(cfg, start);
        if (cfg.command == "majorize") return cmd_majorize(cfg, start);
        if (cfg.command == "compound") return cmd_compound(cfg, start);
        throw InvalidInputError("unknown command '" + cfg.command + "'");
    } catch (const InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionFailedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace symform::cli
