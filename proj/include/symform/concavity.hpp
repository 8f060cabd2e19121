#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symform/forms.hpp"
#include "symform/majorization.hpp"
#include "symform/matrix_functions.hpp"
#include "symform/parallel.hpp"
#include "symform/sampling.hpp"
#include "symform/seeding.hpp"

namespace symform {

enum class TargetKind { epstein, lieb, exp_log };

inline TargetKind parse_target_kind(const std::string& s) {
    if (s == "epstein") return TargetKind::epstein;
    if (s == "lieb") return TargetKind::lieb;
    if (s == "exp_log") return TargetKind::exp_log;
    throw InvalidInputError("unknown target '" + s + "'");
}

inline std::string target_kind_name(TargetKind k) {
    switch (k) {
        case TargetKind::epstein: return "epstein";
        case TargetKind::lieb: return "lieb";
        case TargetKind::exp_log: return "exp_log";
    }
    return "?";
}

// One of the three concave maps under test. Components left unset are
// sampled per trial from their legal ranges; fixed components pin the map.
// allow_invalid skips range validation for detector-power experiments
// (p + q > 1 and similar deliberately broken maps).
struct ProbeTarget {
    TargetKind kind = TargetKind::epstein;
    std::optional<double> r, s, p, q;
    std::optional<std::vector<double>> weights;  // exp_log
    std::optional<ComplexMatrix> k_matrix;       // epstein n x n, lieb n x m
    std::optional<ComplexMatrix> h_matrix;       // exp_log, Hermitian
    bool allow_invalid = false;
};

enum class TauMode { fixed_half, uniform };

struct ProbeConfig {
    int n = 3;
    int m = 3;  // lieb: dimension of the B argument; exp_log: number of arguments
    long trials = 1000;
    std::uint64_t seed = 0;
    TauMode tau_mode = TauMode::fixed_half;
    double tol_abs = 1e-9;
    double tol_rel = 1e-8;
    std::vector<double> h_steps = {1e-2, 1e-3};
    bool require_hoelder = true;
    double confirm_tol = 1e-6;  // absolute gap for the counterexample claim

    void validate() const {
        if (n < 1 || m < 1) throw InvalidInputError("ProbeConfig: dimensions must be >= 1");
        if (trials < 1) throw InvalidInputError("ProbeConfig: trials must be >= 1");
        if (!(tol_abs > 0.0 && tol_rel > 0.0 && confirm_tol > 0.0))
            throw InvalidInputError("ProbeConfig: tolerances must be positive");
        for (double h : h_steps)
            if (!(h > 0.0)) throw InvalidInputError("ProbeConfig: h steps must be positive");
    }
};

// A concrete target with every component pinned for one trial.
struct TargetInstance {
    TargetKind kind;
    int n = 1, m = 1;
    double r = 1.0, s = 1.0, p = 1.0, q = 0.0;
    std::vector<double> weights;
    ComplexMatrix k;
    ComplexMatrix h;

    // number of PSD arguments the map takes
    int arity() const {
        switch (kind) {
            case TargetKind::epstein: return 1;
            case TargetKind::lieb: return 2;
            case TargetKind::exp_log: return m;
        }
        return 0;
    }

    // dimension of the spectrum the form sees
    int form_dim() const { return kind == TargetKind::lieb ? m : n; }
};

namespace detail {

inline void require_unit(double v, const char* name) {
    if (!(v > 0.0 && v <= 1.0))
        throw InvalidInputError(std::string("ProbeTarget: ") + name + " must be in (0,1]");
}

// entrywise power of a clamped descending spectrum; positive exponents
// preserve the ordering
inline RealVector spectrum_pow(const RealVector& lam, double e) {
    RealVector out(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) out[i] = std::pow(std::max(lam[i], 0.0), e);
    return out;
}

}  // namespace detail

// Pin every unset component from the trial stream. Consumption order is
// fixed (parameters, then K or H) so trials are reproducible from the seed.
inline TargetInstance materialize(const ProbeTarget& target, const ProbeConfig& config,
                                  RandomStream& rng) {
    TargetInstance inst;
    inst.kind = target.kind;
    inst.n = config.n;
    inst.m = config.m;
    switch (target.kind) {
        case TargetKind::epstein: {
            inst.r = target.r ? *target.r : rng.uniform_pos();
            inst.s = target.s ? *target.s : rng.uniform_pos();
            if (!target.allow_invalid) {
                detail::require_unit(inst.r, "r");
                detail::require_unit(inst.s, "s");
            }
            inst.k = target.k_matrix ? *target.k_matrix : gaussian_matrix(rng, inst.n, inst.n);
            if (inst.k.rows() != inst.n || inst.k.cols() != inst.n)
                throw InvalidInputError("ProbeTarget: K must be n x n for the epstein map");
            break;
        }
        case TargetKind::lieb: {
            inst.s = target.s ? *target.s : rng.uniform_pos();
            if (target.p && target.q) {
                inst.p = *target.p;
                inst.q = *target.q;
            } else if (target.p) {
                inst.p = *target.p;
                inst.q = std::max(0.0, 1.0 - inst.p) * rng.uniform_pos();
            } else if (target.q) {
                inst.q = *target.q;
                inst.p = std::max(0.0, 1.0 - inst.q) * rng.uniform_pos();
            } else {
                // uniform over the open legal triangle p, q > 0, p + q <= 1
                const double total = rng.uniform_pos();
                const double f = std::clamp(rng.uniform(), 1e-12, 1.0 - 1e-12);
                inst.p = total * f;
                inst.q = total * (1.0 - f);
            }
            if (!target.allow_invalid) {
                detail::require_unit(inst.s, "s");
                detail::require_unit(inst.p, "p");
                detail::require_unit(inst.q, "q");
                if (inst.p + inst.q > 1.0 + 1e-12)
                    throw InvalidInputError("ProbeTarget: p + q must be <= 1");
            }
            inst.k = target.k_matrix ? *target.k_matrix : gaussian_matrix(rng, inst.n, inst.m);
            if (inst.k.rows() != inst.n || inst.k.cols() != inst.m)
                throw InvalidInputError("ProbeTarget: K must be n x m for the lieb map");
            break;
        }
        case TargetKind::exp_log: {
            if (target.weights) {
                inst.weights = *target.weights;
            } else {
                // scaled simplex draw: positive weights with total <= 1
                std::vector<double> g(static_cast<std::size_t>(inst.m));
                double sum = 0.0;
                for (auto& v : g) sum += (v = rng.uniform_pos());
                const double total = rng.uniform_pos();
                inst.weights.resize(g.size());
                for (std::size_t j = 0; j < g.size(); ++j) inst.weights[j] = total * g[j] / sum;
            }
            if (static_cast<int>(inst.weights.size()) != inst.m)
                throw InvalidInputError("ProbeTarget: weight count must equal m");
            if (!target.allow_invalid) {
                double sum = 0.0;
                for (double w : inst.weights) {
                    detail::require_unit(w, "p_j");
                    sum += w;
                }
                if (sum > 1.0 + 1e-12)
                    throw InvalidInputError("ProbeTarget: sum of p_j must be <= 1");
            }
            inst.h = target.h_matrix ? *target.h_matrix
                                     : sample_hermitian(rng, inst.n, 1.0).matrix();
            if (inst.h.rows() != inst.n || inst.h.cols() != inst.n)
                throw InvalidInputError("ProbeTarget: H must be n x n");
            break;
        }
    }
    return inst;
}

using TargetInputs = std::vector<PSDMatrix>;

inline TargetInputs sample_inputs(const TargetInstance& inst, RandomStream& rng) {
    TargetInputs inputs;
    const int arity = inst.arity();
    inputs.reserve(static_cast<std::size_t>(arity));
    for (int j = 0; j < arity; ++j) {
        const int dim = (inst.kind == TargetKind::lieb && j == 1) ? inst.m : inst.n;
        inputs.push_back(sample_psd(rng, dim, 1.0));
    }
    return inputs;
}

inline TargetInputs blend_inputs(const TargetInputs& a, const TargetInputs& b, double tau) {
    if (a.size() != b.size()) throw InvalidInputError("blend_inputs: arity mismatch");
    TargetInputs c;
    c.reserve(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
        c.push_back(PSDMatrix::from_symmetrized(tau * a[j].matrix() + (1.0 - tau) * b[j].matrix()));
    return c;
}

// Spectrum of the map value F(inputs), descending. The outer power/exp are
// monotone, so they act entrywise on the sorted inner spectrum.
inline RealVector target_spectrum(const TargetInstance& inst, const TargetInputs& inputs) {
    if (static_cast<int>(inputs.size()) != inst.arity())
        throw InvalidInputError("eval_target: wrong number of inputs");
    switch (inst.kind) {
        case TargetKind::epstein: {
            const PSDMatrix& a = inputs[0];
            if (a.dim() != inst.n) throw InvalidInputError("eval_target: dimension mismatch");
            const PSDMatrix inner = PSDMatrix::from_symmetrized(
                inst.k.adjoint() * matrix_pow(a, inst.r * inst.s) * inst.k);
            return detail::spectrum_pow(inner.spectrum(), 1.0 / inst.s);
        }
        case TargetKind::lieb: {
            const PSDMatrix& a = inputs[0];
            const PSDMatrix& b = inputs[1];
            if (a.dim() != inst.n || b.dim() != inst.m)
                throw InvalidInputError("eval_target: dimension mismatch");
            const ComplexMatrix bh = matrix_pow(b, inst.q * inst.s / 2.0);
            const PSDMatrix inner = PSDMatrix::from_symmetrized(
                bh * inst.k.adjoint() * matrix_pow(a, inst.p * inst.s) * inst.k * bh);
            return detail::spectrum_pow(inner.spectrum(), 1.0 / inst.s);
        }
        case TargetKind::exp_log: {
            ComplexMatrix l = inst.h;
            for (std::size_t j = 0; j < inputs.size(); ++j) {
                if (inputs[j].dim() != inst.n) throw InvalidInputError("eval_target: dimension mismatch");
                l += inst.weights[j] * matrix_log(inputs[j]);
            }
            const RealVector lam = eigh(HermitianMatrix::from_symmetrized(l)).lambda;
            return lam.array().exp().matrix();
        }
    }
    throw InvalidInputError("eval_target: unreachable kind");
}

inline double eval_target(const TargetInstance& inst, const FormDescriptor& form,
                          const TargetInputs& inputs) {
    return eval_form(form, target_spectrum(inst, inputs));
}

namespace detail {

inline std::string digest_inputs(const TargetInstance& inst, const TargetInputs& a,
                                 const TargetInputs& b) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    h = digest(inst.k.size() ? inst.k : ComplexMatrix::Zero(1, 1), h);
    h = digest(inst.h.size() ? inst.h : ComplexMatrix::Zero(1, 1), h);
    for (const auto& x : a) h = digest(x.matrix(), h);
    for (const auto& x : b) h = digest(x.matrix(), h);
    return digest_hex(h);
}

}  // namespace detail

struct ViolationRecord {
    long trial_index = 0;
    double tau = 0.0;  // mixing parameter, or the step h for second differences
    double lhs = 0.0;  // phi(F(C)), or 2 phi(F(C)) in the second-difference probe
    double rhs = 0.0;  // tau phi(F(A)) + (1-tau) phi(F(B)), or the two-sided sum
    double gap = 0.0;  // rhs - lhs, positive at a violation
    bool confirmed = false;
    std::string check;  // "midpoint" or "second_difference"
    std::string inputs_digest;
    std::map<std::string, double> params;
};

struct ProbeReport {
    std::string label;
    std::uint64_t seed = 0;
    long attempted = 0;
    long completed = 0;
    long skipped = 0;
    std::vector<ViolationRecord> violations;  // sorted by trial index
    long confirmed_violations = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    double max_gap = 0.0;
};

namespace detail {

struct TrialOutcome {
    bool skipped = false;
    bool violated = false;
    double slack = 0.0;
    ViolationRecord record;
};

inline void fill_params(ViolationRecord& rec, const TargetInstance& inst) {
    switch (inst.kind) {
        case TargetKind::epstein:
            rec.params["r"] = inst.r;
            rec.params["s"] = inst.s;
            break;
        case TargetKind::lieb:
            rec.params["p"] = inst.p;
            rec.params["q"] = inst.q;
            rec.params["s"] = inst.s;
            break;
        case TargetKind::exp_log:
            for (std::size_t j = 0; j < inst.weights.size(); ++j)
                rec.params["p" + std::to_string(j + 1)] = inst.weights[j];
            break;
    }
}

template <typename TrialFn>
ProbeReport aggregate_probe(const std::string& label, const ProbeConfig& config, TrialFn&& trial) {
    ProbeReport report;
    report.label = label;
    report.seed = config.seed;
    report.attempted = config.trials;

    const auto outcomes = run_trials<TrialOutcome>(config.trials, trial);
    for (long i = 0; i < config.trials; ++i) {
        const auto& oc = outcomes[static_cast<std::size_t>(i)];
        if (oc.skipped) {
            ++report.skipped;
            continue;
        }
        ++report.completed;
        if (oc.violated) {
            report.violations.push_back(oc.record);
            report.max_gap = std::max(report.max_gap, oc.record.gap);
        } else {
            report.min_slack = std::min(report.min_slack, oc.slack);
        }
    }

    // Confirmation protocol: regenerate the trial from its seed and re-check
    // the gap at the tightened absolute tolerance before claiming anything.
    for (auto& v : report.violations) {
        const TrialOutcome again = trial(v.trial_index);
        const bool reproduced = again.violated &&
                                std::abs(again.record.lhs - v.lhs) <= 1e-12 &&
                                std::abs(again.record.rhs - v.rhs) <= 1e-12;
        v.confirmed = reproduced && v.gap > config.confirm_tol;
        if (v.confirmed) ++report.confirmed_violations;
    }
    return report;
}

inline void gate_form(const FormDescriptor& form, const ProbeConfig& config, int form_dim,
                      const char* who) {
    if (config.require_hoelder && !form_is_hoelder(form, form_dim))
        throw InvalidInputError(std::string(who) +
                                ": form is not Hoelder; disable the gate to probe it anyway");
}

}  // namespace detail

// Midpoint (or random-tau) concavity probe of a target map.
inline ProbeReport probe_midpoint(const ProbeTarget& target, const FormDescriptor& form,
                                  const ProbeConfig& config) {
    config.validate();
    {
        RandomStream probe_rng(derive_trial_seed(config.seed, 0));
        const TargetInstance probe = materialize(target, config, probe_rng);
        detail::gate_form(form, config, probe.form_dim(), "probe_midpoint");
    }

    const auto trial = [&](long index) -> detail::TrialOutcome {
        detail::TrialOutcome oc;
        try {
            RandomStream rng(derive_trial_seed(config.seed, static_cast<std::uint64_t>(index)));
            const TargetInstance inst = materialize(target, config, rng);
            const TargetInputs a = sample_inputs(inst, rng);
            const TargetInputs b = sample_inputs(inst, rng);
            const double tau = config.tau_mode == TauMode::uniform ? rng.uniform() : 0.5;
            const double fa = eval_target(inst, form, a);
            const double fb = eval_target(inst, form, b);
            const double fc = eval_target(inst, form, blend_inputs(a, b, tau));
            const double rhs = tau * fa + (1.0 - tau) * fb;
            const double slack = fc - rhs;
            oc.slack = slack;
            if (slack < -(config.tol_abs + config.tol_rel * std::abs(fc))) {
                oc.violated = true;
                oc.record.trial_index = index;
                oc.record.tau = tau;
                oc.record.lhs = fc;
                oc.record.rhs = rhs;
                oc.record.gap = rhs - fc;
                oc.record.check = "midpoint";
                oc.record.inputs_digest = detail::digest_inputs(inst, a, b);
                detail::fill_params(oc.record, inst);
                oc.record.params["tau"] = tau;
            }
        } catch (const Error&) {
            oc.skipped = true;
        }
        return oc;
    };

    return detail::aggregate_probe("midpoint:" + target_kind_name(target.kind), config, trial);
}

// Second-difference probe: f(C+h D) - 2 f(C) + f(C-h D) must stay below
// tol_h = 1e-7 + 1e-5 h^2 |f(C)| for each step h. Bases are sampled with a
// positive-definiteness margin; near-degenerate spectra are resampled since
// matrix-function differentiation is ill-conditioned at crossings.
inline ProbeReport probe_second_difference(const ProbeTarget& target, const FormDescriptor& form,
                                           const ProbeConfig& config) {
    config.validate();
    {
        RandomStream probe_rng(derive_trial_seed(config.seed, 0));
        const TargetInstance probe = materialize(target, config, probe_rng);
        detail::gate_form(form, config, probe.form_dim(), "probe_second_difference");
    }
    const double h_max = *std::max_element(config.h_steps.begin(), config.h_steps.end());

    const auto trial = [&](long index) -> detail::TrialOutcome {
        detail::TrialOutcome oc;
        try {
            RandomStream rng(derive_trial_seed(config.seed, static_cast<std::uint64_t>(index)));
            const TargetInstance inst = materialize(target, config, rng);
            const int arity = inst.arity();

            TargetInputs base;
            bool ok = false;
            for (int attempt = 0; attempt < 20 && !ok; ++attempt) {
                base.clear();
                ok = true;
                for (int j = 0; j < arity; ++j) {
                    const int dim = (inst.kind == TargetKind::lieb && j == 1) ? inst.m : inst.n;
                    const double ridge = 2.0 * h_max * dim + 0.01;
                    PSDMatrix c = PSDMatrix::from_symmetrized(
                        sample_psd(rng, dim, 1.0).matrix() +
                        ridge * ComplexMatrix::Identity(dim, dim));
                    const RealVector& lam = c.spectrum();
                    for (Eigen::Index i = 0; i + 1 < lam.size(); ++i)
                        if (lam[i] - lam[i + 1] < 1e-8 * std::max(1.0, lam[0])) ok = false;
                    base.push_back(std::move(c));
                }
            }
            if (!ok) {
                oc.skipped = true;
                return oc;
            }

            std::vector<ComplexMatrix> dirs;
            dirs.reserve(static_cast<std::size_t>(arity));
            for (int j = 0; j < arity; ++j) {
                const int dim = (inst.kind == TargetKind::lieb && j == 1) ? inst.m : inst.n;
                ComplexMatrix d = sample_hermitian(rng, dim, 1.0).matrix();
                const double scale = max_abs(d);
                if (scale <= 0.0) {
                    oc.skipped = true;
                    return oc;
                }
                dirs.push_back(d / scale);
            }

            const double f0 = eval_target(inst, form, base);
            oc.slack = std::numeric_limits<double>::infinity();
            for (double h : config.h_steps) {
                TargetInputs plus, minus;
                for (int j = 0; j < arity; ++j) {
                    plus.push_back(PSDMatrix::from_symmetrized(
                        base[static_cast<std::size_t>(j)].matrix() + h * dirs[static_cast<std::size_t>(j)]));
                    minus.push_back(PSDMatrix::from_symmetrized(
                        base[static_cast<std::size_t>(j)].matrix() - h * dirs[static_cast<std::size_t>(j)]));
                }
                const double fp = eval_target(inst, form, plus);
                const double fm = eval_target(inst, form, minus);
                const double d2 = fp - 2.0 * f0 + fm;
                const double tol_h = 1e-7 + 1e-5 * h * h * std::abs(f0);
                oc.slack = std::min(oc.slack, tol_h - d2);
                if (d2 > tol_h) {
                    oc.violated = true;
                    oc.record.trial_index = index;
                    oc.record.tau = h;
                    oc.record.lhs = 2.0 * f0;
                    oc.record.rhs = fp + fm;
                    oc.record.gap = d2;
                    oc.record.check = "second_difference";
                    oc.record.inputs_digest = detail::digest_inputs(inst, base, base);
                    detail::fill_params(oc.record, inst);
                    oc.record.params["h"] = h;
                    break;
                }
            }
        } catch (const Error&) {
            oc.skipped = true;
        }
        return oc;
    };

    return detail::aggregate_probe("second_difference:" + target_kind_name(target.kind), config,
                                   trial);
}

// Counterexample search for the sum-of-k-smallest conjecture: both probes
// with the Hoelder gate off, confirmed violations only.
inline std::pair<ProbeReport, ProbeReport> conjecture_search(int k, int n,
                                                             const ProbeTarget& target,
                                                             ProbeConfig config) {
    if (!(k >= 1 && k < n))
        throw InvalidInputError("conjecture_search: need 1 <= k < n (k = n is the trace)");
    config.n = n;
    if (target.kind == TargetKind::lieb) config.m = n;
    config.require_hoelder = false;
    const FormDescriptor phi = FormDescriptor::minsum(k);
    ProbeReport mid = probe_midpoint(target, phi, config);
    mid.label = "conjecture:" + mid.label;
    ProbeReport sd = probe_second_difference(target, phi, config);
    sd.label = "conjecture:" + sd.label;
    return {mid, sd};
}

// Numerical walk through the reduction argument: concavity of the
// sum-of-k-smallest family forces, via majorization witnesses, concavity
// for every concave symmetric form.
struct ReductionReport {
    long attempted = 0;
    long completed = 0;
    long skipped = 0;
    long weak_failures = 0;     // step (i)
    long witness_failures = 0;  // step (ii)
    long form_failures = 0;     // step (iii)
    double min_weak_slack = std::numeric_limits<double>::infinity();
    double max_ds_residual = 0.0;
    double min_form_slack = std::numeric_limits<double>::infinity();
    bool pass() const { return weak_failures == 0 && witness_failures == 0 && form_failures == 0; }
};

inline ReductionReport reduction_check(const ProbeTarget& target, const FormDescriptor& form,
                                       const ProbeConfig& config) {
    config.validate();
    if (!form_is_concave(form)) throw InvalidInputError("reduction_check: form must be concave");

    struct Outcome {
        bool skipped = false;
        bool weak_fail = false, witness_fail = false, form_fail = false;
        double weak_slack = 0.0, ds_residual = 0.0, form_slack = 0.0;
    };

    const auto trial = [&](long index) -> Outcome {
        Outcome oc;
        try {
            RandomStream rng(derive_trial_seed(config.seed, static_cast<std::uint64_t>(index)));
            const TargetInstance inst = materialize(target, config, rng);
            const TargetInputs a = sample_inputs(inst, rng);
            const TargetInputs b = sample_inputs(inst, rng);
            const double tau = config.tau_mode == TauMode::uniform ? rng.uniform() : 0.5;

            const RealVector spa = target_spectrum(inst, a);
            const RealVector spb = target_spectrum(inst, b);
            const RealVector spc = target_spectrum(inst, blend_inputs(a, b, tau));

            const RealVector a_vec = -spc;
            const RealVector b_vec = -(tau * spa + (1.0 - tau) * spb);

            // (i) weak majorization of the negated spectra
            const MajorizationVerdict v = verdict(a_vec, b_vec);
            oc.weak_slack = v.min_slack() / v.scale;
            if (oc.weak_slack < -1e-8) {
                oc.weak_fail = true;
                return oc;
            }

            // (ii) bridge + doubly stochastic witness, both re-verified by
            // the majorization oracles themselves
            if (v.weak) {
                const RealVector bridge_v = bridge(a_vec, b_vec);
                const RealMatrix d = ds_from_majorization(bridge_v, b_vec);
                oc.ds_residual = (d * b_vec - bridge_v).cwiseAbs().maxCoeff() / v.scale;
                if (oc.ds_residual > 1e-9) oc.witness_fail = true;
            }

            // (iii) the form inequality itself
            const double fa = eval_form(form, spa);
            const double fb = eval_form(form, spb);
            const double fc = eval_form(form, spc);
            const double rhs = tau * fa + (1.0 - tau) * fb;
            oc.form_slack = (fc - rhs) / std::max(1.0, std::abs(rhs));
            if (oc.form_slack < -1e-8) oc.form_fail = true;
        } catch (const Error&) {
            oc.skipped = true;
        }
        return oc;
    };

    ReductionReport report;
    report.attempted = config.trials;
    const auto outcomes = run_trials<Outcome>(config.trials, trial);
    for (const auto& oc : outcomes) {
        if (oc.skipped) {
            ++report.skipped;
            continue;
        }
        ++report.completed;
        report.weak_failures += oc.weak_fail;
        report.witness_failures += oc.witness_fail;
        report.form_failures += oc.form_fail;
        report.min_weak_slack = std::min(report.min_weak_slack, oc.weak_slack);
        report.max_ds_residual = std::max(report.max_ds_residual, oc.ds_residual);
        report.min_form_slack = std::min(report.min_form_slack, oc.form_slack);
    }
    return report;
}

}  // namespace symform
