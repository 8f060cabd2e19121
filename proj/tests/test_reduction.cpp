#include <catch2/catch_amalgamated.hpp>

#include "symform/concavity.hpp"

using namespace symform;

TEST_CASE("reduction chain on identity-like triples", "[reduction]") {
    // F = identity map via epstein with K = I, r = s = 1, and A = B: every
    // step holds with equality
    ProbeTarget target;
    target.kind = TargetKind::epstein;
    target.r = 1.0;
    target.s = 1.0;
    target.k_matrix = ComplexMatrix(ComplexMatrix::Identity(3, 3));

    ProbeConfig pc;
    pc.n = 3;
    pc.trials = 1;
    RandomStream rng(11);
    const TargetInstance inst = materialize(target, pc, rng);
    const TargetInputs a = sample_inputs(inst, rng);

    const RealVector spa = target_spectrum(inst, a);
    const PSDMatrix& input = a[0];
    REQUIRE((spa - input.spectrum()).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, spa[0]));

    const RealVector neg = -spa;
    const auto v = verdict(neg, neg);
    REQUIRE(v.strict);
    const RealVector c = bridge(neg, neg);
    REQUIRE((c - neg).cwiseAbs().maxCoeff() < 1e-12);
    const RealMatrix d = ds_from_majorization(c, neg);
    REQUIRE((d * neg - c).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("reduction chain holds on theorem-backed triples", "[reduction]") {
    for (auto kind : {TargetKind::lieb, TargetKind::epstein, TargetKind::exp_log}) {
        ProbeTarget target;
        target.kind = kind;
        ProbeConfig pc;
        pc.n = 4;
        pc.m = kind == TargetKind::exp_log ? 2 : 4;
        pc.trials = 250;
        pc.seed = 4242;
        for (const auto& form : {FormDescriptor::gk(2), FormDescriptor::minsum(2)}) {
            const ReductionReport report = reduction_check(target, form, pc);
            INFO(target_kind_name(kind) << " " << form.to_string());
            REQUIRE(report.completed > 200);
            REQUIRE(report.weak_failures == 0);
            REQUIRE(report.witness_failures == 0);
            REQUIRE(report.form_failures == 0);
            REQUIRE(report.min_weak_slack >= -1e-8);
            REQUIRE(report.max_ds_residual <= 1e-9);
            REQUIRE(report.min_form_slack >= -1e-8);
        }
    }
}

TEST_CASE("reduction chain detects a broken target", "[reduction]") {
    ProbeTarget target;
    target.kind = TargetKind::lieb;
    target.p = 0.9;
    target.q = 0.9;
    target.s = 1.0;
    target.allow_invalid = true;

    ProbeConfig pc;
    pc.n = 2;
    pc.m = 2;
    pc.trials = 4000;
    pc.seed = 11;
    const ReductionReport report = reduction_check(target, FormDescriptor::minsum(1), pc);
    // step (i) must fail on some triple once joint concavity is broken
    REQUIRE(report.weak_failures > 0);
}
