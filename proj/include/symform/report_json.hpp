#pragma once

#include <cmath>
#include <fstream>
#include <string>

#include <json.hpp>

#include "symform/compound.hpp"
#include "symform/concavity.hpp"
#include "symform/form_checks.hpp"
#include "symform/inequalities.hpp"
#include "symform/majorization.hpp"
#include "symform/version.hpp"

namespace symform {

using Json = nlohmann::ordered_json;

inline Json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

inline Json to_json(const ViolationRecord& v) {
    Json j;
    j["trial"] = v.trial_index;
    j["check"] = v.check;
    j["tau"] = v.tau;
    j["lhs"] = v.lhs;
    j["rhs"] = v.rhs;
    j["gap"] = v.gap;
    j["confirmed"] = v.confirmed;
    j["inputs_digest"] = v.inputs_digest;
    Json params = Json::object();
    for (const auto& [key, value] : v.params) params[key] = value;
    j["params"] = std::move(params);
    return j;
}

inline Json to_json(const ProbeReport& r) {
    Json j;
    j["label"] = r.label;
    j["seed"] = r.seed;
    Json trials;
    trials["attempted"] = r.attempted;
    trials["completed"] = r.completed;
    trials["skipped"] = r.skipped;
    j["trials"] = std::move(trials);
    Json violations = Json::array();
    for (const auto& v : r.violations) violations.push_back(to_json(v));
    j["violations"] = std::move(violations);
    j["confirmed_violations"] = r.confirmed_violations;
    j["min_slack"] = finite_or_null(r.min_slack);
    j["max_gap"] = r.max_gap;
    return j;
}

inline Json to_json(const IneqResult& r) {
    Json j;
    j["name"] = r.name;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["slack"] = r.slack;
    j["tol"] = r.tol;
    j["pass"] = r.pass;
    j["inputs_digest"] = r.inputs_digest;
    Json extras = Json::object();
    for (const auto& [key, value] : r.extras) extras[key] = value;
    j["extras"] = std::move(extras);
    return j;
}

inline const char* verdict_name(CheckVerdict v) {
    switch (v) {
        case CheckVerdict::not_run: return "not_run";
        case CheckVerdict::pass: return "pass";
        case CheckVerdict::fail: return "fail";
    }
    return "?";
}

inline Json to_json(const FormPropertyReport& r) {
    Json j;
    j["axioms"] = verdict_name(r.axioms);
    j["hoelder"] = verdict_name(r.hoelder);
    j["concave"] = verdict_name(r.concave);
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    if (r.witness) {
        Json w;
        w["what"] = r.witness->what;
        w["x"] = std::vector<double>(r.witness->x.data(), r.witness->x.data() + r.witness->x.size());
        w["y"] = std::vector<double>(r.witness->y.data(), r.witness->y.data() + r.witness->y.size());
        w["t_param"] = finite_or_null(r.witness->t_param);
        w["lhs"] = r.witness->lhs;
        w["rhs"] = r.witness->rhs;
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

inline Json to_json(const MajorizationVerdict& v) {
    Json j;
    j["weak"] = v.weak;
    j["strict"] = v.strict;
    j["prefix_slacks"] =
        std::vector<double>(v.prefix_slacks.data(), v.prefix_slacks.data() + v.prefix_slacks.size());
    j["sum_gap"] = v.sum_gap;
    j["scale"] = v.scale;
    return j;
}

inline Json to_json(const CompoundPropertyReport& r) {
    Json j;
    Json items = Json::array();
    for (const auto& item : r.items) {
        Json ji;
        ji["name"] = item.name;
        ji["deviation"] = item.deviation;
        ji["tolerance"] = item.tolerance;
        ji["pass"] = item.pass;
        items.push_back(std::move(ji));
    }
    j["items"] = std::move(items);
    j["pass"] = r.pass;
    return j;
}

inline Json to_json(const ReductionReport& r) {
    Json j;
    j["attempted"] = r.attempted;
    j["completed"] = r.completed;
    j["skipped"] = r.skipped;
    j["weak_failures"] = r.weak_failures;
    j["witness_failures"] = r.witness_failures;
    j["form_failures"] = r.form_failures;
    j["min_weak_slack"] = finite_or_null(r.min_weak_slack);
    j["max_ds_residual"] = r.max_ds_residual;
    j["min_form_slack"] = finite_or_null(r.min_form_slack);
    j["pass"] = r.pass();
    return j;
}

// Standard report envelope. Everything except wall_time_ms is a pure
// function of the command line and seed.
inline Json report_envelope(const std::string& command, std::uint64_t seed) {
    Json j;
    j["tool_version"] = kVersion;
    j["command"] = command;
    j["seed"] = seed;
    return j;
}

inline void write_report(const Json& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("cannot write report file '" + path + "'");
    out << report.dump(2) << "\n";
}

}  // namespace symform
