// symform: numerical verification harness for symmetric-form trace
// inequalities, majorization witnesses and concavity probes.

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "symform/cli.hpp"
#include "symform/version.hpp"

namespace {

std::string echo_args(int argc, char** argv) {
    std::ostringstream out;
    for (int i = 0; i < argc; ++i) {
        if (i) out << ' ';
        out << argv[i];
    }
    return out.str();
}

void add_common(CLI::App* sub, symform::cli::RunConfig& cfg) {
    sub->add_option("--seed", cfg.seed, "base seed");
    sub->add_option("--trials", cfg.trials, "number of trials");
    sub->add_option("--out", cfg.out_path, "write a JSON report here");
    for (auto* opt : sub->get_options())
        if (opt->get_expected_min() >= 1) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

// Flat key=value config support with CLI-flag precedence: config entries are
// injected before the command-line tokens and every option takes its last
// occurrence. Unknown keys are a usage error.
std::vector<std::string> apply_config_file(const CLI::App& app,
                                           const std::vector<std::string>& args) {
    std::string sub_name;
    std::string config_path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw symform::InvalidInputError("--config needs a file path");
            config_path = args[++i];
            continue;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            continue;
        }
        if (sub_name.empty() && !args[i].empty() && args[i][0] != '-') sub_name = args[i];
        rest.push_back(args[i]);
    }
    if (config_path.empty()) return rest;
    if (sub_name.empty())
        throw symform::InvalidInputError("--config requires a subcommand");
    const CLI::App* sub = app.get_subcommand_no_throw(sub_name);
    if (sub == nullptr) return rest;  // the parser will report the bad subcommand

    std::ifstream in(config_path);
    if (!in) throw symform::InvalidInputError("cannot open config file '" + config_path + "'");
    std::vector<std::string> injected;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw symform::InvalidInputError("config file '" + config_path + "', line " +
                                             std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(first, eq - first);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        std::string value = line.substr(eq + 1);
        const auto vstart = value.find_first_not_of(" \t");
        value = vstart == std::string::npos ? "" : value.substr(vstart);
        while (!value.empty() && (value.back() == ' ' || value.back() == '\t' ||
                                  value.back() == '\r'))
            value.pop_back();
        if (key == "config")
            throw symform::InvalidInputError("config file may not set 'config'");
        const CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw symform::InvalidInputError("config file '" + config_path + "', line " +
                                             std::to_string(lineno) + ": unknown key '" + key +
                                             "'");
        injected.push_back("--" + key + "=" + value);
    }

    std::vector<std::string> out;
    out.reserve(rest.size() + injected.size());
    out.push_back(sub_name);
    for (const auto& tok : injected) out.push_back(tok);
    for (const auto& tok : rest)
        if (tok != sub_name || &tok != &rest.front()) out.push_back(tok);
    // the loop above drops only the first occurrence of the subcommand name
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetric-form inequality and concavity verification"};
    app.set_version_flag("--version", symform::kVersion);
    app.require_subcommand(1);

    symform::cli::RunConfig cfg;
    cfg.command_echo = echo_args(argc, argv);

    auto* eval = app.add_subcommand("eval", "evaluate a form on a Hermitian matrix file");
    eval->add_option("--form", cfg.form, "form descriptor")->required();
    eval->add_option("--matrix", cfg.matrix_path, "matrix JSON file")->required();
    add_common(eval, cfg);

    auto* verify = app.add_subcommand("verify", "run a named inequality over seeded trials");
    verify
        ->add_option("--ineq", cfg.ineq,
                     "matrix_hoelder | alt | gt | exp_convex | multi_gt | t_identity | "
                     "three_matrix | lie_product | interpolation")
        ->required();
    verify->add_option("--form", cfg.form, "form descriptor");
    verify->add_option("--n", cfg.n, "matrix dimension");
    verify->add_option("--m", cfg.m, "matrix count (multi_gt) or second dimension");
    verify->add_option("--family", cfg.family, "interpolation family");
    verify->add_option("--theta", cfg.theta, "interpolation point");
    verify->add_option("--p", cfg.exponent, "exponent (Hoelder p / multi_gt p)");
    verify->add_option("--t", cfg.t, "lower ALT exponent");
    verify->add_option("--s", cfg.s, "upper ALT exponent / epstein s");
    verify->add_option("--r", cfg.r, "epstein r");
    add_common(verify, cfg);

    auto* probe = app.add_subcommand("probe", "concavity probe of a target map");
    probe->add_option("--target", cfg.target, "epstein | lieb | exp_log")->required();
    probe->add_option("--form", cfg.form, "form descriptor");
    probe->add_option("--n", cfg.n, "first dimension");
    probe->add_option("--m", cfg.m, "second dimension / argument count");
    probe->add_option("--tau", cfg.tau_mode, "half | uniform");
    probe->add_option("--tol-abs", cfg.tol_abs, "absolute concavity tolerance");
    probe->add_option("--tol-rel", cfg.tol_rel, "relative concavity tolerance");
    probe->add_flag("--second-diff", cfg.second_diff, "run the second-difference probe");
    probe->add_flag("--allow-invalid", cfg.allow_invalid,
                    "skip parameter validation and the Hoelder gate");
    probe->add_option("--r", cfg.r, "fix epstein r");
    probe->add_option("--s", cfg.s, "fix s");
    probe->add_option("--p", cfg.p, "fix lieb p");
    probe->add_option("--q", cfg.q, "fix lieb q");
    add_common(probe, cfg);

    auto* conjecture = app.add_subcommand("conjecture", "sum-of-k-smallest counterexample search");
    conjecture->add_option("--k", cfg.k, "form parameter k")->required();
    conjecture->add_option("--n", cfg.n, "dimension")->required();
    conjecture->add_option("--target", cfg.target, "epstein | lieb | exp_log")->required();
    conjecture->add_option("--tau", cfg.tau_mode, "half | uniform");
    add_common(conjecture, cfg);

    auto* forms = app.add_subcommand("forms", "axiom / Hoelder / concavity detectors");
    forms->add_option("--check", cfg.check, "axioms | hoelder | concavity")->required();
    forms->add_option("--form", cfg.form, "form descriptor")->required();
    forms->add_option("--n", cfg.n, "vector dimension");
    add_common(forms, cfg);

    auto* majorize = app.add_subcommand("majorize", "majorization verdicts and witnesses");
    majorize->add_option("--op", cfg.op, "verdict | bridge | ds | birkhoff");
    majorize->add_option("--a", cfg.a_path, "vector JSON file");
    majorize->add_option("--b", cfg.b_path, "vector JSON file");
    majorize->add_option("--d", cfg.d_path, "doubly stochastic matrix JSON file (birkhoff)");
    majorize->add_flag("--log", cfg.log_domain, "compare in the log domain");
    add_common(majorize, cfg);

    auto* compound = app.add_subcommand("compound", "compound-matrix property check");
    compound->add_option("--k", cfg.k, "compound order")->required();
    compound->add_option("--n", cfg.n, "dimension (when sampling)");
    compound->add_option("--matrix", cfg.matrix_path, "matrix JSON file");
    compound->add_option("--matrix-b", cfg.matrix_b_path, "second matrix JSON file");
    add_common(compound, cfg);

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = apply_config_file(app, args);
    } catch (const symform::InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return symform::cli::kExitUsage;
    }

    try {
        // CLI11 consumes the vector in reverse order
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : symform::cli::kExitUsage;
    }

    for (auto* sub : {eval, verify, probe, conjecture, forms, majorize, compound})
        if (sub->parsed()) cfg.command = sub->get_name();

    return symform::cli::run_command(cfg);
}
