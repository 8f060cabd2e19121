#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "symform/cli.hpp"
#include "symform/matrix_io.hpp"

using namespace symform;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "symform_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string strip_wall_time(std::string text) {
    return std::regex_replace(text, std::regex(R"("wall_time_ms": \d+)"), "\"wall_time_ms\": 0");
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("matrix json round trip", "[io]") {
    const ComplexMatrix a = sample(SampleKind::general, 4, 123);
    const fs::path path = temp_file("roundtrip.json");
    save_matrix(a, path.string());
    const ComplexMatrix back = load_matrix(path.string());
    REQUIRE(a == back);  // bit-faithful through shortest-round-trip doubles
}

TEST_CASE("matrix json schema diagnostics", "[io]") {
    const fs::path path = temp_file("bad.json");

    write_text(path, R"({"n": 2, "re": [[1, 0], [0, 1]]})");
    REQUIRE_THROWS_WITH(load_matrix(path.string()), Catch::Matchers::ContainsSubstring("'im'"));

    write_text(path, R"({"n": 2, "re": [[1, 0]], "im": [[0, 0], [0, 0]]})");
    REQUIRE_THROWS_WITH(load_matrix(path.string()), Catch::Matchers::ContainsSubstring("'re'"));

    write_text(path, R"({"n": 2, "re": [[1, 0], [0, "x"]], "im": [[0, 0], [0, 0]]})");
    REQUIRE_THROWS_WITH(load_matrix(path.string()),
                        Catch::Matchers::ContainsSubstring("row 1, column 1"));

    write_text(path, R"({"n": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]], "extra": 1})");
    REQUIRE_THROWS_WITH(load_matrix(path.string()), Catch::Matchers::ContainsSubstring("extra"));

    write_text(path, "not json at all");
    REQUIRE_THROWS_AS(load_matrix(path.string()), InvalidInputError);

    REQUIRE_THROWS_AS(load_matrix("/nonexistent/matrix.json"), InvalidInputError);
}

TEST_CASE("hermitian load enforces the tolerance", "[io]") {
    const fs::path path = temp_file("nonherm.json");
    write_text(path, R"({"n": 2, "re": [[1, 1], [0, 1]], "im": [[0, 0], [0, 0]]})");
    REQUIRE_THROWS_AS(load_hermitian(path.string()), InvalidInputError);
    REQUIRE_NOTHROW(load_matrix(path.string()));
}

TEST_CASE("cli eval prints the form value", "[cli]") {
    const fs::path mat = temp_file("diag123.json");
    write_text(mat, R"({"n": 3, "re": [[1, 0, 0], [0, 2, 0], [0, 0, 3]],
                        "im": [[0, 0, 0], [0, 0, 0], [0, 0, 0]]})");
    const fs::path out = temp_file("eval_report.json");

    cli::RunConfig cfg;
    cfg.command = "eval";
    cfg.command_echo = "symform eval --form ktrace:k=2 --matrix diag123.json";
    cfg.form = "ktrace:k=2";
    cfg.matrix_path = mat.string();
    cfg.out_path = out.string();
    REQUIRE(cli::run_command(cfg) == cli::kExitOk);

    const auto report = nlohmann::json::parse(slurp(out));
    REQUIRE(report["value"].get<double>() == Catch::Approx(std::sqrt(11.0)).epsilon(1e-12));
    REQUIRE(report["tool_version"] == kVersion);
}

TEST_CASE("cli exit codes", "[cli]") {
    SECTION("usage error for an unknown form") {
        cli::RunConfig cfg;
        cfg.command = "eval";
        cfg.form = "bogus";
        cfg.matrix_path = "whatever.json";
        REQUIRE(cli::run_command(cfg) == cli::kExitUsage);
    }
    SECTION("usage error for an unknown command") {
        cli::RunConfig cfg;
        cfg.command = "frobnicate";
        REQUIRE(cli::run_command(cfg) == cli::kExitUsage);
    }
    SECTION("clean probe exits zero") {
        cli::RunConfig cfg;
        cfg.command = "probe";
        cfg.target = "lieb";
        cfg.form = "ktrace:k=2";
        cfg.n = 3;
        cfg.m = 3;
        cfg.trials = 120;
        cfg.seed = 9;
        REQUIRE(cli::run_command(cfg) == cli::kExitOk);
    }
    SECTION("broken probe exits one and reports the violations") {
        const fs::path out = temp_file("broken_probe.json");
        cli::RunConfig cfg;
        cfg.command = "probe";
        cfg.target = "lieb";
        cfg.form = "trace";
        cfg.n = 2;
        cfg.m = 2;
        cfg.trials = 4000;
        cfg.seed = 2024;
        cfg.p = 0.8;
        cfg.q = 0.8;
        cfg.s = 1.0;
        cfg.allow_invalid = true;
        cfg.out_path = out.string();
        REQUIRE(cli::run_command(cfg) == cli::kExitViolation);
        const auto report = nlohmann::json::parse(slurp(out));
        REQUIRE(report["probe"]["confirmed_violations"].get<long>() >= 1);
        const auto& v = report["probe"]["violations"][0];
        REQUIRE(v["confirmed"].get<bool>());
        REQUIRE(v["params"].contains("p"));
        REQUIRE(v.contains("inputs_digest"));
    }
    SECTION("majorize bridge precondition failure is a usage error") {
        const fs::path av = temp_file("a.json");
        const fs::path bv = temp_file("b.json");
        write_text(av, "[5, 0]");
        write_text(bv, "[4, 1]");
        cli::RunConfig cfg;
        cfg.command = "majorize";
        cfg.op = "bridge";
        cfg.a_path = av.string();
        cfg.b_path = bv.string();
        REQUIRE(cli::run_command(cfg) == cli::kExitUsage);
    }
}

TEST_CASE("cli verify and forms round trip", "[cli]") {
    SECTION("gt verify passes") {
        cli::RunConfig cfg;
        cfg.command = "verify";
        cfg.ineq = "gt";
        cfg.form = "seminorm:p=0.5";
        cfg.n = 4;
        cfg.trials = 150;
        cfg.seed = 7;
        REQUIRE(cli::run_command(cfg) == cli::kExitOk);
    }
    SECTION("forms hoelder flags minsum") {
        const fs::path out = temp_file("hoelder_minsum.json");
        cli::RunConfig cfg;
        cfg.command = "forms";
        cfg.check = "hoelder";
        cfg.form = "minsum:k=1";
        cfg.n = 2;
        cfg.trials = 50;
        cfg.out_path = out.string();
        REQUIRE(cli::run_command(cfg) == cli::kExitViolation);
        const auto report = nlohmann::json::parse(slurp(out));
        REQUIRE(report["report"]["hoelder"] == "fail");
        REQUIRE(report["report"]["witness"]["x"][0].get<double>() == 1.0);
        REQUIRE(report["report"]["witness"]["x"][1].get<double>() == 10.0);
    }
}

TEST_CASE("cli majorize ops", "[cli]") {
    const fs::path av = temp_file("ma.json");
    const fs::path bv = temp_file("mb.json");
    write_text(av, "[2, 2]");
    write_text(bv, "[3, 1]");

    const fs::path out = temp_file("ds.json");
    cli::RunConfig cfg;
    cfg.command = "majorize";
    cfg.op = "ds";
    cfg.a_path = av.string();
    cfg.b_path = bv.string();
    cfg.out_path = out.string();
    REQUIRE(cli::run_command(cfg) == cli::kExitOk);
    const auto report = nlohmann::json::parse(slurp(out));
    REQUIRE(report["d"][0][0].get<double>() == Catch::Approx(0.5));
    REQUIRE(report["residual"].get<double>() <= 1e-9);

    cfg.op = "birkhoff";
    REQUIRE(cli::run_command(cfg) == cli::kExitOk);

    cfg.op = "verdict";
    REQUIRE(cli::run_command(cfg) == cli::kExitOk);
}

TEST_CASE("cli compound", "[cli]") {
    cli::RunConfig cfg;
    cfg.command = "compound";
    cfg.n = 4;
    cfg.k = 2;
    cfg.seed = 5;
    REQUIRE(cli::run_command(cfg) == cli::kExitOk);
}

TEST_CASE("reports are byte-identical across thread counts", "[cli]") {
    const fs::path out1 = temp_file("probe_t1.json");
    const fs::path out4 = temp_file("probe_t4.json");

    cli::RunConfig cfg;
    cfg.command = "probe";
    cfg.target = "epstein";
    cfg.form = "ktrace:k=2";
    cfg.command_echo = "symform probe --target epstein --form ktrace:k=2";
    cfg.n = 3;
    cfg.trials = 300;
    cfg.seed = 5150;

    setenv("SYMFORM_THREADS", "1", 1);
    cfg.out_path = out1.string();
    REQUIRE(cli::run_command(cfg) == cli::kExitOk);
    setenv("SYMFORM_THREADS", "4", 1);
    cfg.out_path = out4.string();
    REQUIRE(cli::run_command(cfg) == cli::kExitOk);
    unsetenv("SYMFORM_THREADS");

    REQUIRE(strip_wall_time(slurp(out1)) == strip_wall_time(slurp(out4)));
}

TEST_CASE("compiled binary end to end", "[cli]") {
    const fs::path mat = temp_file("cli_diag.json");
    write_text(mat, R"({"n": 3, "re": [[1, 0, 0], [0, 2, 0], [0, 0, 3]],
                        "im": [[0, 0, 0], [0, 0, 0], [0, 0, 0]]})");
    const fs::path out = temp_file("cli_out.txt");

    const std::string cmd = std::string(SYMFORM_CLI_PATH) + " eval --form ktrace:k=2 --matrix " +
                            mat.string() + " > " + out.string();
    REQUIRE(std::system(cmd.c_str()) == 0);
    REQUIRE(std::stod(slurp(out)) == Catch::Approx(std::sqrt(11.0)).epsilon(1e-12));

    // usage errors propagate exit code 2
    const std::string bad = std::string(SYMFORM_CLI_PATH) + " eval --form nope --matrix " +
                            mat.string() + " 2>/dev/null";
    const int status = std::system(bad.c_str());
    REQUIRE(WEXITSTATUS(status) == 2);

    // config file support: flags beat config values
    const fs::path conf = temp_file("probe.conf");
    write_text(conf, "trials=40\nseed=3\n");
    const std::string probe_cmd = std::string(SYMFORM_CLI_PATH) +
                                  " probe --target epstein --form trace --n 3 --config " +
                                  conf.string() + " --trials 60 > " + out.string();
    REQUIRE(std::system(probe_cmd.c_str()) == 0);
    REQUIRE(slurp(out).find("60") != std::string::npos);

    // unknown config keys are rejected
    write_text(conf, "bogus_key=1\n");
    const std::string bad_conf = std::string(SYMFORM_CLI_PATH) +
                                 " probe --target epstein --form trace --n 3 --config " +
                                 conf.string() + " 2>/dev/null";
    REQUIRE(WEXITSTATUS(std::system(bad_conf.c_str())) == 2);
}
