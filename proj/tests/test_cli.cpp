#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "coinwalk/commands.hpp"

using namespace coinwalk;

namespace {

struct Exec {
    int code = -1;
    std::string out;
};

/// Runs the coinwalk binary with `args`, capturing stdout. stderr is discarded.
Exec run_cli(const std::string& args) {
    const std::string cmd = std::string(COINWALK_BIN) + " " + args + " 2>/dev/null";
    Exec e;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) e.out.append(buf, n);
    const int status = pclose(pipe);
    e.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return e;
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::ofstream(name) << text;
    return name;
}

double column_sum(const Table& t, std::size_t col) {
    double s = 0.0;
    for (const auto& r : t.rows) s += r[col];
    return s;
}

const char* kGoodCavity =
    "[cavity]\n"
    "omega0 = 2.356e15\n"
    "omega_bar = 1.8849555921538759e7\n"
    "omega_fsr = 6.283185307179586e6\n"
    "f = 3\n"
    "delta_omega = 3.7699111843077517e6\n"
    "loss_per_roundtrip = 0.01\n"
    "eom_bandwidth = 1.8849555921538759e9\n"
    "intensity_floor = 0.1\n";

}  // namespace

TEST_SUITE("commands") {

TEST_CASE("walk") {
    RunConfig cfg;
    const auto def = run_walk(cfg);
    CHECK(def.table.rows.size() == 201);
    CHECK(std::abs(column_sum(def.table, 1) - 1.0) < 1e-12);
    for (const auto& r : def.table.rows) CHECK(static_cast<long>(r[0]) % 2 == 0);
    CHECK(def.table.find_meta("n") == std::optional<std::string>("200"));
    CHECK(def.table.find_meta("sigma").has_value());

    cfg.steps = 0;
    const auto zero = run_walk(cfg);
    REQUIRE(zero.table.rows.size() == 1);
    CHECK(zero.table.rows[0][0] == 0.0);
    CHECK(std::abs(zero.table.rows[0][1] - 1.0) < 1e-15);

    cfg.steps = 2;
    cfg.r0 = 1.0;
    cfg.l0 = 0.0;
    const auto two = run_walk(cfg);
    REQUIRE(two.table.rows.size() == 3);
    CHECK(two.table.rows[0] == std::vector<double>{-2.0, 0.0});
    CHECK(std::abs(two.table.rows[1][1] - 0.5) < 1e-15);
    CHECK(std::abs(two.table.rows[2][1] - 0.5) < 1e-15);

    cfg.all_sites = true;
    CHECK(run_walk(cfg).table.rows.size() == 5);

    cfg.r0 = 1.0;
    cfg.l0 = 1.0;
    CHECK_THROWS_AS(run_walk(cfg), ConfigError);
}

TEST_CASE("classical") {
    RunConfig cfg;
    cfg.command = Command::classical;
    const auto r = run(cfg);
    CHECK(std::abs(column_sum(r.table, 1) - 1.0) < 1e-12);
    CHECK(std::abs(std::stod(*r.table.find_meta("sigma")) - std::sqrt(200.0)) < 1e-9);
}

TEST_CASE("compare") {
    RunConfig cfg;
    cfg.command = Command::compare;
    cfg.steps = 2;
    const auto small = run(cfg);
    CHECK(small.table.columns == std::vector<std::string>{"m", "P_quantum", "P_classical", "I_continuum"});
    for (std::size_t c = 1; c <= 3; ++c) CHECK(std::abs(column_sum(small.table, c) - 1.0) < 1e-12);

    cfg.steps = 200;
    const auto full = run(cfg);
    const long qp = std::stol(*full.table.find_meta("peak_quantum"));
    const long cp = std::stol(*full.table.find_meta("peak_continuum"));
    CHECK(std::abs(std::abs(qp) - 141) <= 10);
    CHECK(std::abs(std::abs(qp) - std::abs(cp)) <= 5);
    CHECK(std::abs(std::stod(*full.table.find_meta("sigma_classical")) - 14.142135623731) < 1e-6);
    // Classical peak at the origin.
    double best = -1.0, at = 1.0;
    for (const auto& r : full.table.rows)
        if (r[2] > best) {
            best = r[2];
            at = r[0];
        }
    CHECK(at == 0.0);

    cfg.steps = 3;
    try {
        run(cfg);
        FAIL("odd steps accepted");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("even") != std::string::npos);
    }
}

TEST_CASE("continuum") {
    RunConfig cfg;
    cfg.command = Command::continuum;
    cfg.points = 4096;
    const auto r = run(cfg);
    CHECK(std::abs(column_sum(r.table, 3) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(std::stod(*r.table.find_meta("peak_xi"))) - 141.0) < 5.0);

    cfg.steps = 0;
    const auto initial = run(cfg);
    CHECK(std::abs(column_sum(initial.table, 3) - 1.0) < 1e-12);
}

TEST_CASE("sweep") {
    RunConfig cfg;
    cfg.command = Command::sweep;
    const auto r = run(cfg);
    CHECK(r.table.rows.size() == 16);
    CHECK(std::stod(*r.table.find_meta("fit_r2")) >= 0.999);
    for (const auto& row : r.table.rows)
        if (row[0] == 100.0) CHECK(std::abs(row[2] - 10.0) < 1e-10);

    cfg.n_list = {1};
    const auto one = run(cfg);
    CHECK(one.table.rows.size() == 1);
    CHECK_FALSE(one.table.find_meta("fit_r2").has_value());
    CHECK(one.table.find_meta("fit").has_value());

    cfg.n_list = {};
    CHECK_THROWS_AS(run(cfg), ConfigError);
}

TEST_CASE("fit_line") {
    const auto f = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
    CHECK(std::abs(f.slope - 2.0) < 1e-14);
    CHECK(std::abs(f.intercept - 1.0) < 1e-14);
    CHECK(std::abs(f.r_squared - 1.0) < 1e-14);
    CHECK_THROWS_AS(fit_line({1, 2}, {1, 2}), std::invalid_argument);
}

TEST_CASE("equivalence") {
    RunConfig cfg;
    cfg.command = Command::equivalence;
    const auto pass = run(cfg);
    CHECK(pass.passed);
    CHECK(pass.table.find_meta("status") == std::optional<std::string>("pass"));

    cfg.r0 = 1.0;
    cfg.l0 = 0.0;
    cfg.steps = 500;
    CHECK(run(cfg).passed);

    cfg.inject_error = 1e-6;
    const auto fail = run(cfg);
    CHECK_FALSE(fail.passed);
    CHECK(fail.table.find_meta("status") == std::optional<std::string>("fail"));

    cfg.inject_error = 0.0;
    cfg.steps = 1;
    CHECK_THROWS_AS(run(cfg), ConfigError);
}

TEST_CASE("cavity-check") {
    auto cfg = parse_config_text(std::string("command = cavity-check\n") + kGoodCavity);
    const auto ok = run(cfg);
    CHECK(ok.passed);
    CHECK(ok.table.find_meta("commensurate") == std::optional<std::string>("ok"));
    CHECK(ok.table.find_meta("resolvable") == std::optional<std::string>("ok"));
    // min(floor(100), floor(ln 0.1 / ln 0.99) = 229)
    CHECK(ok.table.find_meta("max_steps") == std::optional<std::string>("100"));
    CHECK(ok.summary.find("100") != std::string::npos);

    const auto detuned = parse_config_text("[cavity]\nomega_bar = 2.199114857512855e7\n", cfg);
    const auto bad = run(detuned);
    CHECK_FALSE(bad.passed);
    CHECK(bad.table.find_meta("commensurate") == std::optional<std::string>("violation"));

    auto overlap = parse_config_text("[cavity]\ndelta_omega = 1.8849555921538759e7\n", cfg);
    const auto ov = run(overlap);
    CHECK_FALSE(ov.passed);
    CHECK(ov.table.find_meta("resolvable") == std::optional<std::string>("violation"));
    CHECK(ov.table.find_meta("commensurate") == std::optional<std::string>("ok"));

    RunConfig none;
    none.command = Command::cavity_check;
    CHECK_THROWS_AS(run(none), ConfigError);
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("exit codes") {
    CHECK(run_cli("walk --steps 4").code == 0);
    CHECK(run_cli("equivalence --steps 20").code == 0);
    CHECK(run_cli("equivalence --steps 20 --inject-error 1e-6").code == 1);
    CHECK(run_cli("walk --steps x").code == 2);
    CHECK(run_cli("walk --initial 1,0,1,0").code == 2);
    CHECK(run_cli("compare --steps 3").code == 2);
    CHECK(run_cli("cavity-check").code == 2);
    CHECK(run_cli("fly").code == 2);
    CHECK(run_cli("walk --config /nonexistent.cfg").code == 2);
    CHECK(run_cli("walk --out /nonexistent/dir/out.csv").code == 2);

    const auto bad = write_temp("cli_bad_cavity.cfg", std::string(kGoodCavity) + "omega_bar = 2.199114857512855e7\n");
    CHECK(run_cli("cavity-check --config " + bad).code == 1);
    std::remove(bad.c_str());
}

TEST_CASE("output round-trips through the readers") {
    const auto csv = run_cli("walk --steps 10");
    REQUIRE(csv.code == 0);
    const auto t = parse_csv(csv.out);
    CHECK(t.columns == std::vector<std::string>{"m", "P"});
    CHECK(t.rows.size() == 11);
    CHECK(to_csv(t) == csv.out);

    const auto json = run_cli("walk --steps 10 --format json");
    REQUIRE(json.code == 0);
    RunConfig cfg;
    cfg.steps = 10;
    CHECK(parse_json(json.out) == run_walk(cfg).table);
}

TEST_CASE("flags override the config file") {
    const auto path = write_temp("cli_override.cfg", "steps = 6\nformat = json\n");
    const auto from_file = run_cli("walk --config " + path);
    CHECK(parse_json(from_file.out).find_meta("n") == std::optional<std::string>("6"));
    const auto overridden = run_cli("walk --config " + path + " --steps 8");
    CHECK(parse_json(overridden.out).find_meta("n") == std::optional<std::string>("8"));
    std::remove(path.c_str());
}

TEST_CASE("writes to --out") {
    const std::string path = "cli_out.json";
    REQUIRE(run_cli("classical --steps 6 --format json --out " + path).code == 0);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(parse_json(ss.str()).rows.size() == 7);
    std::remove(path.c_str());
}

TEST_CASE("determinism") {
    for (const char* args : {"walk --format json", "sweep --n-list 10:40:10", "continuum --steps 50 --points 2048",
                             "compare --steps 20", "equivalence --steps 30"}) {
        CAPTURE(args);
        const auto a = run_cli(args);
        const auto b = run_cli(args);
        CHECK(a.code == 0);
        CHECK(!a.out.empty());
        CHECK(a.out == b.out);
    }
}

}  // TEST_SUITE
