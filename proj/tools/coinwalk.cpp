// coinwalk: command-line runner for the quantum walk experiments.
//
//   coinwalk walk --steps 200 --format json --out walk.json
//   coinwalk compare --steps 200 --alpha 0.4
//   coinwalk cavity-check --config cavity.cfg
//
// Exit codes: 0 success, 1 failed physics check, 2 usage or config error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "coinwalk/commands.hpp"
#include "coinwalk/run_config.hpp"

namespace {

constexpr int kExitPhysics = 1;
constexpr int kExitUsage = 2;

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw coinwalk::ConfigError("cannot open output file '" + path + "'");
    out << text;
    if (!out) throw coinwalk::ConfigError("failed writing output file '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coined quantum walk on a line: simulation, continuum limit and optical mapping"};
    app.require_subcommand(1, 1);

    std::string steps, initial, coin, alpha, out, format, config_path, n_list, points;
    bool all_sites = false;
    double inject_error = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--steps", steps, "number of walk steps (tau for the continuum)");
        sub->add_option("--initial", initial, "initial coin state re,im,re,im");
        sub->add_option("--coin", coin, "hadamard | phase:<rad>");
        sub->add_option("--alpha", alpha, "Gaussian width of the continuum seeds");
        sub->add_option("--out", out, "output file (default: standard output)");
        sub->add_option("--format", format, "csv | json");
        sub->add_flag("--all-sites", all_sites, "also emit zero-probability parity sites");
        sub->add_option("--config", config_path, "key = value config file; flags override it");
    };

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"walk", "quantum walk distribution P_m after n steps"},
        {"classical", "binomial distribution of the classical walk"},
        {"continuum", "Airy-kernel continuum intensity on a grid"},
        {"compare", "quantum, classical and continuum curves on even sites"},
        {"sweep", "standard deviation versus n with linear fit"},
        {"equivalence", "coupled vs decoupled recurrence deviation"},
        {"cavity-check", "optical cavity commensurability, resolvability and step budget"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub);
        if (name == "sweep") sub->add_option("--n-list", n_list, "step counts: a,b,c or start:stop:step");
        if (name == "continuum") sub->add_option("--points", points, "grid points over [-4 tau, 4 tau)");
        if (name == "equivalence")
            sub->add_option("--inject-error", inject_error, "perturb the decoupled trace (testing)")->group("");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        coinwalk::RunConfig cfg;
        if (!config_path.empty()) cfg = coinwalk::load_config(config_path);
        cfg.command = coinwalk::parse_command(app.get_subcommands().front()->get_name());

        // Flags given on the command line win over the config file.
        std::string overrides;
        auto set = [&](const char* key, const std::string& value) {
            if (!value.empty()) overrides += std::string(key) + " = " + value + "\n";
        };
        set("steps", steps);
        set("initial", initial);
        set("coin", coin);
        set("alpha", alpha);
        set("out", out);
        set("format", format);
        set("n_list", n_list);
        set("points", points);
        if (all_sites) overrides += "all_sites = true\n";
        cfg = coinwalk::parse_config_text(overrides, std::move(cfg));
        cfg.inject_error = inject_error;

        const auto result = coinwalk::run(cfg);
        write_output(cfg.output_path, coinwalk::encode(result.table, cfg.format));
        std::cerr << result.summary << "\n";
        return result.passed ? 0 : kExitPhysics;
    } catch (const coinwalk::ConfigError& e) {
        std::cerr << "coinwalk: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "coinwalk: " << e.what() << "\n";
        return kExitUsage;
    }
}
