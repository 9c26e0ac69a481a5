// Experiment configuration shared by the command-line runner and config files.
//
// Config files are flat "key = value" text. Blank lines and lines starting
// with '#' are ignored. An optional "[cavity]" section holds the optical
// parameters; see docs/config.md for the full schema.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coinwalk/lattice.hpp"
#include "coinwalk/optical_map.hpp"
#include "coinwalk/table.hpp"
#include "coinwalk/walk_core.hpp"

namespace coinwalk {

/// Bad flags, bad config files, unwritable outputs. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { walk, classical, continuum, compare, sweep, equivalence, cavity_check };

struct CoinChoice {
    enum class Kind { hadamard, phase };
    Kind kind = Kind::hadamard;
    double phi = 0.0;

    CoinOperator op() const { return kind == Kind::hadamard ? hadamard_coin() : phase_coin(phi); }
    std::string label() const;
};

struct CavitySection {
    CavityConfig cavity;
    double eom_bandwidth = 0.0;
    double intensity_floor = 0.01;
};

struct RunConfig {
    Command command = Command::walk;
    int steps = 200;
    Amplitude r0{0.70710678118654752440, 0.0};
    Amplitude l0{0.0, 0.70710678118654752440};
    CoinChoice coin;
    double alpha = 0.4;
    std::string output_path;  // empty: standard output
    Format format = Format::csv;
    bool all_sites = false;
    std::vector<int> n_list = default_n_list();
    /// Sample count of the continuum grid over [-4 tau, 4 tau).
    std::size_t points = 8192;
    std::optional<CavitySection> cavity;
    /// Amplitude added to one decoupled trace entry before the equivalence
    /// comparison. Zero outside of tests.
    double inject_error = 0.0;

    static std::vector<int> default_n_list();
};

Command parse_command(std::string_view name);
std::string command_name(Command c);
Format parse_format(std::string_view name);
/// "hadamard" or "phase:<radians>"
CoinChoice parse_coin(std::string_view text);
/// "re,im,re,im" for (r0, l0)
std::pair<Amplitude, Amplitude> parse_initial(std::string_view text);
/// "a,b,c" or "start:stop:step" (inclusive stop)
std::vector<int> parse_n_list(std::string_view text);

/// Applies every key in `text` on top of `base`.
RunConfig parse_config_text(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

}  // namespace coinwalk
