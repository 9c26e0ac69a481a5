#include "coinwalk/run_config.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <sstream>

namespace coinwalk {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view s, std::string_view what) {
    s = trim(s);
    T v{};
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty())
        throw ConfigError(fmt::format("invalid {}: '{}'", what, s));
    return v;
}

bool parse_bool(std::string_view s, std::string_view what) {
    s = trim(s);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError(fmt::format("invalid {}: '{}' (expected true or false)", what, s));
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

void apply_main_key(RunConfig& cfg, std::string_view key, std::string_view value) {
    if (key == "command")
        cfg.command = parse_command(value);
    else if (key == "steps")
        cfg.steps = parse_number<int>(value, "steps");
    else if (key == "initial")
        std::tie(cfg.r0, cfg.l0) = parse_initial(value);
    else if (key == "coin")
        cfg.coin = parse_coin(value);
    else if (key == "alpha")
        cfg.alpha = parse_number<double>(value, "alpha");
    else if (key == "out")
        cfg.output_path = std::string(value);
    else if (key == "format")
        cfg.format = parse_format(value);
    else if (key == "all_sites")
        cfg.all_sites = parse_bool(value, "all_sites");
    else if (key == "n_list")
        cfg.n_list = parse_n_list(value);
    else if (key == "points")
        cfg.points = parse_number<std::size_t>(value, "points");
    else
        throw ConfigError(fmt::format("unknown config key '{}'", key));
}

void apply_cavity_key(CavitySection& sec, std::string_view key, std::string_view value) {
    auto& c = sec.cavity;
    if (key == "omega0")
        c.omega0 = parse_number<double>(value, key);
    else if (key == "omega_bar")
        c.omega_bar = parse_number<double>(value, key);
    else if (key == "omega_fsr")
        c.omega_fsr = parse_number<double>(value, key);
    else if (key == "f")
        c.f = parse_number<std::int64_t>(value, key);
    else if (key == "delta_omega")
        c.delta_omega = parse_number<double>(value, key);
    else if (key == "loss_per_roundtrip")
        c.loss_per_roundtrip = parse_number<double>(value, key);
    else if (key == "resolvability_factor")
        c.resolvability_factor = parse_number<double>(value, key);
    else if (key == "roundtrips_per_step")
        c.roundtrips_per_step = parse_number<std::int64_t>(value, key);
    else if (key == "eom_bandwidth")
        sec.eom_bandwidth = parse_number<double>(value, key);
    else if (key == "intensity_floor")
        sec.intensity_floor = parse_number<double>(value, key);
    else
        throw ConfigError(fmt::format("unknown cavity key '{}'", key));
}

}  // namespace

std::string CoinChoice::label() const {
    return kind == Kind::hadamard ? std::string("hadamard") : fmt::format("phase:{:.17g}", phi);
}

std::vector<int> RunConfig::default_n_list() {
    std::vector<int> out;
    for (int n = 50; n <= 200; n += 10) out.push_back(n);
    return out;
}

Command parse_command(std::string_view name) {
    name = trim(name);
    if (name == "walk") return Command::walk;
    if (name == "classical") return Command::classical;
    if (name == "continuum") return Command::continuum;
    if (name == "compare") return Command::compare;
    if (name == "sweep") return Command::sweep;
    if (name == "equivalence") return Command::equivalence;
    if (name == "cavity-check") return Command::cavity_check;
    throw ConfigError(fmt::format("unknown command '{}'", name));
}

std::string command_name(Command c) {
    switch (c) {
        case Command::walk: return "walk";
        case Command::classical: return "classical";
        case Command::continuum: return "continuum";
        case Command::compare: return "compare";
        case Command::sweep: return "sweep";
        case Command::equivalence: return "equivalence";
        case Command::cavity_check: return "cavity-check";
    }
    return "unknown";
}

Format parse_format(std::string_view name) {
    name = trim(name);
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw ConfigError(fmt::format("unknown format '{}' (expected csv or json)", name));
}

CoinChoice parse_coin(std::string_view text) {
    text = trim(text);
    if (text == "hadamard") return {};
    if (text.starts_with("phase:")) {
        CoinChoice c{CoinChoice::Kind::phase, parse_number<double>(text.substr(6), "phase angle")};
        if (!std::isfinite(c.phi)) throw ConfigError("phase angle must be finite");
        return c;
    }
    throw ConfigError(fmt::format("unknown coin '{}' (expected hadamard or phase:<rad>)", text));
}

std::pair<Amplitude, Amplitude> parse_initial(std::string_view text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) throw ConfigError("initial state needs four numbers: re,im,re,im");
    double v[4];
    for (int i = 0; i < 4; ++i) v[i] = parse_number<double>(parts[static_cast<std::size_t>(i)], "initial amplitude");
    return {{v[0], v[1]}, {v[2], v[3]}};
}

std::vector<int> parse_n_list(std::string_view text) {
    text = trim(text);
    std::vector<int> out;
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw ConfigError("step range must be start:stop:step");
        const int start = parse_number<int>(parts[0], "range start");
        const int stop = parse_number<int>(parts[1], "range stop");
        const int stride = parse_number<int>(parts[2], "range step");
        if (stride <= 0) throw ConfigError("range step must be positive");
        for (int n = start; n <= stop; n += stride) out.push_back(n);
    } else {
        for (auto part : split(text, ',')) out.push_back(parse_number<int>(part, "step count"));
    }
    if (out.empty()) throw ConfigError("step list is empty");
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] < 0) throw ConfigError("step counts must be non-negative");
        if (i > 0 && out[i] <= out[i - 1]) throw ConfigError("step list must be strictly ascending");
    }
    return out;
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
    RunConfig cfg = std::move(base);
    bool in_cavity = false;
    int line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '[') {
            if (line != "[cavity]") throw ConfigError(fmt::format("line {}: unknown section {}", line_no, line));
            in_cavity = true;
            if (!cfg.cavity) cfg.cavity.emplace();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(fmt::format("line {}: expected key = value", line_no));
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        try {
            if (in_cavity)
                apply_cavity_key(*cfg.cavity, key, value);
            else
                apply_main_key(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(fmt::format("line {}: {}", line_no, e.what()));
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", path));
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), std::move(base));
}

}  // namespace coinwalk
