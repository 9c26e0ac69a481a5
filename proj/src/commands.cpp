#include "coinwalk/commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "coinwalk/continuum.hpp"
#include "coinwalk/decoupled.hpp"
#include "coinwalk/optical_map.hpp"
#include "coinwalk/walk_core.hpp"

namespace coinwalk {

namespace {

// Shortest text that reads back to the same double.
std::string num(double v) { return v == 0.0 ? "0" : fmt::format("{}", v); }

std::string amp(Amplitude a) { return num(a.real()) + "," + num(a.imag()); }

void require_steps(const RunConfig& cfg) {
    if (cfg.steps < 0) throw ConfigError("steps must be non-negative");
}

WalkState make_walk(const RunConfig& cfg, int capacity) {
    try {
        return new_walk(cfg.r0, cfg.l0, capacity);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

void add_walk_meta(Table& t, const RunConfig& cfg) {
    t.add_meta("command", command_name(cfg.command));
    t.add_meta("n", std::to_string(cfg.steps));
    t.add_meta("initial", amp(cfg.r0) + "," + amp(cfg.l0));
    t.add_meta("coin", cfg.coin.label());
}

bool keep_site(Site m, int n, bool all_sites) { return all_sites || (m + n) % 2 == 0; }

// Largest-value site with m > 0; the walk peaks are mirror images here.
Site positive_peak(const std::vector<Site>& sites, const std::vector<double>& values) {
    Site best = 0;
    double best_v = -1.0;
    for (std::size_t i = 0; i < sites.size(); ++i)
        if (sites[i] > 0 && values[i] > best_v) {
            best_v = values[i];
            best = sites[i];
        }
    return best;
}

double quantum_sigma(const RunConfig& cfg, int n) {
    return std_dev(probability(evolve(make_walk(cfg, n), cfg.coin.op(), n)));
}

}  // namespace

unsigned sweep_threads() {
    unsigned fallback = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("COINWALK_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return fallback;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3) throw std::invalid_argument("linear fit needs at least 3 paired points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

RunResult run_walk(const RunConfig& cfg) {
    require_steps(cfg);
    const auto walk = evolve(make_walk(cfg, cfg.steps), cfg.coin.op(), cfg.steps);
    const auto dist = probability(walk);

    RunResult r;
    auto& t = r.table;
    add_walk_meta(t, cfg);
    t.add_meta("sigma", num(std_dev(dist)));
    t.add_meta("sites", cfg.all_sites ? "all" : "nonzero-parity");
    t.columns = {"m", "P"};
    for (Site m = -cfg.steps; m <= cfg.steps; ++m)
        if (keep_site(m, cfg.steps, cfg.all_sites)) t.rows.push_back({static_cast<double>(m), dist.at(m)});
    r.summary = fmt::format("walk n={} sigma={:.6f} total={:.15f}", cfg.steps, std_dev(dist), dist.total());
    return r;
}

RunResult run_classical(const RunConfig& cfg) {
    require_steps(cfg);
    const auto dist = classical_distribution(cfg.steps);
    RunResult r;
    auto& t = r.table;
    t.add_meta("command", "classical");
    t.add_meta("n", std::to_string(cfg.steps));
    t.add_meta("sigma", num(std_dev(dist)));
    t.columns = {"m", "P"};
    for (Site m = -cfg.steps; m <= cfg.steps; ++m)
        if (keep_site(m, cfg.steps, cfg.all_sites)) t.rows.push_back({static_cast<double>(m), dist.at(m)});
    r.summary = fmt::format("classical n={} sigma={:.6f}", cfg.steps, std_dev(dist));
    return r;
}

RunResult run_continuum(const RunConfig& cfg) {
    require_steps(cfg);
    if (!(cfg.alpha > 0.0)) throw ConfigError("alpha must be positive");
    const double tau = cfg.steps;
    const double half_width = std::max(4.0 * tau, 16.0);
    GridSpec grid;
    SideSeeds seeds;
    try {
        grid = GridSpec::periodic(-half_width, half_width, cfg.points);
        seeds = seeds_from_walk(cfg.r0, cfg.l0, cfg.alpha);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    FieldGrid right, left;
    if (tau > kTauMin) {
        right = continuum_solution(seeds.right, grid, tau, cfg.steps);
        left = continuum_solution(seeds.left, grid, tau, cfg.steps);
    } else {
        // The closed form is singular at tau = 0; use the Gaussian data itself.
        auto initial = [&](const ContinuumParams& p) {
            auto plus = initial_field(p, grid, FieldSign::plus);
            const auto minus = initial_field(p, grid, FieldSign::minus);
            for (std::size_t i = 0; i < plus.values.size(); ++i) plus.values[i] += minus.values[i];
            return plus;
        };
        right = initial(seeds.right);
        left = initial(seeds.left);
    }
    const auto total = intensity(right, left, false);
    double sum = 0.0;
    for (double v : total) sum += v;
    const double scale = sum > 0.0 ? 1.0 / sum : 0.0;

    RunResult r;
    auto& t = r.table;
    t.add_meta("command", "continuum");
    t.add_meta("tau", std::to_string(cfg.steps));
    t.add_meta("alpha", num(cfg.alpha));
    t.add_meta("initial", amp(cfg.r0) + "," + amp(cfg.l0));
    t.add_meta("grid", fmt::format("{}:{}:{}", num(grid.xi_min), num(grid.spacing), grid.points));
    t.add_meta("normalization", "unit sum over grid");
    t.columns = {"xi", "I_R", "I_L", "I"};
    double peak_xi = 0.0;
    double peak_value = -1.0;
    for (std::size_t i = 0; i < total.size(); ++i) {
        t.rows.push_back({grid.xi(i), std::norm(right.values[i]) * scale, std::norm(left.values[i]) * scale,
                          total[i] * scale});
        if (grid.xi(i) >= 0.0 && total[i] > peak_value) {
            peak_value = total[i];
            peak_xi = grid.xi(i);
        }
    }
    t.add_meta("peak_xi", num(peak_xi));
    r.summary = fmt::format("continuum tau={} alpha={} peak at xi={:.3f}", cfg.steps, cfg.alpha, peak_xi);
    return r;
}

RunResult run_compare(const RunConfig& cfg) {
    if (cfg.steps < 2 || cfg.steps % 2 != 0)
        throw ConfigError(fmt::format(
            "compare needs an even step count >= 2 (got {}): the quantum and classical walks live on even "
            "sites only at even n, and the continuum curve is sampled on the same sites",
            cfg.steps));
    if (!(cfg.alpha > 0.0)) throw ConfigError("alpha must be positive");
    const int n = cfg.steps;
    const auto quantum = probability(evolve(make_walk(cfg, n), cfg.coin.op(), n));
    const auto classical = classical_distribution(n);
    const auto seeds = seeds_from_walk(cfg.r0, cfg.l0, cfg.alpha);

    std::vector<Site> sites;
    std::vector<double> cont;
    double cont_sum = 0.0;
    for (Site m = -n; m <= n; m += 2) {
        const double xi = static_cast<double>(m);
        const double v = std::norm(continuum_at(seeds.right, xi, n, n)) + std::norm(continuum_at(seeds.left, xi, n, n));
        sites.push_back(m);
        cont.push_back(v);
        cont_sum += v;
    }
    for (double& v : cont) v /= cont_sum;

    RunResult r;
    auto& t = r.table;
    add_walk_meta(t, cfg);
    t.add_meta("alpha", num(cfg.alpha));
    std::vector<double> pq;
    for (Site m : sites) pq.push_back(quantum.at(m));
    const Site q_peak = positive_peak(sites, pq);
    const Site c_peak = positive_peak(sites, cont);
    t.add_meta("sigma_quantum", num(std_dev(quantum)));
    t.add_meta("sigma_classical", num(std_dev(classical)));
    t.add_meta("peak_quantum", std::to_string(q_peak));
    t.add_meta("peak_continuum", std::to_string(c_peak));
    t.columns = {"m", "P_quantum", "P_classical", "I_continuum"};
    for (std::size_t i = 0; i < sites.size(); ++i)
        t.rows.push_back({static_cast<double>(sites[i]), pq[i], classical.at(sites[i]), cont[i]});
    r.summary = fmt::format("compare n={} quantum peak {} continuum peak {} sigma_q={:.4f} sigma_c={:.4f}", n,
                            q_peak, c_peak, std_dev(quantum), std_dev(classical));
    return r;
}

RunResult run_sweep(const RunConfig& cfg) {
    if (cfg.n_list.empty()) throw ConfigError("sweep needs a non-empty step list");
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i)
        if (cfg.n_list[i] < 0 || (i > 0 && cfg.n_list[i] <= cfg.n_list[i - 1]))
            throw ConfigError("sweep step list must be non-negative and strictly ascending");
    make_walk(cfg, 0);  // surface a bad initial state before spawning workers

    const std::size_t count = cfg.n_list.size();
    std::vector<double> sigma_q(count), sigma_c(count);
    const unsigned workers = std::min<unsigned>(sweep_threads(), static_cast<unsigned>(count));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                sigma_q[i] = quantum_sigma(cfg, cfg.n_list[i]);
                sigma_c[i] = std_dev(classical_distribution(cfg.n_list[i]));
            }
        });
    for (auto& th : pool) th.join();

    RunResult r;
    auto& t = r.table;
    t.add_meta("command", "sweep");
    t.add_meta("initial", amp(cfg.r0) + "," + amp(cfg.l0));
    t.add_meta("coin", cfg.coin.label());
    t.columns = {"n", "sigma_quantum", "sigma_classical"};
    std::vector<double> ns;
    for (std::size_t i = 0; i < count; ++i) {
        ns.push_back(cfg.n_list[i]);
        t.rows.push_back({ns.back(), sigma_q[i], sigma_c[i]});
    }
    if (count >= 3) {
        const auto fit = fit_line(ns, sigma_q);
        t.add_meta("fit_slope", num(fit.slope));
        t.add_meta("fit_intercept", num(fit.intercept));
        t.add_meta("fit_r2", num(fit.r_squared));
        r.summary = fmt::format("sweep {} points: sigma_quantum ~ {:.6f} n + {:.6f} (R^2 = {:.8f})", count, fit.slope,
                                fit.intercept, fit.r_squared);
    } else {
        t.add_meta("fit", "none (fewer than 3 points)");
        r.summary = fmt::format("sweep {} points (no fit)", count);
    }
    return r;
}

RunResult run_equivalence(const RunConfig& cfg) {
    if (cfg.steps < 2) throw ConfigError("equivalence needs steps >= 2");
    make_walk(cfg, 0);
    const auto profile = equivalence_profile(cfg.r0, cfg.l0, cfg.steps, Amplitude{cfg.inject_error, 0.0});
    const double worst = *std::max_element(profile.begin(), profile.end());

    RunResult r;
    r.passed = worst < kEquivalenceThreshold;
    auto& t = r.table;
    t.add_meta("command", "equivalence");
    t.add_meta("n", std::to_string(cfg.steps));
    t.add_meta("initial", amp(cfg.r0) + "," + amp(cfg.l0));
    t.add_meta("coin", "hadamard");
    t.add_meta("max_deviation", num(worst));
    t.add_meta("threshold", num(kEquivalenceThreshold));
    t.add_meta("status", r.passed ? "pass" : "fail");
    t.columns = {"n", "deviation"};
    for (std::size_t n = 0; n < profile.size(); ++n) t.rows.push_back({static_cast<double>(n), profile[n]});
    r.summary = fmt::format("equivalence n={} max deviation {:.3e}: {}", cfg.steps, worst, r.passed ? "PASS" : "FAIL");
    return r;
}

RunResult run_cavity_check(const RunConfig& cfg) {
    if (!cfg.cavity) throw ConfigError("cavity-check needs a [cavity] section in the config file");
    const auto& sec = *cfg.cavity;
    std::int64_t budget = 0;
    try {
        sec.cavity.validate();
        budget = max_steps(sec.cavity, sec.eom_bandwidth, sec.intensity_floor);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("cavity config: ") + e.what());
    }
    const auto comm = validate_commensurate(sec.cavity);
    const auto res = resolvable(sec.cavity);

    RunResult r;
    r.passed = comm.ok && res.ok;
    auto& t = r.table;
    auto measure = [](double v) { return std::isfinite(v) ? num(v) : std::string("inf"); };
    t.add_meta("command", "cavity-check");
    t.add_meta("commensurate", comm.ok ? "ok" : "violation");
    t.add_meta("detuning", measure(comm.measure));
    t.add_meta("resolvable", res.ok ? "ok" : "violation");
    t.add_meta("separation_ratio", measure(res.measure));
    t.add_meta("resolvability_factor", num(sec.cavity.resolvability_factor));
    t.add_meta("max_steps", std::to_string(budget));
    t.add_meta("roundtrips_per_step", std::to_string(sec.cavity.roundtrips_per_step));
    t.add_meta("roundtrips_total", std::to_string(budget * sec.cavity.roundtrips_per_step));
    t.add_meta("status", r.passed ? "ok" : "violation");

    r.summary = fmt::format(
        "cavity check\n  commensurability: {} ({})\n  resolvability:    {} ({})\n  step budget:      {} steps "
        "({} roundtrips per step)",
        comm.ok ? "ok" : "VIOLATION", comm.message, res.ok ? "ok" : "VIOLATION", res.message, budget,
        sec.cavity.roundtrips_per_step);
    return r;
}

RunResult run(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::walk: return run_walk(cfg);
        case Command::classical: return run_classical(cfg);
        case Command::continuum: return run_continuum(cfg);
        case Command::compare: return run_compare(cfg);
        case Command::sweep: return run_sweep(cfg);
        case Command::equivalence: return run_equivalence(cfg);
        case Command::cavity_check: return run_cavity_check(cfg);
    }
    throw ConfigError("unknown command");
}

}  // namespace coinwalk
