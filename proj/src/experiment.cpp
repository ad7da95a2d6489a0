#include "stringdamp/experiment.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "stringdamp/galerkin_oracle.hpp"
#include "stringdamp/support_geometry.hpp"

namespace stringdamp {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw config_error(key + ": not a number: '" + s + "'");
    }
}

std::uint64_t parse_uint(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size() || v < 0) throw std::invalid_argument("");
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        throw config_error(key + ": not a nonnegative integer: '" + s + "'");
    }
}

std::vector<double> parse_double_list(const std::string& key, const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    return out;
}

// "n=v" terms, comma separated in config files, one per flag on the CLI.
std::vector<std::pair<std::size_t, double>> parse_terms(const std::string& key,
                                                        const std::string& s) {
    std::vector<std::pair<std::size_t, double>> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw config_error(key + ": expected n=value, got '" + item + "'");
        }
        out.emplace_back(static_cast<std::size_t>(parse_uint(key, trim(item.substr(0, eq)))),
                         parse_double(key, trim(item.substr(eq + 1))));
    }
    return out;
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(static_cast<unsigned long>(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

EvenFourier momentum_component(const std::vector<std::pair<std::size_t, double>>& terms) {
    std::size_t n_max = 0;
    for (const auto& [n, v] : terms) n_max = std::max(n_max, n);
    std::vector<double> c(n_max + 1, 0.0);
    for (const auto& [n, v] : terms) c[n] = v;
    return EvenFourier(std::move(c));
}

}  // namespace

Mode parse_mode(const std::string& name) {
    if (name == "simulate") return Mode::simulate;
    if (name == "decay") return Mode::decay;
    if (name == "support") return Mode::support;
    if (name == "oracle") return Mode::oracle;
    if (name == "bound-check" || name == "bound_check") return Mode::bound_check;
    throw config_error("mode: unknown mode '" + name + "'");
}

Problem parse_problem(const std::string& name) {
    if (name == "stop" || name == "stop_moving") return Problem::stop_moving;
    if (name == "damp" || name == "damping") return Problem::damping;
    throw config_error("problem: must be 'stop' or 'damp', got '" + name + "'");
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "mode") {
        cfg.mode = parse_mode(value);
    } else if (key == "grid") {
        cfg.grid = static_cast<std::size_t>(parse_uint(key, value));
    } else if (key == "horizon") {
        cfg.horizon = parse_double(key, value);
    } else if (key == "problem") {
        cfg.problem = parse_problem(value);
    } else if (key == "seed") {
        cfg.seed = parse_uint(key, value);
    } else if (key == "amplitude") {
        cfg.amplitude = parse_double(key, value);
    } else if (key == "decay_rate") {
        cfg.decay_rate = parse_double(key, value);
    } else if (key == "bandlimit") {
        cfg.bandlimit = static_cast<std::size_t>(parse_uint(key, value));
    } else if (key == "f0") {
        cfg.f0_coeffs = parse_double_list(key, value);
    } else if (key == "f1") {
        cfg.f1_coeffs = parse_double_list(key, value);
    } else if (key == "psi") {
        auto terms = parse_terms(key, value);
        cfg.psi_terms.insert(cfg.psi_terms.end(), terms.begin(), terms.end());
    } else if (key == "phi") {
        auto terms = parse_terms(key, value);
        cfg.phi_terms.insert(cfg.phi_terms.end(), terms.begin(), terms.end());
    } else if (key == "oracle_modes") {
        cfg.oracle_modes = static_cast<std::size_t>(parse_uint(key, value));
    } else if (key == "oracle_dt") {
        cfg.oracle_dt = parse_double(key, value);
    } else if (key == "oracle_eps") {
        cfg.oracle_eps = parse_double(key, value);
    } else if (key == "n_controls") {
        cfg.n_controls = static_cast<std::size_t>(parse_uint(key, value));
    } else if (key == "intra_samples") {
        cfg.intra_samples = static_cast<std::size_t>(parse_uint(key, value));
    } else if (key == "out") {
        cfg.out = value;
    } else if (key == "control") {
        cfg.control_path = value;
    } else {
        throw config_error("unknown config key '" + key + "'");
    }
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open '" + path + "'");
    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("config: line " + std::to_string(lineno) +
                               " is not 'key = value'");
        }
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.grid < 2 || cfg.grid % 2 != 0) {
        throw config_error("grid: must be even and >= 2");
    }
    if (!(cfg.horizon >= 0.0) || !std::isfinite(cfg.horizon)) {
        throw config_error("horizon: must be a nonnegative number");
    }
    if (!(cfg.amplitude >= 0.0)) {
        throw config_error("amplitude: must be nonnegative");
    }
    const bool explicit_init = !cfg.f0_coeffs.empty() || !cfg.f1_coeffs.empty();
    if (explicit_init) {
        const std::size_t deg =
            std::max(cfg.f0_coeffs.empty() ? 0 : cfg.f0_coeffs.size() - 1,
                     cfg.f1_coeffs.empty() ? 0 : cfg.f1_coeffs.size() - 1);
        if (cfg.grid < 2 * deg + 2) {
            throw config_error("grid: too coarse for the explicit coefficients (need >= " +
                               std::to_string(2 * deg + 2) + ")");
        }
    } else if (cfg.amplitude > 0.0) {
        if (!(cfg.decay_rate > 0.0)) {
            throw config_error("decay_rate: must be positive");
        }
        if (cfg.bandlimit < 1) {
            throw config_error("bandlimit: must be >= 1");
        }
        if (cfg.grid < 2 * cfg.bandlimit + 2) {
            throw config_error("grid: too coarse for bandlimit (need >= " +
                               std::to_string(2 * cfg.bandlimit + 2) + ")");
        }
    }
    if (cfg.mode == Mode::oracle) {
        if (cfg.oracle_modes < 1) throw config_error("oracle_modes: must be >= 1");
        if (!(cfg.oracle_dt > 0.0)) throw config_error("oracle_dt: must be positive");
        if (!(cfg.oracle_eps > 0.0)) throw config_error("oracle_eps: must be positive");
        if (cfg.grid < 2 * cfg.oracle_modes + 2) {
            throw config_error("grid: too coarse for oracle_modes (need >= " +
                               std::to_string(2 * cfg.oracle_modes + 2) + ")");
        }
    }
    if (cfg.mode == Mode::bound_check && cfg.n_controls == 0) {
        throw config_error("n_controls: must be >= 1");
    }
    if (cfg.out.empty()) {
        throw config_error("out: output path must not be empty");
    }
}

std::pair<EvenFourier, EvenFourier> gen_initial(std::uint64_t seed, double amplitude,
                                                double decay_rate, std::size_t bandlimit) {
    if (!(amplitude >= 0.0)) throw config_error("amplitude: must be nonnegative");
    if (!(decay_rate > 0.0)) throw config_error("decay_rate: must be positive");
    std::mt19937_64 rng(seed);
    auto draw = [&rng]() {
        return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    };
    auto component = [&]() {
        std::vector<double> c(bandlimit + 1, 0.0);
        for (std::size_t n = 1; n <= bandlimit; ++n) {
            c[n] = amplitude * std::pow(static_cast<double>(n), -decay_rate) * draw();
        }
        return EvenFourier(std::move(c));
    };
    EvenFourier f0 = component();
    EvenFourier f1 = component();
    return {std::move(f0), std::move(f1)};
}

StatePair initial_state(const ExperimentConfig& cfg) {
    if (!cfg.f0_coeffs.empty() || !cfg.f1_coeffs.empty()) {
        StatePair f;
        f.f0 = EvenFourier(cfg.f0_coeffs.empty() ? std::vector<double>{0.0} : cfg.f0_coeffs);
        f.f1 = EvenFourier(cfg.f1_coeffs.empty() ? std::vector<double>{0.0} : cfg.f1_coeffs);
        return f;
    }
    auto [f0, f1] = gen_initial(cfg.seed, cfg.amplitude, cfg.decay_rate, cfg.bandlimit);
    return StatePair{std::move(f0), std::move(f1)};
}

void write_trajectory_csv(const std::string& path, const TrajectoryRecord& rec) {
    std::string out = "t,rho_stop,rho_damp,u,phi0\n";
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        out += fmt(rec.times[i]) + ',' + fmt(rec.rho_stop[i]) + ',' + fmt(rec.rho_damp[i]) +
               ',' + fmt(rec.u[i]) + ',' + fmt(rec.phi0[i]) + '\n';
    }
    atomic_write(path, out);
}

TrajectoryRecord read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CSV: " + path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "t,rho_stop,rho_damp,u,phi0") {
        throw std::runtime_error("unexpected CSV header in " + path);
    }
    TrajectoryRecord rec;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != 5) throw std::runtime_error("malformed CSV row in " + path);
        rec.times.push_back(row[0]);
        rec.rho_stop.push_back(row[1]);
        rec.rho_damp.push_back(row[2]);
        rec.u.push_back(row[3]);
        rec.phi0.push_back(row[4]);
    }
    return rec;
}

DecaySummary decay_summary(const TrajectoryRecord& rec) {
    DecaySummary s;
    if (rec.times.empty()) {
        s.degenerate = true;
        return s;
    }
    s.rho0 = rec.primary_rho().front();
    s.rhoT = rec.primary_rho().back();
    s.T = rec.times.back();
    s.degenerate = s.rho0 == 0.0 || s.T == 0.0;
    s.rate = s.degenerate ? 0.0 : (s.rho0 - s.rhoT) / s.T;
    return s;
}

void write_decay_summary_csv(const std::string& path, const DecaySummary& s) {
    std::string out = "rho0,rhoT,T,rate,degenerate\n";
    out += fmt(s.rho0) + ',' + fmt(s.rhoT) + ',' + fmt(s.T) + ',' + fmt(s.rate) + ',' +
           (s.degenerate ? "true" : "false") + '\n';
    atomic_write(path, out);
}

PiecewiseControl load_control_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("control: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw config_error("control: invalid JSON in '" + path + "': " + e.what());
    }
    try {
        return PiecewiseControl(j.at("breakpoints").get<std::vector<double>>(),
                                j.at("values").get<std::vector<double>>(),
                                j.at("duration").get<double>());
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("control: ") + e.what());
    } catch (const std::exception& e) {
        throw config_error("control: missing or malformed field in '" + path + "': " + e.what());
    }
}

void write_control_json(const std::string& path, const PiecewiseControl& u) {
    nlohmann::json j;
    j["duration"] = u.duration;
    j["breakpoints"] = u.breakpoints;
    j["values"] = u.values;
    atomic_write(path, j.dump(2) + "\n");
}

void write_bound_check_csv(const std::string& path, const BoundCheckReport& rep) {
    std::string out = "kind,rate,rho0,rhoT,M,within_tol\n";
    for (const auto& row : rep.rows) {
        out += row.kind + ',' + fmt(row.rate) + ',' + fmt(row.rho0) + ',' + fmt(row.rhoT) +
               ',' + fmt(row.M) + ',' + (row.within_tol ? "true" : "false") + '\n';
    }
    atomic_write(path, out);
}

namespace {

int run_simulate(const ExperimentConfig& cfg, bool with_summary) {
    const StatePair f = initial_state(cfg);
    const CircleGrid G = to_traveling_wave(f, cfg.grid);
    TrajectoryRecord rec;
    if (!cfg.control_path.empty()) {
        const PiecewiseControl u = load_control_json(cfg.control_path);
        rec = simulate_open_loop(G, u, cfg.horizon, cfg.problem);
    } else {
        rec = trajectory_rho(G, cfg.horizon, cfg.problem, cfg.intra_samples);
    }
    write_trajectory_csv(cfg.out, rec);
    if (with_summary) {
        const DecaySummary s = decay_summary(rec);
        write_decay_summary_csv(cfg.out + ".summary.csv", s);
        std::cout << "rho0 = " << fmt(s.rho0) << "\nrhoT = " << fmt(s.rhoT)
                  << "\nT = " << fmt(s.T) << "\nrate = " << fmt(s.rate)
                  << "\ndegenerate = " << (s.degenerate ? "true" : "false") << "\n";
    }
    return 0;
}

int run_support(const ExperimentConfig& cfg) {
    if (cfg.psi_terms.empty() && cfg.phi_terms.empty()) {
        throw config_error("psi/phi: support mode needs at least one momentum coefficient");
    }
    Momentum xi;
    xi.xi0 = momentum_component(cfg.phi_terms);
    xi.xi1 = momentum_component(cfg.psi_terms);
    const double hd = support_D(xi, cfg.horizon);
    double homega = 0.0;
    try {
        homega = support_Omega(xi);
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("phi: ") + e.what());
    }
    const double ratio = homega != 0.0 ? hd / homega : 0.0;
    std::cout << "H_D(" << fmt(cfg.horizon) << ") = " << fmt(hd) << "\n"
              << "H_Omega = " << fmt(homega) << "\n"
              << "H_D/H_Omega = " << fmt(ratio) << "\n";
    return 0;
}

int run_oracle(const ExperimentConfig& cfg) {
    const StatePair f = initial_state(cfg);
    const ModalState s0 = project_state(f, cfg.oracle_modes);
    const std::vector<double> samples = trajectory_sample_times(cfg.horizon, cfg.intra_samples);
    const ModalTrajectory traj =
        integrate_feedback(s0, cfg.horizon, cfg.oracle_dt, cfg.oracle_eps, samples);

    TrajectoryRecord rec;
    rec.problem = cfg.problem;
    rec.times = samples;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const ModalState& s = traj.samples[i];
        StatePair coeffs;
        coeffs.f0 = EvenFourier(s.q);
        coeffs.f1 = EvenFourier(s.p);
        const CircleGrid g = to_traveling_wave(coeffs, cfg.grid);
        rec.rho_stop.push_back(rho(g, Problem::stop_moving));
        rec.rho_damp.push_back(rho(g, Problem::damping));
        rec.u.push_back(traj.u_at(samples[i]));
        rec.phi0.push_back(traj.ft0_at(samples[i]));
    }
    write_trajectory_csv(cfg.out, rec);
    return 0;
}

int run_bound_check(const ExperimentConfig& cfg) {
    const StatePair f = initial_state(cfg);
    const CircleGrid G = to_traveling_wave(f, cfg.grid);
    const auto suite = adversarial_suite(G, cfg.horizon, cfg.n_controls, cfg.seed);
    const BoundCheckReport rep = bound_check(G, suite, cfg.horizon, cfg.problem);
    write_bound_check_csv(cfg.out, rep);

    const TrajectoryRecord df = trajectory_rho(G, cfg.horizon, cfg.problem, cfg.intra_samples);
    const DecaySummary s = decay_summary(df);
    std::cout << "controls = " << rep.rows.size() << "\nmax_rate = " << fmt(rep.max_rate)
              << "\ndry_friction_rate = " << fmt(s.rate)
              << "\nviolations = " << rep.violations << "\n";
    return 0;
}

}  // namespace

int run(const ExperimentConfig& cfg) {
    try {
        validate(cfg);
        switch (cfg.mode) {
            case Mode::simulate:
                return run_simulate(cfg, false);
            case Mode::decay:
                return run_simulate(cfg, true);
            case Mode::support:
                return run_support(cfg);
            case Mode::oracle:
                return run_oracle(cfg);
            case Mode::bound_check:
                return run_bound_check(cfg);
        }
        return 0;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace stringdamp
