// Command-line front end: simulate | decay | support | oracle | bound-check.
// Flags override values read from --config (flat key = value file).

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stringdamp/experiment.hpp"

namespace {

using stringdamp::ExperimentConfig;

struct FlagValues {
    std::optional<std::string> config;
    std::optional<std::size_t> grid;
    std::optional<double> horizon;
    std::optional<std::string> problem;
    std::optional<std::uint64_t> seed;
    std::optional<double> amplitude;
    std::optional<double> decay_rate;
    std::optional<std::size_t> bandlimit;
    std::optional<std::string> f0;
    std::optional<std::string> f1;
    std::optional<std::string> out;
    std::optional<std::string> control;
    std::optional<std::size_t> oracle_modes;
    std::optional<double> oracle_dt;
    std::optional<double> oracle_eps;
    std::optional<std::size_t> n_controls;
    std::optional<std::size_t> intra_samples;
    std::vector<std::string> psi;
    std::vector<std::string> phi;
};

void add_common_flags(CLI::App* cmd, FlagValues& f) {
    cmd->add_option("--config", f.config, "flat key = value config file");
    cmd->add_option("--grid", f.grid, "spatial grid size (even)");
    cmd->add_option("--horizon", f.horizon, "time horizon T");
    cmd->add_option("--problem", f.problem, "stop | damp");
    cmd->add_option("--seed", f.seed, "seed for the initial-data generator");
    cmd->add_option("--amplitude", f.amplitude, "seeded initial-data amplitude");
    cmd->add_option("--decay-rate", f.decay_rate, "spectral decay of seeded coefficients");
    cmd->add_option("--bandlimit", f.bandlimit, "highest seeded mode");
    cmd->add_option("--f0", f.f0, "explicit displacement coefficients c0,c1,...");
    cmd->add_option("--f1", f.f1, "explicit velocity coefficients c0,c1,...");
    cmd->add_option("--out", f.out, "output CSV path");
}

int apply_and_run(stringdamp::Mode mode, const FlagValues& f) {
    ExperimentConfig cfg;
    try {
        if (f.config) cfg = stringdamp::parse_config_file(*f.config);
        cfg.mode = mode;
        using stringdamp::apply_key;
        if (f.grid) cfg.grid = *f.grid;
        if (f.horizon) cfg.horizon = *f.horizon;
        if (f.problem) cfg.problem = stringdamp::parse_problem(*f.problem);
        if (f.seed) cfg.seed = *f.seed;
        if (f.amplitude) cfg.amplitude = *f.amplitude;
        if (f.decay_rate) cfg.decay_rate = *f.decay_rate;
        if (f.bandlimit) cfg.bandlimit = *f.bandlimit;
        if (f.f0) apply_key(cfg, "f0", *f.f0);
        if (f.f1) apply_key(cfg, "f1", *f.f1);
        if (f.out) cfg.out = *f.out;
        if (f.control) cfg.control_path = *f.control;
        if (f.oracle_modes) cfg.oracle_modes = *f.oracle_modes;
        if (f.oracle_dt) cfg.oracle_dt = *f.oracle_dt;
        if (f.oracle_eps) cfg.oracle_eps = *f.oracle_eps;
        if (f.n_controls) cfg.n_controls = *f.n_controls;
        if (f.intra_samples) cfg.intra_samples = *f.intra_samples;
        for (const auto& term : f.psi) apply_key(cfg, "psi", term);
        for (const auto& term : f.phi) apply_key(cfg, "phi", term);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    return stringdamp::run(cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact simulator for damping a closed string by a point dry-friction load"};
    app.require_subcommand(1);

    FlagValues f;
    auto* simulate = app.add_subcommand(
        "simulate", "closed-loop trajectory CSV (or open-loop with --control)");
    add_common_flags(simulate, f);
    simulate->add_option("--control", f.control, "open-loop control file (JSON)");
    simulate->add_option("--intra-samples", f.intra_samples, "samples inside each period");

    auto* decay = app.add_subcommand("decay", "trajectory plus rho decay-rate summary");
    add_common_flags(decay, f);
    decay->add_option("--intra-samples", f.intra_samples, "samples inside each period");

    auto* support = app.add_subcommand("support", "reachable-set support functions");
    add_common_flags(support, f);
    support->add_option("--psi", f.psi, "velocity momentum term n=value (repeatable)");
    support->add_option("--phi", f.phi, "displacement momentum term n=value (repeatable)");

    auto* oracle = app.add_subcommand("oracle", "modal-truncation oracle trajectory CSV");
    add_common_flags(oracle, f);
    oracle->add_option("--oracle-modes", f.oracle_modes, "number of modes N");
    oracle->add_option("--oracle-dt", f.oracle_dt, "integrator step");
    oracle->add_option("--oracle-eps", f.oracle_eps, "sign regularization width");
    oracle->add_option("--intra-samples", f.intra_samples, "samples inside each period");

    auto* bound = app.add_subcommand("bound-check", "adversarial decay-rate sweep");
    add_common_flags(bound, f);
    bound->add_option("--n-controls", f.n_controls, "number of adversarial controls");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (simulate->parsed()) return apply_and_run(stringdamp::Mode::simulate, f);
    if (decay->parsed()) return apply_and_run(stringdamp::Mode::decay, f);
    if (support->parsed()) return apply_and_run(stringdamp::Mode::support, f);
    if (oracle->parsed()) return apply_and_run(stringdamp::Mode::oracle, f);
    if (bound->parsed()) return apply_and_run(stringdamp::Mode::bound_check, f);
    return 2;
}
