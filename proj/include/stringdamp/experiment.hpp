#pragma once

// Experiment orchestration: config parsing/validation, seeded initial data,
// CSV emission and the mode dispatch behind the CLI.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stringdamp/even_field.hpp"
#include "stringdamp/friction_solver.hpp"
#include "stringdamp/general_control_sim.hpp"

namespace stringdamp {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Mode { simulate, decay, support, oracle, bound_check };

struct ExperimentConfig {
    Mode mode = Mode::simulate;
    std::size_t grid = 1024;
    double horizon = 10.0 * kTwoPi;
    Problem problem = Problem::stop_moving;

    // Initial data: explicit coefficients win over the seeded generator.
    std::vector<double> f0_coeffs;
    std::vector<double> f1_coeffs;
    std::uint64_t seed = 1;
    double amplitude = 0.0;
    double decay_rate = 1.0;
    std::size_t bandlimit = 16;

    // Momentum coefficients for support mode, as (index, value) terms.
    std::vector<std::pair<std::size_t, double>> psi_terms;
    std::vector<std::pair<std::size_t, double>> phi_terms;

    // Oracle parameters.
    std::size_t oracle_modes = 64;
    double oracle_dt = 1e-4;
    double oracle_eps = 1e-3;

    // Bound-check sweep size.
    std::size_t n_controls = 100;

    std::size_t intra_samples = 8;
    std::string out = "out.csv";
    std::string control_path;  // optional open-loop control (JSON)
};

Mode parse_mode(const std::string& name);
Problem parse_problem(const std::string& name);

// Flat key = value file; '#' starts a comment.  Unknown keys are rejected.
ExperimentConfig parse_config_file(const std::string& path);
void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value);
void validate(const ExperimentConfig& cfg);

// Deterministic across platforms: mt19937_64(seed), one 64-bit draw per
// coefficient mapped to [-1, 1) via the top 53 bits; f0 coefficients
// n = 1..bandlimit are drawn first, then f1.  c_n = amplitude * n^-decay *
// draw; c_0 = 0 for both components.
std::pair<EvenFourier, EvenFourier> gen_initial(std::uint64_t seed, double amplitude,
                                                double decay_rate, std::size_t bandlimit);

// Initial data selected by the config (explicit coefficients or seeded).
StatePair initial_state(const ExperimentConfig& cfg);

// CSV: header t,rho_stop,rho_damp,u,phi0; one row per sample, full-precision
// decimal, written via temp file + rename.
void write_trajectory_csv(const std::string& path, const TrajectoryRecord& rec);
TrajectoryRecord read_trajectory_csv(const std::string& path);

struct DecaySummary {
    double rho0 = 0.0;
    double rhoT = 0.0;
    double T = 0.0;
    double rate = 0.0;
    bool degenerate = false;
};
DecaySummary decay_summary(const TrajectoryRecord& rec);
// Header rho0,rhoT,T,rate,degenerate; written next to the trajectory file.
void write_decay_summary_csv(const std::string& path, const DecaySummary& s);

// {"duration": ..., "breakpoints": [...], "values": [...]}
PiecewiseControl load_control_json(const std::string& path);
void write_control_json(const std::string& path, const PiecewiseControl& u);

void write_bound_check_csv(const std::string& path, const BoundCheckReport& rep);

// Returns the process exit status: 0 ok, 2 config error, 3 numeric failure.
int run(const ExperimentConfig& cfg);

}  // namespace stringdamp
