// The six CLI commands, separated from argument parsing so tests can drive
// them directly.  Each returns the process exit code (0 on success) and
// throws CliError for validation (2) or runtime (3) failures.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace mpqkd::cli {

struct GlobalOptions {
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_path;
    std::optional<unsigned> workers;
};

struct TwirlCheckOptions {
    std::optional<double> p;  // shortcut for a y_flip(p) channel
    double tol = 1e-9;
};

struct DiscriminateOptions {
    double p_min = 0.0;
    double p_max = 0.5;
    unsigned steps = 11;
    std::string ensemble = "s2";  // s2 | s0plus
};

struct QberSweepOptions {
    std::optional<double> p;  // shortcut for a y_flip(p) channel
    std::vector<double> loss_db;
    std::string protection = "both";  // both | on | off
    std::optional<std::uint64_t> pulses;
};

struct SimulateOptions {
    std::optional<bool> protection;
    std::optional<std::uint64_t> pulses;
    std::optional<double> loss_db;
    std::optional<double> p;  // shortcut for a y_flip(p) channel
};

struct DistillOptions {
    SimulateOptions sim;
    unsigned k = 3;
    std::optional<unsigned> k_max;  // sweep k = 1..k_max when given
};

int cmd_twirl_check(const GlobalOptions& g, const TwirlCheckOptions& opt);
int cmd_discriminate(const GlobalOptions& g, const DiscriminateOptions& opt);
int cmd_qber_sweep(const GlobalOptions& g, const QberSweepOptions& opt);
int cmd_thresholds(const GlobalOptions& g);
int cmd_simulate(const GlobalOptions& g, const SimulateOptions& opt);
int cmd_distill(const GlobalOptions& g, const DistillOptions& opt);

}  // namespace mpqkd::cli
