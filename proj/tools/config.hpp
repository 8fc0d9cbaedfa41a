// Config-file ingestion: `key = value` lines under [channel], [detection]
// and [run] headers.  Unknown sections/keys and duplicate keys are parse
// errors (with line numbers); range problems are validation errors naming
// the key.  Both map to exit code 2.
#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "mpqkd/channels.hpp"
#include "mpqkd/protocol.hpp"

namespace mpqkd::cli {

// Thrown for anything that should stop the CLI; exit_code follows the
// contract 2 = usage/validation, 3 = runtime.
class CliError : public std::runtime_error {
  public:
    CliError(int exit_code, const std::string& message)
        : std::runtime_error(message), exit_code_(exit_code) {}

    int exit_code() const { return exit_code_; }

  private:
    int exit_code_;
};

struct ConfigEntry {
    std::string value;
    int line = 0;
};

// Section name -> key -> (value, line).
struct RawConfig {
    std::map<std::string, std::map<std::string, ConfigEntry>> sections;
};

RawConfig parse_config_text(std::istream& in, const std::string& origin);
RawConfig parse_config_file(const std::string& path);

// Everything a command can take from the file, validated and defaulted.
struct Settings {
    std::optional<PauliChannel> channel;
    // The scalar the [channel] section was built from, when meaningful
    // (y_flip p, bb84/six-state Q, depolarizing eta); used for CSV 'p'
    // columns.
    std::optional<double> channel_parameter;

    double loss_db = 0.0;
    double receiver_loss_db = 8.0;
    double detector_efficiency = 0.5;
    double dark_count_prob = 5e-6;

    ProtocolKind protocol = ProtocolKind::bb84;
    std::uint64_t n_pulses = 1'000'000;
    std::uint64_t seed = 12345;
    unsigned workers = 1;
    std::optional<bool> protection;
};

Settings settings_from(const RawConfig& raw);

// Convenience: parse + validate when a path was given, defaults otherwise.
Settings load_settings(const std::optional<std::string>& config_path);

}  // namespace mpqkd::cli
