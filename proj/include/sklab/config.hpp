#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sklab/spin_distribution.hpp"

namespace sklab {

inline constexpr std::uint64_t kDefaultSeed = 12345;  // used (and recorded) when --seed is absent

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// thrown by parse_cli for --help/--version; carries the text to print, exit 0
class HelpRequested : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DistSpec {
    std::string kind = "rademacher";  // rademacher | uniform | discrete
    int nodes = 32;                   // uniform discretization order
    std::vector<Atom> atoms;          // for discrete laws
    SpinDistribution build() const;   // throws ConfigError on invalid spec
};

struct ExperimentConfig {
    std::string command;  // rs-solve | linear | simulate | interpolate | verify-ibp | concentration
    DistSpec dist;
    double t = 0.0;
    double h = 0.0;
    double x = 0.0;
    double lambda = 0.0;
    std::optional<double> q;  // unset: commands fall back to the solver fixed point
    std::vector<int> n_list{8};
    int samples = 100;
    int steps = 20;
    std::uint64_t seed = kDefaultSeed;
    int hermite_order = 61;
    double lipschitz_xmax = 4.0;
    int workers = 0;  // 0 = auto (SKLAB_WORKERS env or hardware concurrency)
    std::string out;  // empty: stdout
    std::string csv;  // empty: no CSV companion

    void validate() const;  // throws ConfigError
};

// Flag/config-file parsing. `--config file.json` is applied first, explicit
// flags win on conflict. Accepts either a bare config object or a result
// document containing a "config" key.
ExperimentConfig parse_cli(const std::vector<std::string>& args);

std::string config_to_json_string(const ExperimentConfig& cfg);
ExperimentConfig config_from_json_string(const std::string& text);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitNumerical = 4;

// Executes the experiment, writes the JSON result document (and optional CSV),
// returns the process exit code.
int run(const ExperimentConfig& cfg);

int cli_main(int argc, char** argv);

}
