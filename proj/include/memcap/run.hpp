#pragma once

#include <array>
#include <string>

#include "memcap/logic.hpp"

namespace memcap {

enum class Command { Simulate, TruthTable, Map, NotSearch };

Command command_from_string(const std::string& name);
const char* to_string(Command cmd);

struct GridSpec {
    double b1_min = 0.0;
    double b1_max = 5.0;
    double b2_min = 0.0;
    double b2_max = 5.0;
    int n1 = 101;
    int n2 = 101;
};

struct NotSearchSpec {
    double t_min = 0.0;
    double t_max = 20.0;
    int samples = 200;
    double tau_obs = 40.0;
};

/// Fully-resolved run configuration. Defaults reproduce the reference
/// operating point: Gamma = 0.7, y0 = 0.2, T = 20, beta = (1, 4), rho = 0.
struct RunConfig {
    Topology topology = Topology::Triple;
    DeviceParams device;
    double beta1 = 1.0;
    double beta2 = 4.0;
    double pulse_width = 20.0;
    double tau_on = 0.0;
    SimConfig sim;  ///< tau_end defaults to tau_on + pulse_width + 20
    GridSpec grid;
    NotSearchSpec not_search;
    std::array<int, 2> inputs{0, 0};
    int workers = 0;  ///< 0 = hardware concurrency
    std::string out;  ///< output path or prefix; empty = per-command default

    /// Throws ValidationError listing every violated invariant.
    void validate() const;

    std::array<PulseSpec, 2> pulses() const {
        return {PulseSpec{beta1, tau_on, tau_on + pulse_width},
                PulseSpec{topology == Topology::Single ? 0.0 : beta2, tau_on,
                          topology == Topology::Single ? tau_on : tau_on + pulse_width}};
    }
};

/// Defaults, overlaid with the JSON config file at `path` (when
/// non-empty), overlaid with `overrides` (serialized JSON object, e.g.
/// from command-line flags). Later sources win per field. Unknown keys
/// and malformed values are validation errors; the result is validated.
RunConfig parse_config(const std::string& path, const std::string& overrides = {});

/// Same, from in-memory JSON texts.
RunConfig parse_config_text(const std::string& file_json,
                            const std::string& overrides = {});

/// Canonical JSON for a config; parse_config_text(to_json(c)) == c.
std::string to_json(const RunConfig& cfg);

bool operator==(const RunConfig& a, const RunConfig& b);

/// Execute one workflow and write its artifacts. Returns the list of
/// files written. Every artifact embeds the resolved config.
std::vector<std::string> run_command(Command cmd, const RunConfig& cfg);

/// Full command-line entry point (argument parsing, dispatch, error
/// reporting). Exit codes: 0 success, 1 validation, 2 simulation
/// failure, 3 I/O.
int cli_main(int argc, const char* const* argv);

}  // namespace memcap
