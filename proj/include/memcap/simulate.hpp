#pragma once

#include <array>
#include <vector>

#include "memcap/circuit.hpp"

namespace memcap {

/// Square voltage pulse in dimensionless units. Active on the half-open
/// window [tau_on, tau_off), so integration restarts exactly at edges.
/// tau_off == tau_on is the degenerate empty pulse.
struct PulseSpec {
    double beta = 0.0;
    double tau_on = 0.0;
    double tau_off = 0.0;

    void validate() const;
};

/// Amplitude if tau_on <= tau < tau_off, else zero.
inline double pulse_value(const PulseSpec& p, double tau) {
    return (tau >= p.tau_on && tau < p.tau_off) ? p.beta : 0.0;
}

struct SimConfig {
    double dtau = 1e-3;        ///< integration step
    double tau_end = 40.0;     ///< observation horizon
    double relax_extend = 20.0;///< extra zero-drive horizon per extension
    int max_extensions = 3;    ///< settling extensions before giving up
    int record_every = 10;     ///< sample decimation; 0 = initial/final only
    double tol_v = kDefaultTolV; ///< settled-velocity tolerance
    double tol_y = 0.0;        ///< settled-position tolerance; 0 = 0.25*y0

    void validate() const;
    double resolved_tol_y(const DeviceParams& p) const {
        return tol_y > 0.0 ? tol_y : 0.25 * p.y0;
    }
};

/// Sampled run of one circuit. Outer index of y/v/beta_c is the device.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> y;
    std::vector<std::vector<double>> v;
    std::vector<std::vector<double>> beta_c;
    CircuitState final_state;
    std::vector<LogicBit> settled;
    double tau_final = 0.0;
    int extensions_used = 0;
};

/// Fixed-step RK4 over [0, tau_end], step boundaries aligned exactly to
/// every pulse edge (the step straddling an edge is split). The drive is
/// constant within each segment per the half-open pulse convention. After
/// tau_end, if any device is unsettled, integration extends by
/// relax_extend (zero drive) up to max_extensions times, then binarizes.
///
/// Throws CollapseError (with device and tau) if a membrane reaches the
/// bottom plate, SimulationError on non-finite state, ValidationError on
/// bad inputs (including pulse edges outside [0, tau_end]).
Trajectory integrate(const CircuitState& cs0, const std::array<PulseSpec, 2>& pulses,
                     Topology topo, const SimConfig& cfg);

/// Initialize inputs from bits (the Triple's output device always starts
/// at Zero), run the pulses, return the binarized finals per device.
std::vector<LogicBit> single_shot(const std::vector<LogicBit>& bits_in,
                                  const std::array<PulseSpec, 2>& pulses,
                                  Topology topo, const SimConfig& cfg,
                                  const DeviceParams& params);

}  // namespace memcap
