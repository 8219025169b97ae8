#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "memcap/simulate.hpp"

namespace memcap {

/// Sentinel operation code for cells where any of the four runs ended
/// unsettled or collapsed. Kept outside 0..15 so those stay faithful to
/// the name table.
inline constexpr int kUnsettledMark = 16;

/// The four input combinations (C1, C2) in code order.
inline constexpr std::array<std::array<int, 2>, 4> kInputCombos{
    {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};

/// Weighted sum of one device's final bits over the input combinations
/// (0,0), (0,1), (1,0), (1,1) with weights 1, 2, 4, 8. Any unsettled
/// final yields kUnsettledMark.
int compute_code(const std::array<LogicBit, 4>& finals);

/// Operation name for a code: 0 "set to 0" ... 15 "set to 1",
/// kUnsettledMark "unsettled". Throws ValidationError outside the range.
std::string code_name(int code);

/// Final bits and codes of every device over the four input combinations.
struct TruthTableResult {
    /// finals[device][combo], combos in kInputCombos order.
    std::vector<std::array<LogicBit, 4>> finals;
    std::vector<int> codes;
    std::vector<std::string> names;
    /// One entry per failed run (collapse or other integration error).
    std::vector<std::string> diagnostics;
};

/// Run the four input combinations at pulse amplitudes (b1, b2) with both
/// pulses on [0, T]. A failed run marks that combination unsettled for
/// every device and is noted in diagnostics. Single topology is rejected
/// (the table needs two input devices).
TruthTableResult truth_table(double b1, double b2, double width, Topology topo,
                             const DeviceParams& params, const SimConfig& cfg);

/// Grid of operation codes over pulse-amplitude space.
struct OperationMap {
    std::vector<double> beta1_axis;
    std::vector<double> beta2_axis;
    /// codes[device][i1 * n2 + i2] with i1 indexing beta1_axis.
    std::vector<std::vector<int>> codes;
    /// Sensitivity flags for the output device, same layout.
    std::vector<std::uint8_t> sensitivity;

    Topology topology = Topology::Triple;
    DeviceParams params;
    double pulse_width = 20.0;
    SimConfig sim;
    int failed_cells = 0;

    int n1() const { return static_cast<int>(beta1_axis.size()); }
    int n2() const { return static_cast<int>(beta2_axis.size()); }
    int code_at(int device, int i1, int i2) const {
        return codes[static_cast<size_t>(device)]
                    [static_cast<size_t>(i1) * beta2_axis.size() + static_cast<size_t>(i2)];
    }
    /// The device whose codes define the map's output: C3 for Triple,
    /// C1 for Reduced.
    int output_device() const {
        return topology == Topology::Triple ? 2 : 0;
    }
};

/// Evaluate truth_table on every grid point. Cells are independent and
/// distributed over `workers` threads (0 = hardware concurrency) with
/// results placed by cell index, so the map is identical for any worker
/// count. Per-cell failures become kUnsettledMark codes, never aborts.
OperationMap sweep_map(double b1_min, double b1_max, double b2_min, double b2_max,
                       int n1, int n2, double width, Topology topo,
                       const DeviceParams& params, const SimConfig& cfg,
                       int workers = 0);

/// Flag cells whose output-device code differs from any 4-neighbor
/// (8-neighbor when eight_neighborhood). Uniform maps flag nothing.
std::vector<std::uint8_t> sensitivity_flags(const OperationMap& map,
                                            bool eight_neighborhood = false);

/// One sample of the NOT-search curve: the difference of final positions
/// for the two initial states after a pulse of the given width.
struct NotCurvePoint {
    double width = 0.0;
    double y_diff = 0.0;  ///< y(from +y0) - y(from -y0) at tau_obs
    bool valid = false;
};

/// Sweep the pulse width at fixed amplitude on a single device: two runs
/// per sample, starting from +y0 and -y0, both observed at the fixed time
/// tau_obs (no settling extension). The NOT gate is realized where
/// y_diff = -2*y0 within tolerance (both bits flipped). Failed points are
/// recorded invalid.
std::vector<NotCurvePoint> not_search(double beta, double t_min, double t_max,
                                      int samples, double tau_obs,
                                      const DeviceParams& params,
                                      const SimConfig& cfg);

/// Evenly spaced grid axis, inclusive of both ends (n == 1 yields {lo}).
std::vector<double> linspace(double lo, double hi, int n);

/// Run fn(i) for i in [0, n) on `workers` threads (0 = hardware
/// concurrency). fn must handle its own exceptions.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace memcap
