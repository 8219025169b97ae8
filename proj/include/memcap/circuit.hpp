#pragma once

#include <array>
#include <vector>

#include "memcap/device.hpp"

namespace memcap {

/// Circuit layout. Single: one device driven directly by source 1.
/// Reduced: two devices in series between the two sources, middle node
/// floating. Triple: device 1 fed from source 1 and device 2 from
/// source 2, meeting at a common node; device 3 from that node to ground.
enum class Topology { Single, Reduced, Triple };

constexpr int device_count(Topology t) {
    switch (t) {
        case Topology::Single: return 1;
        case Topology::Reduced: return 2;
        default: return 3;
    }
}

/// Number of devices that hold input bits (the Triple's third device is
/// reserved for the output).
constexpr int input_count(Topology t) {
    return t == Topology::Single ? 1 : 2;
}

Topology topology_from_string(const std::string& name);
const char* to_string(Topology t);

/// States plus per-device constants for one coupled circuit. All devices
/// share C0 by default; `c0_scale` admits per-device capacitance ratios.
struct CircuitState {
    std::vector<MembraneState> devices;
    std::vector<DeviceParams> params;
    std::vector<double> c0_scale;

    CircuitState() = default;
    CircuitState(Topology t, const DeviceParams& p)
        : devices(device_count(t)),
          params(device_count(t), p),
          c0_scale(device_count(t), 1.0) {}
};

/// Voltages across the three devices of the Triple circuit, in beta units,
/// from charge conservation at the common node. ci are capacitances in C0
/// units so the common factor cancels:
///   beta_c1 = (c2*b2 - (c2+c3)*b1) / (c1+c2+c3)
///   beta_c2 = (c1*b1 - (c1+c3)*b2) / (c1+c2+c3)
///   beta_c3 = (c1*b1 + c2*b2) / (c1+c2+c3)
/// The loop identities beta_c3 - beta_c1 = b1 and beta_c3 - beta_c2 = b2
/// hold, and the node charge c1*beta_c1 + c2*beta_c2 + c3*beta_c3 is zero.
inline std::array<double, 3> divider_triple(double y1, double y2, double y3,
                                            double b1, double b2,
                                            double s1 = 1.0, double s2 = 1.0,
                                            double s3 = 1.0) {
    if (collapsed(y1)) throw CollapseError(0, y1);
    if (collapsed(y2)) throw CollapseError(1, y2);
    if (collapsed(y3)) throw CollapseError(2, y3);
    const double c1 = s1 / (1.0 + y1);
    const double c2 = s2 / (1.0 + y2);
    const double c3 = s3 / (1.0 + y3);
    const double inv = 1.0 / (c1 + c2 + c3);
    return {(c2 * b2 - (c2 + c3) * b1) * inv,
            (c1 * b1 - (c1 + c3) * b2) * inv,
            (c1 * b1 + c2 * b2) * inv};
}

/// Two devices in series between the sources (the Triple with device 3
/// removed); equivalently the c3 -> 0 limit of divider_triple. Equal
/// sources apply no stress.
inline std::array<double, 2> divider_reduced(double y1, double y2, double b1,
                                             double b2, double s1 = 1.0,
                                             double s2 = 1.0) {
    if (collapsed(y1)) throw CollapseError(0, y1);
    if (collapsed(y2)) throw CollapseError(1, y2);
    const double c1 = s1 / (1.0 + y1);
    const double c2 = s2 / (1.0 + y2);
    const double inv = 1.0 / (c1 + c2);
    return {c2 * (b2 - b1) * inv, c1 * (b1 - b2) * inv};
}

/// Instantaneous device voltages for any topology (Single: beta_c = b1).
std::vector<double> device_voltages(const CircuitState& cs, double b1, double b2,
                                    Topology topo);

/// Full circuit right-hand side: divider voltages from the instantaneous
/// membrane positions, then the per-device dynamics. Devices with rho > 0
/// thread their charge state through rhs_resistive with the divider value
/// as the source; others respond instantaneously. Collapse errors carry
/// the offending device index.
std::vector<Deriv3> coupled_rhs(const CircuitState& cs, double b1, double b2,
                                Topology topo);

}  // namespace memcap
