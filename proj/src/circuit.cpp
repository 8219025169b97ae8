#include "memcap/circuit.hpp"

namespace memcap {

Topology topology_from_string(const std::string& name) {
    if (name == "single") return Topology::Single;
    if (name == "reduced") return Topology::Reduced;
    if (name == "triple") return Topology::Triple;
    throw ValidationError("unknown topology '" + name +
                          "' (expected single, reduced or triple)");
}

const char* to_string(Topology t) {
    switch (t) {
        case Topology::Single: return "single";
        case Topology::Reduced: return "reduced";
        default: return "triple";
    }
}

namespace {

void check_shape(const CircuitState& cs, Topology topo) {
    const auto n = static_cast<size_t>(device_count(topo));
    if (cs.devices.size() != n || cs.params.size() != n)
        throw ValidationError("circuit state does not match topology device count");
    if (!cs.c0_scale.empty() && cs.c0_scale.size() != n)
        throw ValidationError("c0_scale size does not match topology device count");
}

}  // namespace

std::vector<double> device_voltages(const CircuitState& cs, double b1, double b2,
                                    Topology topo) {
    check_shape(cs, topo);
    const auto scale = [&](int i) {
        return cs.c0_scale.empty() ? 1.0 : cs.c0_scale[static_cast<size_t>(i)];
    };
    for (size_t i = 0; i < cs.devices.size(); ++i)
        if (collapsed(cs.devices[i].y))
            throw CollapseError(static_cast<int>(i), cs.devices[i].y);

    switch (topo) {
        case Topology::Single:
            return {b1};
        case Topology::Reduced: {
            const auto v = divider_reduced(cs.devices[0].y, cs.devices[1].y, b1, b2,
                                           scale(0), scale(1));
            return {v[0], v[1]};
        }
        default: {
            const auto v = divider_triple(cs.devices[0].y, cs.devices[1].y,
                                          cs.devices[2].y, b1, b2, scale(0),
                                          scale(1), scale(2));
            return {v[0], v[1], v[2]};
        }
    }
}

std::vector<Deriv3> coupled_rhs(const CircuitState& cs, double b1, double b2,
                                Topology topo) {
    const std::vector<double> beta = device_voltages(cs, b1, b2, topo);
    std::vector<Deriv3> out(cs.devices.size());
    for (size_t i = 0; i < cs.devices.size(); ++i) {
        const MembraneState& s = cs.devices[i];
        const DeviceParams& p = cs.params[i];
        if (p.rho > 0.0) {
            out[i] = rhs_resistive(s, beta[i], p);
        } else {
            const Deriv2 d = rhs(s, beta[i], p);
            out[i] = {d.dy, d.dv, 0.0};
        }
    }
    return out;
}

}  // namespace memcap
