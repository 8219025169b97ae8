#include "memcap/device.hpp"

#include <cmath>
#include <sstream>

namespace memcap {

std::string CollapseError::format(int device, double y, double tau) {
    std::ostringstream os;
    os << "membrane collapse: device " << device << " reached y = " << y;
    if (tau >= 0.0) os << " at tau = " << tau;
    return os.str();
}

namespace {

void require(bool ok, const char* what, std::string& msgs) {
    if (!ok) {
        if (!msgs.empty()) msgs += '\n';
        msgs += what;
    }
}

}  // namespace

void PhysicalParams::validate() const {
    std::string msgs;
    require(omega0 > 0.0, "omega0 must be > 0", msgs);
    require(gamma > 0.0, "gamma must be > 0", msgs);
    require(mass > 0.0, "mass must be > 0", msgs);
    require(d > 0.0, "d must be > 0", msgs);
    require(z0 > 0.0, "z0 must be > 0", msgs);
    require(c0 > 0.0, "c0 must be > 0", msgs);
    require(r >= 0.0, "r must be >= 0", msgs);
    require(!(d > 0.0 && z0 > 0.0) || z0 < d, "z0 must be < d", msgs);
    if (!msgs.empty()) throw ValidationError(msgs);
}

void DeviceParams::validate() const {
    std::string msgs;
    require(gamma > 0.0, "gamma must be > 0", msgs);
    require(y0 > 0.0 && y0 < 1.0, "y0 must be in (0, 1)", msgs);
    require(rho >= 0.0, "rho must be >= 0", msgs);
    if (!msgs.empty()) throw ValidationError(msgs);
}

Dimensionless to_dimensionless(const PhysicalParams& p) {
    p.validate();
    Dimensionless out;
    out.params.gamma = 2.0 * kPi * p.gamma / p.omega0;
    out.params.y0 = p.z0 / p.d;
    out.params.rho = p.omega0 * p.r * p.c0 / kPi;
    out.beta0 = 2.0 * kPi / (p.omega0 * p.d) * std::sqrt(p.c0 / (2.0 * p.mass));
    return out;
}

MembraneState init_state(LogicBit bit, const DeviceParams& p) {
    switch (bit) {
        case LogicBit::Zero:
            return {p.y0, 0.0, 0.0};
        case LogicBit::One:
            return {-p.y0, 0.0, 0.0};
        default:
            throw ValidationError("init_state: Unsettled is not a valid initialization");
    }
}

LogicBit binarize(const MembraneState& s, const DeviceParams& p, double tol_y,
                  double tol_v) {
    if (collapsed(s.y)) throw CollapseError(0, s.y);
    if (std::abs(s.v) > tol_v) return LogicBit::Unsettled;
    if (std::abs(std::abs(s.y) - p.y0) > tol_y) return LogicBit::Unsettled;
    if (s.y < 0.0) return LogicBit::One;
    if (s.y > 0.0) return LogicBit::Zero;
    return LogicBit::Unsettled;
}

LogicBit binarize(const MembraneState& s, const DeviceParams& p) {
    return binarize(s, p, 0.25 * p.y0, kDefaultTolV);
}

const char* to_string(LogicBit bit) {
    switch (bit) {
        case LogicBit::Zero: return "0";
        case LogicBit::One: return "1";
        default: return "unsettled";
    }
}

}  // namespace memcap
