#pragma once

#include <cmath>
#include <numbers>

#include "memcap/errors.hpp"

namespace memcap {

inline constexpr double kPi = std::numbers::pi;

/// Displacements at or below -1 + kCollapseMargin count as plate contact.
inline constexpr double kCollapseMargin = 1e-6;

/// Default velocity tolerance for deciding that a membrane has settled.
inline constexpr double kDefaultTolV = 1e-3;

/// Raw device constants in SI units. Only used at the boundary; every
/// simulation runs on the dimensionless DeviceParams derived from these.
struct PhysicalParams {
    double omega0 = 0.0;  ///< natural angular frequency [rad/s]
    double gamma = 0.0;   ///< damping constant [1/s]
    double mass = 0.0;    ///< membrane mass [kg]
    double d = 0.0;       ///< plate-to-midpoint separation [m]
    double z0 = 0.0;      ///< equilibrium displacement [m], z0 < d
    double c0 = 0.0;      ///< reference capacitance at the midpoint [F]
    double r = 0.0;       ///< series membrane resistance [ohm], may be zero

    /// Throws ValidationError listing every violated invariant.
    void validate() const;
};

/// Dimensionless membrane constants. Defaults are the reference operating
/// point used throughout the docs (Gamma = 0.7, y0 = 0.2, no resistance).
struct DeviceParams {
    double gamma = 0.7;  ///< dimensionless damping, 2*pi*gamma_phys/omega0
    double y0 = 0.2;     ///< equilibrium displacement as a fraction of the gap
    double rho = 0.0;    ///< dimensionless series resistance, omega0*R*C0/pi

    void validate() const;
};

/// DeviceParams plus the voltage-to-beta conversion factor [1/V].
struct Dimensionless {
    DeviceParams params;
    double beta0 = 0.0;
};

/// Dynamical state of one membrane. `u` is the dimensionless charge
/// (beta0*q/C0); it is meaningful only when rho > 0 and is defined so the
/// device voltage in beta units is u*(1+y).
struct MembraneState {
    double y = 0.0;  ///< displacement as a fraction of the gap, y > -1
    double v = 0.0;  ///< dy/dtau
    double u = 0.0;  ///< dimensionless charge (resistive mode)
};

/// One stored bit. Up-bent (y near +y0, lower capacitance) is Zero;
/// down-bent (y near -y0, higher capacitance) is One. Unsettled is a
/// first-class outcome, not an error, so sweeps can record it.
enum class LogicBit { Zero, One, Unsettled };

struct Deriv2 {
    double dy = 0.0;
    double dv = 0.0;
};

struct Deriv3 {
    double dy = 0.0;
    double dv = 0.0;
    double du = 0.0;
};

/// Reduce physical constants to the dimensionless group:
///   gamma = 2*pi*gamma_phys/omega0, y0 = z0/d, rho = omega0*R*C0/pi,
///   beta0 = 2*pi/(omega0*d) * sqrt(C0/(2m)).
/// Dimensionless time is tau = t*omega0/(2*pi).
Dimensionless to_dimensionless(const PhysicalParams& p);

inline bool collapsed(double y) { return y <= -1.0 + kCollapseMargin; }

/// Capacitance in units of C0: c(y) = 1/(1+y).
inline double capacitance(double y) {
    if (collapsed(y)) throw CollapseError(0, y);
    return 1.0 / (1.0 + y);
}

/// Double-well dynamics under a device voltage beta_c (in beta units):
///   dy/dtau = v
///   dv/dtau = -4*pi^2*y*((y/y0)^2 - 1) - gamma*v - (beta_c/(1+y))^2
/// The voltage term is a square, so the force always points toward the
/// bottom plate regardless of the sign of beta_c.
inline Deriv2 rhs(const MembraneState& s, double beta_c, const DeviceParams& p) {
    if (collapsed(s.y)) throw CollapseError(0, s.y);
    const double r = s.y / p.y0;
    const double field = beta_c / (1.0 + s.y);
    Deriv2 d;
    d.dy = s.v;
    d.dv = -4.0 * kPi * kPi * s.y * (r * r - 1.0) - p.gamma * s.v - field * field;
    return d;
}

/// Antiderivative of the restoring force: U(y) = pi^2*y^4/y0^2 - 2*pi^2*y^2.
/// The two well minima sit at y = +/-y0 with depth -pi^2*y0^2.
inline double potential_energy(double y, const DeviceParams& p) {
    const double y2 = y * y;
    return kPi * kPi * y2 * y2 / (p.y0 * p.y0) - 2.0 * kPi * kPi * y2;
}

/// Finite series resistance, augmented-charge formulation. The applied
/// source voltage beta_src splits between the resistor and the device;
/// the charge relaxes toward the zero-current value:
///   du/dtau = (2/rho)*(beta_src - u*(1+y))
/// and (dy, dv) follow rhs() with beta_c = u*(1+y). Exact reduction of
/// q = C(y)*(V - R*dq/dt); no small-rho truncation.
inline Deriv3 rhs_resistive(const MembraneState& s, double beta_src,
                            const DeviceParams& p) {
    if (p.rho <= 0.0)
        throw ValidationError("rhs_resistive: rho must be > 0 (use rhs instead)");
    const double beta_c = s.u * (1.0 + s.y);
    const Deriv2 d2 = rhs(s, beta_c, p);
    Deriv3 d;
    d.dy = d2.dy;
    d.dv = d2.dv;
    d.du = 2.0 * (beta_src - beta_c) / p.rho;
    return d;
}

/// Factor multiplying dy/dtau once the series resistance is folded into
/// the second-order equation: gamma + rho*beta_src*beta_c/(1+y)^4.
inline double effective_damping(double y, double beta_src, double beta_c,
                                const DeviceParams& p) {
    const double g = 1.0 + y;
    const double g2 = g * g;
    return p.gamma + p.rho * beta_src * beta_c / (g2 * g2);
}

/// Expanded second-order form of the resistive model with the (R*C0)^2
/// terms dropped. Cross-check oracle for rhs_resistive, not a production
/// path: the device voltage inside the rho-multiplied corrections is
/// approximated by beta_src (consistent at the retained order), and the
/// caller supplies d(beta_c)/dtau (zero on flat pulse segments).
inline Deriv2 rhs_resistive_expanded(const MembraneState& s, double beta_src,
                                     double dbetac_dtau, const DeviceParams& p) {
    if (collapsed(s.y)) throw CollapseError(0, s.y);
    const double g = 1.0 + s.y;
    const double r = s.y / p.y0;
    const double field = beta_src / g;
    Deriv2 d;
    d.dy = s.v;
    d.dv = -4.0 * kPi * kPi * s.y * (r * r - 1.0)
           - effective_damping(s.y, beta_src, beta_src, p) * s.v
           - field * field
           + p.rho * beta_src * dbetac_dtau / (g * g * g);
    return d;
}

/// Place a membrane at rest in the well encoding `bit`. Zero -> +y0,
/// One -> -y0; charge starts at zero in resistive mode.
MembraneState init_state(LogicBit bit, const DeviceParams& p);

/// Classify a state as a bit: One if y < 0, Zero if y > 0, provided the
/// membrane is settled in a well (|v| <= tol_v and ||y| - y0| <= tol_y);
/// Unsettled otherwise.
LogicBit binarize(const MembraneState& s, const DeviceParams& p, double tol_y,
                  double tol_v);

/// binarize() with the default tolerances tol_y = 0.25*y0, tol_v = 1e-3.
LogicBit binarize(const MembraneState& s, const DeviceParams& p);

const char* to_string(LogicBit bit);

}  // namespace memcap
