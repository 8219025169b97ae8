#include "memcap/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace memcap {

void PulseSpec::validate() const {
    std::string msgs;
    if (!(tau_on >= 0.0)) msgs += "pulse tau_on must be >= 0";
    if (!(tau_off >= tau_on)) {
        if (!msgs.empty()) msgs += '\n';
        msgs += "pulse tau_off must be >= tau_on";
    }
    if (!(beta >= 0.0)) {
        if (!msgs.empty()) msgs += '\n';
        msgs += "pulse beta must be >= 0";
    }
    if (!msgs.empty()) throw ValidationError(msgs);
}

void SimConfig::validate() const {
    std::string msgs;
    auto require = [&](bool ok, const char* what) {
        if (!ok) {
            if (!msgs.empty()) msgs += '\n';
            msgs += what;
        }
    };
    require(dtau > 0.0, "dtau must be > 0");
    require(tau_end > 0.0, "tau_end must be > 0");
    require(relax_extend >= 0.0, "relax_extend must be >= 0");
    require(max_extensions >= 0, "max_extensions must be >= 0");
    require(record_every >= 0, "record_every must be >= 0");
    require(tol_v >= 0.0, "tol_v must be >= 0");
    require(tol_y >= 0.0, "tol_y must be >= 0");
    if (!msgs.empty()) throw ValidationError(msgs);
}

namespace {

constexpr int kMaxDevices = 3;

using StateArray = std::array<MembraneState, kMaxDevices>;
using DerivArray = std::array<Deriv3, kMaxDevices>;

/// Non-allocating evaluation core shared by every step of a run.
struct Engine {
    Topology topo;
    int n;
    std::array<DeviceParams, kMaxDevices> params{};
    std::array<double, kMaxDevices> scale{1.0, 1.0, 1.0};

    void voltages(const StateArray& s, double b1, double b2,
                  std::array<double, kMaxDevices>& beta) const {
        for (int i = 0; i < n; ++i)
            if (collapsed(s[static_cast<size_t>(i)].y))
                throw CollapseError(i, s[static_cast<size_t>(i)].y);
        switch (topo) {
            case Topology::Single:
                beta[0] = b1;
                break;
            case Topology::Reduced: {
                const auto v = divider_reduced(s[0].y, s[1].y, b1, b2, scale[0], scale[1]);
                beta[0] = v[0];
                beta[1] = v[1];
                break;
            }
            default: {
                const auto v = divider_triple(s[0].y, s[1].y, s[2].y, b1, b2,
                                              scale[0], scale[1], scale[2]);
                beta[0] = v[0];
                beta[1] = v[1];
                beta[2] = v[2];
                break;
            }
        }
    }

    void eval(const StateArray& s, double b1, double b2, DerivArray& d) const {
        std::array<double, kMaxDevices> beta;
        voltages(s, b1, b2, beta);
        for (int i = 0; i < n; ++i) {
            const auto k = static_cast<size_t>(i);
            if (params[k].rho > 0.0) {
                d[k] = rhs_resistive(s[k], beta[k], params[k]);
            } else {
                const Deriv2 t = rhs(s[k], beta[k], params[k]);
                d[k] = {t.dy, t.dv, 0.0};
            }
        }
    }

    void rk4_step(StateArray& s, double h, double b1, double b2) const {
        DerivArray k1, k2, k3, k4;
        StateArray t;
        const double h2 = 0.5 * h;
        const double h6 = h / 6.0;

        eval(s, b1, b2, k1);
        for (int i = 0; i < n; ++i) {
            const auto j = static_cast<size_t>(i);
            t[j] = {s[j].y + h2 * k1[j].dy, s[j].v + h2 * k1[j].dv,
                    s[j].u + h2 * k1[j].du};
        }
        eval(t, b1, b2, k2);
        for (int i = 0; i < n; ++i) {
            const auto j = static_cast<size_t>(i);
            t[j] = {s[j].y + h2 * k2[j].dy, s[j].v + h2 * k2[j].dv,
                    s[j].u + h2 * k2[j].du};
        }
        eval(t, b1, b2, k3);
        for (int i = 0; i < n; ++i) {
            const auto j = static_cast<size_t>(i);
            t[j] = {s[j].y + h * k3[j].dy, s[j].v + h * k3[j].dv,
                    s[j].u + h * k3[j].du};
        }
        eval(t, b1, b2, k4);
        for (int i = 0; i < n; ++i) {
            const auto j = static_cast<size_t>(i);
            s[j].y += h6 * (k1[j].dy + 2.0 * (k2[j].dy + k3[j].dy) + k4[j].dy);
            s[j].v += h6 * (k1[j].dv + 2.0 * (k2[j].dv + k3[j].dv) + k4[j].dv);
            s[j].u += h6 * (k1[j].du + 2.0 * (k2[j].du + k3[j].du) + k4[j].du);
        }
    }
};

struct Recorder {
    Trajectory* out;
    const Engine* engine;
    const std::array<PulseSpec, 2>* pulses;

    void record(const StateArray& s, double tau) {
        if (!out->times.empty() && out->times.back() == tau) return;
        out->times.push_back(tau);
        std::array<double, kMaxDevices> beta;
        engine->voltages(s, pulse_value((*pulses)[0], tau),
                         pulse_value((*pulses)[1], tau), beta);
        for (int i = 0; i < engine->n; ++i) {
            const auto j = static_cast<size_t>(i);
            out->y[j].push_back(s[j].y);
            out->v[j].push_back(s[j].v);
            out->beta_c[j].push_back(beta[j]);
        }
    }
};

void check_finite(const StateArray& s, int n, double tau) {
    for (int i = 0; i < n; ++i) {
        const auto j = static_cast<size_t>(i);
        if (!std::isfinite(s[j].y) || !std::isfinite(s[j].v) || !std::isfinite(s[j].u)) {
            std::ostringstream os;
            os << "non-finite state at tau = " << tau << ", device " << i << ": y = "
               << s[j].y << ", v = " << s[j].v << ", u = " << s[j].u;
            throw SimulationError(os.str());
        }
    }
}

/// Advance one constant-drive segment [a, b]; the trailing partial step is
/// shrunk so the last boundary lands exactly on b.
void run_segment(const Engine& engine, StateArray& s, double a, double b,
                 double d1, double d2, const SimConfig& cfg, long& step_count,
                 Recorder& rec) {
    const double len = b - a;
    if (len <= 0.0) return;
    const auto n_full = static_cast<long>(std::floor(len / cfg.dtau + 1e-9));
    const double tail = len - static_cast<double>(n_full) * cfg.dtau;
    double tau = a;
    auto post_step = [&](double now) {
        check_finite(s, engine.n, now);
        for (int i = 0; i < engine.n; ++i)
            if (collapsed(s[static_cast<size_t>(i)].y))
                throw CollapseError(i, s[static_cast<size_t>(i)].y, now);
    };
    try {
        for (long i = 0; i < n_full; ++i) {
            engine.rk4_step(s, cfg.dtau, d1, d2);
            tau = a + static_cast<double>(i + 1) * cfg.dtau;
            ++step_count;
            post_step(tau);
            if (cfg.record_every > 0 && step_count % cfg.record_every == 0)
                rec.record(s, i + 1 == n_full && tail <= cfg.dtau * 1e-9 ? b : tau);
        }
        if (tail > cfg.dtau * 1e-9) {
            engine.rk4_step(s, tail, d1, d2);
            ++step_count;
            post_step(b);
        }
    } catch (const CollapseError& e) {
        // annotate stage-level collapses with the time of the failing step
        throw CollapseError(e.device(), e.y(), e.tau() >= 0.0 ? e.tau() : tau);
    }
    if (cfg.record_every > 0) rec.record(s, b);
}

std::vector<LogicBit> classify(const StateArray& s, const Engine& engine,
                               const SimConfig& cfg) {
    std::vector<LogicBit> bits(static_cast<size_t>(engine.n));
    for (int i = 0; i < engine.n; ++i) {
        const auto j = static_cast<size_t>(i);
        bits[j] = binarize(s[j], engine.params[j], cfg.resolved_tol_y(engine.params[j]),
                           cfg.tol_v);
    }
    return bits;
}

}  // namespace

Trajectory integrate(const CircuitState& cs0, const std::array<PulseSpec, 2>& pulses,
                     Topology topo, const SimConfig& cfg) {
    cfg.validate();
    for (const PulseSpec& p : pulses) {
        p.validate();
        if (p.tau_off > cfg.tau_end)
            throw ValidationError("pulse edges must lie within [0, tau_end]");
    }
    const int n = device_count(topo);
    if (cs0.devices.size() != static_cast<size_t>(n) ||
        cs0.params.size() != static_cast<size_t>(n))
        throw ValidationError("circuit state does not match topology device count");
    for (const DeviceParams& p : cs0.params) p.validate();

    Engine engine;
    engine.topo = topo;
    engine.n = n;
    for (int i = 0; i < n; ++i) {
        const auto j = static_cast<size_t>(i);
        engine.params[j] = cs0.params[j];
        if (!cs0.c0_scale.empty()) {
            if (cs0.c0_scale.size() != static_cast<size_t>(n))
                throw ValidationError("c0_scale size does not match topology device count");
            engine.scale[j] = cs0.c0_scale[j];
        }
    }

    StateArray s{};
    for (int i = 0; i < n; ++i) s[static_cast<size_t>(i)] = cs0.devices[static_cast<size_t>(i)];

    Trajectory out;
    out.y.resize(static_cast<size_t>(n));
    out.v.resize(static_cast<size_t>(n));
    out.beta_c.resize(static_cast<size_t>(n));

    Recorder rec{&out, &engine, &pulses};
    rec.record(s, 0.0);

    // Segment boundaries: pulse edges split the grid so each segment sees a
    // constant drive.
    std::vector<double> edges{0.0, cfg.tau_end};
    for (const PulseSpec& p : pulses) {
        if (p.tau_on > 0.0 && p.tau_on < cfg.tau_end) edges.push_back(p.tau_on);
        if (p.tau_off > 0.0 && p.tau_off < cfg.tau_end && p.tau_off > p.tau_on)
            edges.push_back(p.tau_off);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    long step_count = 0;
    for (size_t k = 0; k + 1 < edges.size(); ++k) {
        const double a = edges[k];
        const double b = edges[k + 1];
        const double d1 = pulse_value(pulses[0], a);
        const double d2 = pulse_value(pulses[1], a);
        run_segment(engine, s, a, b, d1, d2, cfg, step_count, rec);
    }
    double tau = cfg.tau_end;

    std::vector<LogicBit> bits = classify(s, engine, cfg);
    int extensions = 0;
    auto unsettled = [&] {
        return std::any_of(bits.begin(), bits.end(),
                           [](LogicBit b) { return b == LogicBit::Unsettled; });
    };
    while (unsettled() && extensions < cfg.max_extensions && cfg.relax_extend > 0.0) {
        const double next = tau + cfg.relax_extend;
        run_segment(engine, s, tau, next, 0.0, 0.0, cfg, step_count, rec);
        tau = next;
        ++extensions;
        bits = classify(s, engine, cfg);
    }

    rec.record(s, tau);  // final sample, also the only one past t=0 when record_every == 0
    out.final_state.devices.assign(s.begin(), s.begin() + n);
    out.final_state.params = cs0.params;
    out.final_state.c0_scale = cs0.c0_scale;
    out.settled = std::move(bits);
    out.tau_final = tau;
    out.extensions_used = extensions;
    return out;
}

std::vector<LogicBit> single_shot(const std::vector<LogicBit>& bits_in,
                                  const std::array<PulseSpec, 2>& pulses,
                                  Topology topo, const SimConfig& cfg,
                                  const DeviceParams& params) {
    if (bits_in.size() != static_cast<size_t>(input_count(topo)))
        throw ValidationError("single_shot: input bit count does not match topology");
    CircuitState cs(topo, params);
    for (size_t i = 0; i < bits_in.size(); ++i)
        cs.devices[i] = init_state(bits_in[i], params);
    if (topo == Topology::Triple)
        cs.devices[2] = init_state(LogicBit::Zero, params);
    return integrate(cs, pulses, topo, cfg).settled;
}

}  // namespace memcap
