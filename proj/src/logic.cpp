#include "memcap/logic.hpp"

#include <atomic>
#include <sstream>
#include <thread>

namespace memcap {

int compute_code(const std::array<LogicBit, 4>& finals) {
    static constexpr int weights[4] = {1, 2, 4, 8};
    int code = 0;
    for (int i = 0; i < 4; ++i) {
        const LogicBit b = finals[static_cast<size_t>(i)];
        if (b == LogicBit::Unsettled) return kUnsettledMark;
        if (b == LogicBit::One) code += weights[i];
    }
    return code;
}

std::string code_name(int code) {
    static const char* names[16] = {
        "set to 0",  "NOR",      "NOT(IMP2)", "NOT C1",
        "NOT(IMP1)", "NOT C2",   "XOR",       "NAND",
        "AND",       "NOT(XOR)", "copy C2",   "IMP1",
        "copy C1",   "IMP2",     "OR",        "set to 1"};
    if (code == kUnsettledMark) return "unsettled";
    if (code < 0 || code > 15)
        throw ValidationError("code_name: code " + std::to_string(code) +
                              " outside 0..15");
    return names[code];
}

TruthTableResult truth_table(double b1, double b2, double width, Topology topo,
                             const DeviceParams& params, const SimConfig& cfg) {
    if (topo == Topology::Single)
        throw ValidationError("truth_table needs two input devices (reduced or triple)");
    const int n = device_count(topo);

    // Only the binarized finals matter here; skip trajectory sampling.
    SimConfig run_cfg = cfg;
    run_cfg.record_every = 0;

    const std::array<PulseSpec, 2> pulses{PulseSpec{b1, 0.0, width},
                                          PulseSpec{b2, 0.0, width}};

    TruthTableResult out;
    out.finals.resize(static_cast<size_t>(n));
    for (size_t combo = 0; combo < kInputCombos.size(); ++combo) {
        const auto& in = kInputCombos[combo];
        std::vector<LogicBit> bits_in{in[0] ? LogicBit::One : LogicBit::Zero,
                                      in[1] ? LogicBit::One : LogicBit::Zero};
        try {
            const std::vector<LogicBit> finals =
                single_shot(bits_in, pulses, topo, run_cfg, params);
            for (int d = 0; d < n; ++d)
                out.finals[static_cast<size_t>(d)][combo] = finals[static_cast<size_t>(d)];
        } catch (const Error& e) {
            for (int d = 0; d < n; ++d)
                out.finals[static_cast<size_t>(d)][combo] = LogicBit::Unsettled;
            std::ostringstream os;
            os << "input (" << in[0] << "," << in[1] << ") at b1=" << b1
               << ", b2=" << b2 << ": " << e.what();
            out.diagnostics.push_back(os.str());
        }
    }
    for (int d = 0; d < n; ++d) {
        out.codes.push_back(compute_code(out.finals[static_cast<size_t>(d)]));
        out.names.push_back(code_name(out.codes.back()));
    }
    return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw ValidationError("grid size must be >= 1");
    std::vector<double> out(static_cast<size_t>(n));
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (int i = 0; i < n; ++i)
        out[static_cast<size_t>(i)] = lo + static_cast<double>(i) * step;
    out[static_cast<size_t>(n - 1)] = hi;
    return out;
}

void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& fn) {
    unsigned count = workers > 0 ? static_cast<unsigned>(workers)
                                 : std::thread::hardware_concurrency();
    if (count == 0) count = 1;
    if (count == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const unsigned spawn = static_cast<unsigned>(
        std::min<std::size_t>(count, n));
    pool.reserve(spawn);
    for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
}

OperationMap sweep_map(double b1_min, double b1_max, double b2_min, double b2_max,
                       int n1, int n2, double width, Topology topo,
                       const DeviceParams& params, const SimConfig& cfg,
                       int workers) {
    if (topo == Topology::Single)
        throw ValidationError("sweep_map needs two input devices (reduced or triple)");
    if (n1 < 1 || n2 < 1) throw ValidationError("grid sizes must be >= 1");
    if (b1_min < 0.0 || b2_min < 0.0 || b1_max < b1_min || b2_max < b2_min)
        throw ValidationError("grid ranges must satisfy 0 <= min <= max");
    params.validate();
    cfg.validate();

    OperationMap map;
    map.beta1_axis = linspace(b1_min, b1_max, n1);
    map.beta2_axis = linspace(b2_min, b2_max, n2);
    map.topology = topo;
    map.params = params;
    map.pulse_width = width;
    map.sim = cfg;

    const int ndev = device_count(topo);
    const std::size_t cells = static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);
    map.codes.assign(static_cast<size_t>(ndev), std::vector<int>(cells, kUnsettledMark));
    std::vector<std::uint8_t> failed(cells, 0);

    parallel_for(cells, workers, [&](std::size_t cell) {
        const int i1 = static_cast<int>(cell / static_cast<std::size_t>(n2));
        const int i2 = static_cast<int>(cell % static_cast<std::size_t>(n2));
        try {
            const TruthTableResult tt =
                truth_table(map.beta1_axis[static_cast<size_t>(i1)],
                            map.beta2_axis[static_cast<size_t>(i2)], width, topo,
                            params, cfg);
            for (int d = 0; d < ndev; ++d)
                map.codes[static_cast<size_t>(d)][cell] = tt.codes[static_cast<size_t>(d)];
            if (!tt.diagnostics.empty()) failed[cell] = 1;
        } catch (const std::exception&) {
            failed[cell] = 1;  // codes stay kUnsettledMark
        }
    });

    for (std::uint8_t f : failed) map.failed_cells += f;
    map.sensitivity = sensitivity_flags(map);
    return map;
}

std::vector<std::uint8_t> sensitivity_flags(const OperationMap& map,
                                            bool eight_neighborhood) {
    const int n1 = map.n1();
    const int n2 = map.n2();
    const std::vector<int>& codes = map.codes[static_cast<size_t>(map.output_device())];
    std::vector<std::uint8_t> flags(codes.size(), 0);
    auto at = [&](int i1, int i2) {
        return codes[static_cast<size_t>(i1) * static_cast<size_t>(n2) +
                     static_cast<size_t>(i2)];
    };
    for (int i1 = 0; i1 < n1; ++i1) {
        for (int i2 = 0; i2 < n2; ++i2) {
            const int c = at(i1, i2);
            bool diff = false;
            auto probe = [&](int j1, int j2) {
                if (j1 < 0 || j1 >= n1 || j2 < 0 || j2 >= n2) return;
                if (at(j1, j2) != c) diff = true;
            };
            probe(i1 - 1, i2);
            probe(i1 + 1, i2);
            probe(i1, i2 - 1);
            probe(i1, i2 + 1);
            if (eight_neighborhood) {
                probe(i1 - 1, i2 - 1);
                probe(i1 - 1, i2 + 1);
                probe(i1 + 1, i2 - 1);
                probe(i1 + 1, i2 + 1);
            }
            if (diff)
                flags[static_cast<size_t>(i1) * static_cast<size_t>(n2) +
                      static_cast<size_t>(i2)] = 1;
        }
    }
    return flags;
}

std::vector<NotCurvePoint> not_search(double beta, double t_min, double t_max,
                                      int samples, double tau_obs,
                                      const DeviceParams& params,
                                      const SimConfig& cfg) {
    if (samples < 1) throw ValidationError("not_search: samples must be >= 1");
    if (t_min < 0.0 || t_max < t_min)
        throw ValidationError("not_search: need 0 <= t_min <= t_max");
    if (tau_obs < t_max)
        throw ValidationError("not_search: tau_obs must cover the longest pulse");
    params.validate();

    // Fixed observation time: no settling extension, finals read raw.
    SimConfig run_cfg = cfg;
    run_cfg.tau_end = tau_obs;
    run_cfg.max_extensions = 0;
    run_cfg.record_every = 0;

    const std::vector<double> widths = linspace(t_min, t_max, samples);
    std::vector<NotCurvePoint> curve(widths.size());
    for (size_t i = 0; i < widths.size(); ++i) {
        const double w = widths[i];
        curve[i].width = w;
        const std::array<PulseSpec, 2> pulses{PulseSpec{beta, 0.0, w}, PulseSpec{}};
        try {
            CircuitState up(Topology::Single, params);
            up.devices[0] = init_state(LogicBit::Zero, params);
            CircuitState down(Topology::Single, params);
            down.devices[0] = init_state(LogicBit::One, params);
            const Trajectory a = integrate(up, pulses, Topology::Single, run_cfg);
            const Trajectory b = integrate(down, pulses, Topology::Single, run_cfg);
            curve[i].y_diff = a.final_state.devices[0].y - b.final_state.devices[0].y;
            curve[i].valid = true;
        } catch (const Error&) {
            curve[i].valid = false;
        }
    }
    return curve;
}

}  // namespace memcap
