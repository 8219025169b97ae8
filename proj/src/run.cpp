#include "memcap/run.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "memcap/io.hpp"

namespace memcap {

using nlohmann::json;

Command command_from_string(const std::string& name) {
    if (name == "simulate") return Command::Simulate;
    if (name == "truth-table") return Command::TruthTable;
    if (name == "map") return Command::Map;
    if (name == "not-search") return Command::NotSearch;
    throw ValidationError("unknown command '" + name + "'");
}

const char* to_string(Command cmd) {
    switch (cmd) {
        case Command::Simulate: return "simulate";
        case Command::TruthTable: return "truth-table";
        case Command::Map: return "map";
        default: return "not-search";
    }
}

namespace {

class FieldReader {
public:
    FieldReader(const json& j, const std::string& prefix, std::string& errs)
        : j_(j), prefix_(prefix), errs_(errs) {}

    template <typename T>
    void read(const char* key, T& into) {
        seen_.push_back(key);
        auto it = j_.find(key);
        if (it == j_.end()) return;
        try {
            into = it->get<T>();
        } catch (const json::exception&) {
            fail(std::string("field '") + prefix_ + key + "' has the wrong type");
        }
    }

    const json* group(const char* key) {
        seen_.push_back(key);
        auto it = j_.find(key);
        if (it == j_.end()) return nullptr;
        if (!it->is_object()) {
            fail(std::string("field '") + prefix_ + key + "' must be an object");
            return nullptr;
        }
        return &*it;
    }

    void finish() {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            bool known = false;
            for (const char* k : seen_)
                if (it.key() == k) known = true;
            if (!known) fail("unknown field '" + prefix_ + it.key() + "'");
        }
    }

    void fail(const std::string& msg) {
        if (!errs_.empty()) errs_ += '\n';
        errs_ += msg;
    }

private:
    const json& j_;
    std::string prefix_;
    std::string& errs_;
    std::vector<const char*> seen_;
};

void apply_overlay(RunConfig& cfg, const json& j, std::string& errs) {
    FieldReader top(j, "", errs);

    std::string topology;
    top.read("topology", topology);
    if (!topology.empty()) {
        try {
            cfg.topology = topology_from_string(topology);
        } catch (const ValidationError& e) {
            top.fail(e.what());
        }
    }

    if (const json* g = top.group("device")) {
        FieldReader r(*g, "device.", errs);
        r.read("gamma", cfg.device.gamma);
        r.read("y0", cfg.device.y0);
        r.read("rho", cfg.device.rho);
        r.finish();
    }
    if (const json* g = top.group("pulse")) {
        FieldReader r(*g, "pulse.", errs);
        r.read("beta1", cfg.beta1);
        r.read("beta2", cfg.beta2);
        r.read("width", cfg.pulse_width);
        r.read("tau_on", cfg.tau_on);
        r.finish();
    }
    if (const json* g = top.group("sim")) {
        FieldReader r(*g, "sim.", errs);
        r.read("dtau", cfg.sim.dtau);
        r.read("tau_end", cfg.sim.tau_end);
        r.read("relax_extend", cfg.sim.relax_extend);
        r.read("max_extensions", cfg.sim.max_extensions);
        r.read("record_every", cfg.sim.record_every);
        r.read("tol_v", cfg.sim.tol_v);
        r.read("tol_y", cfg.sim.tol_y);
        r.finish();
    }
    if (const json* g = top.group("grid")) {
        FieldReader r(*g, "grid.", errs);
        r.read("beta1_min", cfg.grid.b1_min);
        r.read("beta1_max", cfg.grid.b1_max);
        r.read("beta2_min", cfg.grid.b2_min);
        r.read("beta2_max", cfg.grid.b2_max);
        r.read("n1", cfg.grid.n1);
        r.read("n2", cfg.grid.n2);
        r.finish();
    }
    if (const json* g = top.group("not_search")) {
        FieldReader r(*g, "not_search.", errs);
        r.read("t_min", cfg.not_search.t_min);
        r.read("t_max", cfg.not_search.t_max);
        r.read("samples", cfg.not_search.samples);
        r.read("tau_obs", cfg.not_search.tau_obs);
        r.finish();
    }
    top.read("inputs", cfg.inputs);
    top.read("workers", cfg.workers);
    top.read("out", cfg.out);
    top.finish();
}

json parse_object(const std::string& text, const char* what) {
    try {
        json j = json::parse(text);
        if (!j.is_object())
            throw ValidationError(std::string(what) + ": top-level value must be an object");
        return j;
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string(what) + ": " + e.what());
    }
}

bool overlay_has(const json& j, const char* group, const char* key) {
    auto it = j.find(group);
    return it != j.end() && it->is_object() && it->contains(key);
}

}  // namespace

void RunConfig::validate() const {
    std::string errs;
    auto append = [&](const std::string& msg) {
        if (!errs.empty()) errs += '\n';
        errs += msg;
    };
    try {
        device.validate();
    } catch (const ValidationError& e) {
        append(e.what());
    }
    try {
        sim.validate();
    } catch (const ValidationError& e) {
        append(e.what());
    }
    if (!(beta1 >= 0.0)) append("pulse.beta1 must be >= 0");
    if (!(beta2 >= 0.0)) append("pulse.beta2 must be >= 0");
    if (!(pulse_width >= 0.0)) append("pulse.width must be >= 0");
    if (!(tau_on >= 0.0)) append("pulse.tau_on must be >= 0");
    if (sim.tau_end > 0.0 && tau_on + pulse_width > sim.tau_end)
        append("pulse must end within [0, sim.tau_end]");
    if (grid.b1_min < 0.0 || grid.b1_max < grid.b1_min)
        append("grid beta1 range must satisfy 0 <= min <= max");
    if (grid.b2_min < 0.0 || grid.b2_max < grid.b2_min)
        append("grid beta2 range must satisfy 0 <= min <= max");
    if (grid.n1 < 1 || grid.n2 < 1) append("grid sizes must be >= 1");
    if (not_search.t_min < 0.0 || not_search.t_max < not_search.t_min)
        append("not_search T range must satisfy 0 <= t_min <= t_max");
    if (not_search.samples < 1) append("not_search.samples must be >= 1");
    if (not_search.tau_obs < not_search.t_max)
        append("not_search.tau_obs must be >= t_max");
    for (int b : inputs)
        if (b != 0 && b != 1) append("inputs must be 0 or 1");
    if (workers < 0) append("workers must be >= 0");
    if (!errs.empty()) throw ValidationError(errs);
}

RunConfig parse_config_text(const std::string& file_json,
                            const std::string& overrides) {
    RunConfig cfg;
    std::string errs;
    bool tau_end_given = false;

    if (!file_json.empty()) {
        const json j = parse_object(file_json, "config file");
        apply_overlay(cfg, j, errs);
        tau_end_given |= overlay_has(j, "sim", "tau_end");
    }
    if (!overrides.empty()) {
        const json j = parse_object(overrides, "overrides");
        apply_overlay(cfg, j, errs);
        tau_end_given |= overlay_has(j, "sim", "tau_end");
    }
    if (!errs.empty()) throw ValidationError(errs);

    // observation horizon follows the pulse unless pinned explicitly
    if (!tau_end_given) cfg.sim.tau_end = cfg.tau_on + cfg.pulse_width + 20.0;

    cfg.validate();
    return cfg;
}

RunConfig parse_config(const std::string& path, const std::string& overrides) {
    std::string file_json;
    if (!path.empty()) {
        std::ifstream is(path);
        if (!is) throw IoError("cannot open config file '" + path + "'");
        std::ostringstream buf;
        buf << is.rdbuf();
        file_json = buf.str();
    }
    return parse_config_text(file_json, overrides);
}

std::string to_json(const RunConfig& c) {
    json j;
    j["topology"] = to_string(c.topology);
    j["device"] = {{"gamma", c.device.gamma}, {"y0", c.device.y0}, {"rho", c.device.rho}};
    j["pulse"] = {{"beta1", c.beta1},
                  {"beta2", c.beta2},
                  {"width", c.pulse_width},
                  {"tau_on", c.tau_on}};
    j["sim"] = {{"dtau", c.sim.dtau},
                {"tau_end", c.sim.tau_end},
                {"relax_extend", c.sim.relax_extend},
                {"max_extensions", c.sim.max_extensions},
                {"record_every", c.sim.record_every},
                {"tol_v", c.sim.tol_v},
                {"tol_y", c.sim.tol_y}};
    j["grid"] = {{"beta1_min", c.grid.b1_min}, {"beta1_max", c.grid.b1_max},
                 {"beta2_min", c.grid.b2_min}, {"beta2_max", c.grid.b2_max},
                 {"n1", c.grid.n1},            {"n2", c.grid.n2}};
    j["not_search"] = {{"t_min", c.not_search.t_min},
                       {"t_max", c.not_search.t_max},
                       {"samples", c.not_search.samples},
                       {"tau_obs", c.not_search.tau_obs}};
    j["inputs"] = c.inputs;
    j["workers"] = c.workers;
    j["out"] = c.out;
    return j.dump(2);
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.topology == b.topology && a.device.gamma == b.device.gamma &&
           a.device.y0 == b.device.y0 && a.device.rho == b.device.rho &&
           a.beta1 == b.beta1 && a.beta2 == b.beta2 &&
           a.pulse_width == b.pulse_width && a.tau_on == b.tau_on &&
           a.sim.dtau == b.sim.dtau && a.sim.tau_end == b.sim.tau_end &&
           a.sim.relax_extend == b.sim.relax_extend &&
           a.sim.max_extensions == b.sim.max_extensions &&
           a.sim.record_every == b.sim.record_every && a.sim.tol_v == b.sim.tol_v &&
           a.sim.tol_y == b.sim.tol_y && a.grid.b1_min == b.grid.b1_min &&
           a.grid.b1_max == b.grid.b1_max && a.grid.b2_min == b.grid.b2_min &&
           a.grid.b2_max == b.grid.b2_max && a.grid.n1 == b.grid.n1 &&
           a.grid.n2 == b.grid.n2 && a.not_search.t_min == b.not_search.t_min &&
           a.not_search.t_max == b.not_search.t_max &&
           a.not_search.samples == b.not_search.samples &&
           a.not_search.tau_obs == b.not_search.tau_obs && a.inputs == b.inputs &&
           a.workers == b.workers && a.out == b.out;
}

namespace {

std::string embedded_config(Command cmd, const RunConfig& cfg) {
    json j;
    j["command"] = to_string(cmd);
    j["config"] = json::parse(to_json(cfg));
    return j.dump();
}

std::vector<LogicBit> input_bits(const RunConfig& cfg) {
    std::vector<LogicBit> bits;
    for (int i = 0; i < input_count(cfg.topology); ++i)
        bits.push_back(cfg.inputs[static_cast<size_t>(i)] ? LogicBit::One
                                                          : LogicBit::Zero);
    return bits;
}

}  // namespace

std::vector<std::string> run_command(Command cmd, const RunConfig& cfg) {
    cfg.validate();
    const std::string meta = embedded_config(cmd, cfg);
    std::vector<std::string> written;

    switch (cmd) {
        case Command::Simulate: {
            CircuitState cs(cfg.topology, cfg.device);
            const std::vector<LogicBit> bits = input_bits(cfg);
            for (size_t i = 0; i < bits.size(); ++i)
                cs.devices[i] = init_state(bits[i], cfg.device);
            if (cfg.topology == Topology::Triple)
                cs.devices[2] = init_state(LogicBit::Zero, cfg.device);
            const Trajectory tr = integrate(cs, cfg.pulses(), cfg.topology, cfg.sim);
            const std::string path = cfg.out.empty() ? "trajectory.csv" : cfg.out;
            write_file(path, [&](std::ostream& os) {
                write_trajectory_csv(os, tr, meta);
            });
            written.push_back(path);
            break;
        }
        case Command::TruthTable: {
            const TruthTableResult tt =
                truth_table(cfg.beta1, cfg.beta2, cfg.pulse_width, cfg.topology,
                            cfg.device, cfg.sim);
            const std::string path = cfg.out.empty() ? "truth_table.json" : cfg.out;
            write_file(path, [&](std::ostream& os) {
                write_truth_table_json(os, tt, meta);
            });
            written.push_back(path);
            break;
        }
        case Command::Map: {
            const OperationMap map =
                sweep_map(cfg.grid.b1_min, cfg.grid.b1_max, cfg.grid.b2_min,
                          cfg.grid.b2_max, cfg.grid.n1, cfg.grid.n2,
                          cfg.pulse_width, cfg.topology, cfg.device, cfg.sim,
                          cfg.workers);
            const std::string prefix = cfg.out.empty() ? "map" : cfg.out;
            const std::string csv = prefix + ".csv";
            write_file(csv, [&](std::ostream& os) { write_map_csv(os, map, meta); });
            written.push_back(csv);
            for (size_t d = 0; d < map.codes.size(); ++d) {
                const std::string pgm = prefix + "_c" + std::to_string(d + 1) + ".pgm";
                write_file(pgm, [&](std::ostream& os) {
                    write_map_pgm(os, map, static_cast<int>(d), meta);
                });
                written.push_back(pgm);
            }
            break;
        }
        case Command::NotSearch: {
            if (cfg.topology != Topology::Single)
                throw ValidationError("not-search runs on the single topology");
            const std::vector<NotCurvePoint> curve =
                not_search(cfg.beta1, cfg.not_search.t_min, cfg.not_search.t_max,
                           cfg.not_search.samples, cfg.not_search.tau_obs,
                           cfg.device, cfg.sim);
            const std::string path = cfg.out.empty() ? "not_curve.csv" : cfg.out;
            write_file(path, [&](std::ostream& os) {
                write_not_curve_csv(os, curve, meta);
            });
            written.push_back(path);
            break;
        }
    }
    return written;
}

}  // namespace memcap
