#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "memcap/run.hpp"

namespace memcap {

using nlohmann::json;

namespace {

struct FlagValues {
    std::optional<std::string> topology;
    std::optional<double> beta1, beta2, pulse_width, tau_on;
    std::optional<double> gamma, y0, rho;
    std::optional<double> dtau, tau_end, relax_extend;
    std::optional<int> max_extensions, record_every;
    std::optional<std::string> grid, range, inputs;
    std::optional<double> t_min, t_max, tau_obs;
    std::optional<int> t_samples;
    std::optional<int> workers;
    std::optional<std::string> out;
    std::string config_path;
    bool dump_config = false;
};

std::vector<double> split_doubles(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError(std::string(flag) + ": cannot parse '" + item + "'");
        }
    }
    return out;
}

json overrides_from_flags(const FlagValues& f) {
    json j = json::object();
    auto set = [&](const char* group, const char* key, const auto& opt) {
        if (opt) j[group][key] = *opt;
    };
    if (f.topology) j["topology"] = *f.topology;
    set("pulse", "beta1", f.beta1);
    set("pulse", "beta2", f.beta2);
    set("pulse", "width", f.pulse_width);
    set("pulse", "tau_on", f.tau_on);
    set("device", "gamma", f.gamma);
    set("device", "y0", f.y0);
    set("device", "rho", f.rho);
    set("sim", "dtau", f.dtau);
    set("sim", "tau_end", f.tau_end);
    set("sim", "relax_extend", f.relax_extend);
    set("sim", "max_extensions", f.max_extensions);
    set("sim", "record_every", f.record_every);
    set("not_search", "t_min", f.t_min);
    set("not_search", "t_max", f.t_max);
    set("not_search", "samples", f.t_samples);
    set("not_search", "tau_obs", f.tau_obs);
    if (f.workers) j["workers"] = *f.workers;
    if (f.out) j["out"] = *f.out;

    if (f.grid) {
        const auto v = split_doubles(*f.grid, "--grid");
        if (v.size() != 1 && v.size() != 2)
            throw ValidationError("--grid expects N or N1,N2");
        j["grid"]["n1"] = static_cast<int>(v[0]);
        j["grid"]["n2"] = static_cast<int>(v.size() == 2 ? v[1] : v[0]);
    }
    if (f.range) {
        const auto v = split_doubles(*f.range, "--range");
        if (v.size() != 2 && v.size() != 4)
            throw ValidationError("--range expects LO,HI or LO1,HI1,LO2,HI2");
        j["grid"]["beta1_min"] = v[0];
        j["grid"]["beta1_max"] = v[1];
        j["grid"]["beta2_min"] = v.size() == 4 ? v[2] : v[0];
        j["grid"]["beta2_max"] = v.size() == 4 ? v[3] : v[1];
    }
    if (f.inputs) {
        const std::string& s = *f.inputs;
        if (s.empty() || s.size() > 2 ||
            s.find_first_not_of("01") != std::string::npos)
            throw ValidationError("--inputs expects a bit string like 0, 1, 00 or 10");
        json bits = json::array();
        for (char c : s) bits.push_back(c - '0');
        if (s.size() == 1) bits.push_back(0);
        j["inputs"] = bits;
    }
    return j;
}

void add_common_options(CLI::App* cmd, FlagValues& f) {
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--topology", f.topology, "circuit layout: single, reduced or triple");
    cmd->add_option("--beta1", f.beta1, "source-1 pulse amplitude [beta units]");
    cmd->add_option("--beta2", f.beta2, "source-2 pulse amplitude [beta units]");
    cmd->add_option("--pulse-width", f.pulse_width, "pulse width T [tau units]");
    cmd->add_option("--tau-on", f.tau_on, "pulse start time");
    cmd->add_option("--gamma", f.gamma, "dimensionless damping");
    cmd->add_option("--y0", f.y0, "dimensionless equilibrium displacement");
    cmd->add_option("--rho", f.rho, "dimensionless series resistance");
    cmd->add_option("--dtau", f.dtau, "integration step");
    cmd->add_option("--tau-end", f.tau_end, "observation horizon (default: pulse end + 20)");
    cmd->add_option("--relax-extend", f.relax_extend, "extra settling horizon per extension");
    cmd->add_option("--max-extensions", f.max_extensions, "settling extensions before unsettled");
    cmd->add_option("--record-every", f.record_every, "trajectory sample decimation");
    cmd->add_option("--grid", f.grid, "map grid size: N or N1,N2");
    cmd->add_option("--range", f.range, "map amplitude range: LO,HI or LO1,HI1,LO2,HI2");
    cmd->add_option("--inputs", f.inputs, "input bits, e.g. 10");
    cmd->add_option("--t-min", f.t_min, "NOT search: smallest pulse width");
    cmd->add_option("--t-max", f.t_max, "NOT search: largest pulse width");
    cmd->add_option("--t-samples", f.t_samples, "NOT search: number of widths");
    cmd->add_option("--tau-obs", f.tau_obs, "NOT search: observation time");
    cmd->add_option("--workers", f.workers, "sweep threads (0 = all cores)");
    cmd->add_option("--out", f.out, "output file or prefix");
    cmd->add_flag("--dump-config", f.dump_config,
                  "print the resolved config as JSON and exit");
}

void report_error(const char* type, const std::string& message) {
    json j;
    j["error"] = {{"type", type}, {"message", message}};
    std::cerr << j.dump() << std::endl;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Bistable membrane memcapacitor circuit simulator"};
    app.require_subcommand(1);
    FlagValues f;

    CLI::App* simulate = app.add_subcommand(
        "simulate", "integrate one pulse drive and write the trajectory CSV");
    CLI::App* table = app.add_subcommand(
        "truth-table", "run the four input combinations and write codes as JSON");
    CLI::App* map_cmd = app.add_subcommand(
        "map", "sweep pulse-amplitude space and write the operation map (CSV + PGM)");
    CLI::App* nots = app.add_subcommand(
        "not-search", "sweep single-device pulse widths for NOT intervals (CSV)");
    for (CLI::App* cmd : {simulate, table, map_cmd, nots}) add_common_options(cmd, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        // not-search runs on a single directly-driven device
        if (nots->parsed() && !f.topology) f.topology = "single";

        const json overrides = overrides_from_flags(f);
        const RunConfig cfg = parse_config(f.config_path, overrides.dump());
        if (f.dump_config) {
            std::cout << to_json(cfg) << std::endl;
            return 0;
        }
        Command cmd = Command::Simulate;
        if (table->parsed()) cmd = Command::TruthTable;
        if (map_cmd->parsed()) cmd = Command::Map;
        if (nots->parsed()) cmd = Command::NotSearch;

        const std::vector<std::string> files = run_command(cmd, cfg);
        for (const std::string& path : files) std::cout << "wrote " << path << '\n';
        return 0;
    } catch (const ValidationError& e) {
        report_error("validation", e.what());
        return 1;
    } catch (const IoError& e) {
        report_error("io", e.what());
        return 3;
    } catch (const Error& e) {
        report_error("simulation", e.what());
        return 2;
    } catch (const std::exception& e) {
        report_error("simulation", e.what());
        return 2;
    }
}

}  // namespace memcap
