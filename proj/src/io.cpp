#include "memcap/io.hpp"

#include <charconv>
#include <fstream>

#include <json.hpp>

namespace memcap {

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

void emit_config_comment(std::ostream& os, const std::string& config_json) {
    if (!config_json.empty()) os << "# config: " << config_json << '\n';
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& tr,
                          const std::string& config_json) {
    emit_config_comment(os, config_json);
    const size_t ndev = tr.y.size();
    os << "tau";
    for (size_t d = 0; d < ndev; ++d) os << ",y" << d + 1 << ",v" << d + 1;
    for (size_t d = 0; d < ndev; ++d) os << ",betaC" << d + 1;
    os << '\n';
    for (size_t i = 0; i < tr.times.size(); ++i) {
        os << format_double(tr.times[i]);
        for (size_t d = 0; d < ndev; ++d)
            os << ',' << format_double(tr.y[d][i]) << ',' << format_double(tr.v[d][i]);
        for (size_t d = 0; d < ndev; ++d) os << ',' << format_double(tr.beta_c[d][i]);
        os << '\n';
    }
}

void write_map_csv(std::ostream& os, const OperationMap& map,
                   const std::string& config_json) {
    emit_config_comment(os, config_json);
    const int ndev = static_cast<int>(map.codes.size());
    os << "beta1,beta2";
    for (int d = 0; d < ndev; ++d) os << ",code_c" << d + 1;
    os << ",sensitive\n";
    for (int i1 = 0; i1 < map.n1(); ++i1) {
        for (int i2 = 0; i2 < map.n2(); ++i2) {
            os << format_double(map.beta1_axis[static_cast<size_t>(i1)]) << ','
               << format_double(map.beta2_axis[static_cast<size_t>(i2)]);
            for (int d = 0; d < ndev; ++d) os << ',' << map.code_at(d, i1, i2);
            const size_t cell = static_cast<size_t>(i1) * map.beta2_axis.size() +
                                static_cast<size_t>(i2);
            os << ',' << static_cast<int>(map.sensitivity[cell]) << '\n';
        }
    }
}

void write_map_pgm(std::ostream& os, const OperationMap& map, int device,
                   const std::string& config_json) {
    if (device < 0 || device >= static_cast<int>(map.codes.size()))
        throw ValidationError("write_map_pgm: device index out of range");
    os << "P2\n";
    emit_config_comment(os, config_json);
    os << map.n1() << ' ' << map.n2() << '\n' << kUnsettledMark << '\n';
    // top row = highest beta2 so the file views like the published maps
    for (int i2 = map.n2() - 1; i2 >= 0; --i2) {
        for (int i1 = 0; i1 < map.n1(); ++i1) {
            os << map.code_at(device, i1, i2);
            os << (i1 + 1 == map.n1() ? '\n' : ' ');
        }
    }
}

void write_truth_table_json(std::ostream& os, const TruthTableResult& tt,
                            const std::string& params_json) {
    nlohmann::json j;
    j["inputs"] = kInputCombos;
    nlohmann::json finals = nlohmann::json::object();
    nlohmann::json codes = nlohmann::json::object();
    nlohmann::json names = nlohmann::json::object();
    for (size_t d = 0; d < tt.finals.size(); ++d) {
        const std::string dev = "c" + std::to_string(d + 1);
        nlohmann::json row = nlohmann::json::array();
        for (LogicBit b : tt.finals[d]) {
            if (b == LogicBit::Unsettled)
                row.push_back("unsettled");
            else
                row.push_back(b == LogicBit::One ? 1 : 0);
        }
        finals[dev] = std::move(row);
        codes["code_" + dev] = tt.codes[d];
        names[dev] = tt.names[d];
    }
    j["finals"] = std::move(finals);
    j["codes"] = std::move(codes);
    j["names"] = std::move(names);
    if (!tt.diagnostics.empty()) j["diagnostics"] = tt.diagnostics;
    if (!params_json.empty())
        j["params"] = nlohmann::json::parse(params_json);
    else
        j["params"] = nlohmann::json::object();
    os << j.dump(2) << '\n';
}

void write_not_curve_csv(std::ostream& os, const std::vector<NotCurvePoint>& curve,
                         const std::string& config_json) {
    emit_config_comment(os, config_json);
    os << "T,y1_minus_y2\n";
    for (const NotCurvePoint& p : curve) {
        if (!p.valid) continue;
        os << format_double(p.width) << ',' << format_double(p.y_diff) << '\n';
    }
}

void write_file(const std::string& path,
                const std::function<void(std::ostream&)>& writer) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    writer(os);
    os.flush();
    if (!os) throw IoError("failed writing '" + path + "'");
}

}  // namespace memcap
