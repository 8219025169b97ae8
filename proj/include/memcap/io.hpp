#pragma once

#include <ostream>
#include <string>

#include "memcap/logic.hpp"

namespace memcap {

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double x);

/// Columns: tau, y_i, v_i per device, then beta_c_i per device. An
/// optional `# config: ...` comment line precedes the header so every
/// artifact carries the configuration that produced it.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr,
                          const std::string& config_json = {});

/// Row-major `beta1,beta2,code_c1,...,sensitive` rows; the code_c3 column
/// is present only for three-device maps.
void write_map_csv(std::ostream& os, const OperationMap& map,
                   const std::string& config_json = {});

/// Plain PGM (P2), one device per file: code value as intensity with
/// maxval 16, rows from high beta2 down so the image plots like a map.
void write_map_pgm(std::ostream& os, const OperationMap& map, int device,
                   const std::string& config_json = {});

/// JSON object {inputs, finals, codes, names, params}; unsettled finals
/// are the string "unsettled", unsettled codes the number 16.
void write_truth_table_json(std::ostream& os, const TruthTableResult& tt,
                            const std::string& params_json = {});

/// Columns: T,y1_minus_y2. Invalid points are skipped.
void write_not_curve_csv(std::ostream& os, const std::vector<NotCurvePoint>& curve,
                         const std::string& config_json = {});

/// Open `path` for writing, run `writer`, throw IoError on failure.
void write_file(const std::string& path,
                const std::function<void(std::ostream&)>& writer);

}  // namespace memcap
