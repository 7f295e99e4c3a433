#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "pclingam/bench.hpp"
#include "pclingam/dataset.hpp"
#include "pclingam/discovery.hpp"
#include "pclingam/graph.hpp"
#include "pclingam/scm.hpp"

namespace pclingam {

inline constexpr int kFormatVersion = 1;

/// {nodes, directed: [[i, j]], undirected: [[i, j]] with i < j, ng}
nlohmann::json pattern_to_json(const NgPattern& pattern, const std::vector<std::string>& names);
/// Throws InputError on schema violations.
NgPattern pattern_from_json(const nlohmann::json& j);

nlohmann::json dag_to_json(const Dag& dag);

/// {format_version, names, order, b (rows), c, disturbances: [{family, variance}], true_pattern}
nlohmann::json model_to_json(const ScmModel& model, const std::vector<std::string>& names);
ScmModel model_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const DiscoveryConfig& config);
nlohmann::json report_to_json(const DiscoveryReport& report, const std::vector<std::string>& names);

nlohmann::json confusion_to_json(const ConfusionMatrix& m);
nlohmann::json run_record_to_json(const RunRecord& record, const std::vector<std::string>& names);

/// Header row of names, one sample per row, '.' decimal separator.
/// Throws InputError naming the offending row and column.
Dataset read_csv(std::istream& in);
Dataset read_csv_file(const std::filesystem::path& path);
/// Shortest round-trip representation of every value.
void write_csv(std::ostream& out, const Dataset& data);

/// e.g. "x — y, y → z; non-Gaussian: {z}"
std::string format_pattern(const NgPattern& pattern, const std::vector<std::string>& names);

}  // namespace pclingam
