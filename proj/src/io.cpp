#include "pclingam/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "pclingam/errors.hpp"
#include "pclingam/pattern.hpp"

namespace pclingam {

using nlohmann::json;

namespace {

json edge_list(const std::vector<Edge>& edges) {
  json out = json::array();
  for (auto [a, b] : edges) out.push_back({a, b});
  return out;
}

std::vector<Edge> read_edges(const json& j, const char* key) {
  std::vector<Edge> edges;
  for (const auto& e : j.at(key)) {
    if (!e.is_array() || e.size() != 2) throw InputError(std::string(key) + " entries must be [i, j] pairs");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return edges;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\"");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\"");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

json pattern_to_json(const NgPattern& pattern, const std::vector<std::string>& names) {
  return json{{"nodes", names},
              {"directed", edge_list(pattern.graph.directed_edges())},
              {"undirected", edge_list(pattern.graph.undirected_edges())},
              {"ng", pattern.ng}};
}

NgPattern pattern_from_json(const json& j) {
  try {
    const auto nodes = j.at("nodes").get<std::vector<std::string>>();
    const int n = static_cast<int>(nodes.size());
    const auto undirected = read_edges(j, "undirected");
    for (auto [a, b] : undirected) {
      if (a >= b) throw InputError("undirected pairs must satisfy i < j");
    }
    NgPattern p{MixedGraph(n, read_edges(j, "directed"), undirected), j.at("ng").get<std::vector<bool>>()};
    if (p.ng.size() != nodes.size()) throw InputError("ng length does not match nodes");
    return p;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed pattern JSON: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw InputError(std::string("invalid pattern: ") + e.what());
  }
}

json dag_to_json(const Dag& dag) { return edge_list(dag.edges()); }

json model_to_json(const ScmModel& model, const std::vector<std::string>& names) {
  json b = json::array();
  for (Eigen::Index i = 0; i < model.b().rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < model.b().cols(); ++k) row.push_back(model.b()(i, k));
    b.push_back(std::move(row));
  }
  json disturbances = json::array();
  for (const auto& d : model.disturbances()) {
    disturbances.push_back({{"family", std::string(family_name(d.family))}, {"variance", d.variance}});
  }
  std::vector<double> c(model.c().data(), model.c().data() + model.c().size());
  return json{{"format_version", kFormatVersion},
              {"names", names},
              {"order", model.order()},
              {"b", std::move(b)},
              {"c", c},
              {"disturbances", std::move(disturbances)},
              {"true_pattern", pattern_to_json(ngdag_pattern(model.ngdag()), names)}};
}

ScmModel model_from_json(const json& j) {
  try {
    const auto order = j.at("order").get<std::vector<Node>>();
    const auto n = static_cast<Eigen::Index>(order.size());
    const auto rows = j.at("b").get<std::vector<std::vector<double>>>();
    const auto c = j.at("c").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(rows.size()) != n || static_cast<Eigen::Index>(c.size()) != n) {
      throw InputError("model arrays disagree on the node count");
    }
    Eigen::MatrixXd b(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (static_cast<Eigen::Index>(rows[i].size()) != n) throw InputError("b must be square");
      for (Eigen::Index k = 0; k < n; ++k) b(i, k) = rows[i][k];
    }
    std::vector<DisturbanceSpec> disturbances;
    for (const auto& d : j.at("disturbances")) {
      disturbances.push_back({family_from_name(d.at("family").get<std::string>()), d.at("variance").get<double>()});
    }
    return ScmModel(order, std::move(b), Eigen::Map<const Eigen::VectorXd>(c.data(), n), std::move(disturbances));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed model JSON: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw InputError(std::string("invalid model: ") + e.what());
  }
}

json config_to_json(const DiscoveryConfig& config) {
  json j{{"ci_alpha", config.ci_alpha}, {"ng_alpha", config.ng_alpha}, {"max_class_size", config.max_class_size}};
  j["max_cond_size"] = config.max_cond_size ? json(*config.max_cond_size) : json(nullptr);
  return j;
}

json report_to_json(const DiscoveryReport& report, const std::vector<std::string>& names) {
  json scores = json::array();
  for (const auto& s : report.dag_scores) scores.push_back({{"edges", dag_to_json(s.dag)}, {"score", s.score}});
  return json{{"format_version", kFormatVersion},
              {"pattern", pattern_to_json(report.pattern, names)},
              {"best_dag", dag_to_json(report.best_dag)},
              {"dag_scores", std::move(scores)},
              {"residual_p_values", report.residual_p_values},
              {"config", config_to_json(report.config_used)},
              {"step1_repaired_edges", report.repaired_edges},
              {"step1_relaxed_colliders", report.relaxed_colliders}};
}

json confusion_to_json(const ConfusionMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) row.push_back(m.counts(r, c));
    rows.push_back(std::move(row));
  }
  return json{{"format_version", kFormatVersion},
              {"labels", {"*", "—", "→", "←"}},
              {"counts", std::move(rows)},
              {"total", m.total()},
              {"correct", m.correct()},
              {"diagonal_fraction", m.diagonal_fraction()}};
}

json run_record_to_json(const RunRecord& record, const std::vector<std::string>& names) {
  json j{{"run", record.run},
         {"model_seed", record.model_seed},
         {"data_seed", record.data_seed},
         {"true_pattern", pattern_to_json(record.truth, names)}};
  if (record.report) {
    j["report"] = report_to_json(*record.report, names);
    j["counts"] = confusion_to_json(record.matrix)["counts"];
  } else {
    j["failure"] = record.failure;
  }
  return j;
}

Dataset read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("CSV is empty; a header row is required");
  std::vector<std::string> names;
  for (auto field : split(line)) names.push_back(trim(field));
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (names[c].empty()) throw InputError("CSV header column " + std::to_string(c + 1) + " is empty");
  }

  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != names.size()) {
      throw InputError("CSV line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                       " fields, expected " + std::to_string(names.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::string text = trim(fields[c]);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      const std::string where = "row " + std::to_string(rows + 1) + " (line " + std::to_string(line_no) +
                                "), column '" + names[c] + "'";
      if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw InputError("CSV " + where + ": cannot parse '" + text + "' as a number");
      }
      if (!std::isfinite(v)) throw InputError("CSV " + where + ": non-finite value '" + text + "'");
      values.push_back(v);
    }
    ++rows;
  }
  if (rows == 0) throw InputError("CSV has no data rows");
  const auto n = static_cast<Eigen::Index>(names.size());
  Eigen::MatrixXd m = Eigen::Map<const Eigen::MatrixXd>(values.data(), n, static_cast<Eigen::Index>(rows));
  return Dataset(std::move(names), std::move(m));
}

Dataset read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return read_csv(in);
}

void write_csv(std::ostream& out, const Dataset& data) {
  const auto& names = data.names();
  for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
  out << '\n';
  char buf[64];
  for (Eigen::Index s = 0; s < data.samples(); ++s) {
    for (int v = 0; v < data.variables(); ++v) {
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, data.values()(v, s));
      if (v) out << ',';
      out.write(buf, ptr - buf);
    }
    out << '\n';
  }
}

std::string format_pattern(const NgPattern& pattern, const std::vector<std::string>& names) {
  std::ostringstream os;
  const int n = pattern.graph.size();
  bool first = true;
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      const EdgeMark m = edge_mark(pattern.graph, i, j);
      if (m == EdgeMark::Absent) continue;
      os << (first ? "" : ", ");
      first = false;
      switch (m) {
        case EdgeMark::Undirected: os << names[i] << " — " << names[j]; break;
        case EdgeMark::Forward: os << names[i] << " → " << names[j]; break;
        case EdgeMark::Backward: os << names[j] << " → " << names[i]; break;
        case EdgeMark::Absent: break;
      }
    }
  }
  if (first) os << "(no edges)";
  os << "; non-Gaussian: {";
  bool first_ng = true;
  for (Node i = 0; i < n; ++i) {
    if (!pattern.ng[i]) continue;
    os << (first_ng ? "" : ", ") << names[i];
    first_ng = false;
  }
  os << '}';
  return os.str();
}

}  // namespace pclingam
