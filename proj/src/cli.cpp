#include "pclingam/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"

#include "pclingam/bench.hpp"
#include "pclingam/discovery.hpp"
#include "pclingam/errors.hpp"
#include "pclingam/io.hpp"
#include "pclingam/pattern.hpp"
#include "pclingam/scm.hpp"

namespace pclingam::cli {

namespace {

struct Options {
  // discover
  std::string data_csv;
  // shared
  double alpha = 0.01;
  double ng_alpha = 0.01;
  std::size_t max_class_size = 10'000;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "text";
  // simulate / evaluate
  int nodes = 6;
  long samples = 1000;
  std::optional<double> edge_prob;
  double ng_prob = 0.5;
  std::string preset = "random";
  int runs = 20;
  std::string step1 = "oracle";
};

std::uint64_t resolve_seed(const Options& opt, std::ostream& err) {
  if (opt.seed) return *opt.seed;
  if (const char* env = std::getenv("PCLINGAM_SEED"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError(std::string("PCLINGAM_SEED is not an unsigned integer: '") + env + "'");
    }
  }
  std::random_device rd;
  const std::uint64_t seed = (std::uint64_t{rd()} << 32) | rd();
  err << "seed: " << seed << '\n';
  return seed;
}

DiscoveryConfig discovery_config(const Options& opt) {
  DiscoveryConfig config;
  config.ci_alpha = opt.alpha;
  config.ng_alpha = opt.ng_alpha;
  config.max_class_size = opt.max_class_size;
  config.validate();
  return config;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  return f;
}

int cmd_discover(const Options& opt, std::ostream& out) {
  const Dataset data = read_csv_file(opt.data_csv);
  const DiscoveryReport report = pclingam(data, discovery_config(opt));
  const auto j = report_to_json(report, data.names());
  if (!opt.out.empty()) open_output(opt.out) << j.dump(2) << '\n';
  if (opt.format == "json") {
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << format_pattern(report.pattern, data.names()) << '\n';
  out << "residual normality p-values:";
  for (std::size_t i = 0; i < report.residual_p_values.size(); ++i) {
    out << ' ' << data.names()[i] << '=' << std::fixed << std::setprecision(4) << report.residual_p_values[i];
  }
  out << '\n' << "DAGs scored: " << report.dag_scores.size() << '\n';
  if (report.repaired_edges > 0 || report.relaxed_colliders) {
    out << "step-1 repair: " << report.repaired_edges << " orientation(s) dropped"
        << (report.relaxed_colliders ? ", collider check relaxed" : "") << '\n';
  }
  return kExitOk;
}

int cmd_simulate(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.out.empty()) throw InputError("simulate requires --out PREFIX");
  // Model and data draw from independent streams of the same seed.
  const auto [model_seed, data_seed] = run_seeds(resolve_seed(opt, err), 0);
  std::optional<ScmModel> model;
  std::vector<std::string> names;
  if (opt.preset == "chain") {
    model = chain_example_model();
    names = {"x", "y", "z"};
  } else {
    if (opt.nodes < 1) throw InputError("--nodes must be positive");
    const double edge_prob = opt.edge_prob.value_or(default_edge_prob(opt.nodes));
    model = random_model(opt.nodes, edge_prob, opt.ng_prob, model_seed);
    names = default_names(opt.nodes);
  }
  const Dataset data = sample(*model, opt.samples, data_seed, names);

  const std::string csv_path = opt.out + ".csv";
  const std::string model_path = opt.out + ".model.json";
  {
    auto f = open_output(csv_path);
    write_csv(f, data);
  }
  open_output(model_path) << model_to_json(*model, names).dump(2) << '\n';
  out << "wrote " << csv_path << " (" << data.samples() << " samples) and " << model_path << '\n';
  out << "true pattern: " << format_pattern(ngdag_pattern(model->ngdag()), names) << '\n';
  return kExitOk;
}

int cmd_evaluate(const Options& opt, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  config.runs = opt.runs;
  config.nodes = opt.nodes;
  config.samples = opt.samples;
  config.step1 = opt.step1 == "pc" ? Step1::Pc : Step1::Oracle;
  config.discovery = discovery_config(opt);
  config.seed = resolve_seed(opt, err);
  config.edge_prob = opt.edge_prob;
  config.ng_prob = opt.ng_prob;
  if (config.runs < 0) throw InputError("--runs must be nonnegative");
  if (config.nodes < 1 || config.samples < 1) throw InputError("--nodes and --samples must be positive");

  const ExperimentResult result = run_experiment(config);
  const auto names = default_names(config.nodes);
  if (!opt.out.empty()) {
    auto f = open_output(opt.out);
    for (const auto& r : result.runs) f << run_record_to_json(r, names).dump() << '\n';
  }

  if (opt.format == "json") {
    auto j = confusion_to_json(result.matrix);
    j["runs"] = config.runs;
    j["failed_runs"] = result.failed_runs;
    j["step1"] = opt.step1;
    j["seed"] = config.seed;
    j["repaired_edges"] = result.repaired_edges;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "step 1: " << (config.step1 == Step1::Pc ? "PC" : "true d-separation-equivalence pattern")
      << ", " << config.runs << " runs, " << config.nodes << " nodes, " << config.samples << " samples, seed "
      << config.seed << '\n';
  out << format_confusion_table(result.matrix);
  out << "diagonal: " << result.matrix.correct() << '/' << result.matrix.total() << " (" << std::fixed
      << std::setprecision(3) << result.matrix.diagonal_fraction() << ")\n";
  out << "failed runs: " << result.failed_runs << '\n';
  for (const auto& r : result.runs) {
    if (!r.failure.empty()) out << "  run " << r.run << ": " << r.failure << '\n';
  }
  if (config.step1 == Step1::Pc) {
    out << "step-1 repairs per run:";
    for (const auto& r : result.runs) out << ' ' << (r.report ? r.report->repaired_edges : 0);
    out << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Causal discovery for linear acyclic models with mixed Gaussian/non-Gaussian disturbances"};
  app.require_subcommand(1);
  Options opt;

  auto add_discovery_flags = [&opt](CLI::App* cmd) {
    cmd->add_option("--alpha", opt.alpha, "Significance of the PC independence tests")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--ng-alpha", opt.ng_alpha, "Normality p-value below which a residual is non-Gaussian")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--max-class-size", opt.max_class_size, "Largest equivalence class to enumerate")
        ->check(CLI::PositiveNumber);
  };
  auto add_model_flags = [&opt](CLI::App* cmd) {
    cmd->add_option("--nodes", opt.nodes, "Variables per random model")->check(CLI::PositiveNumber);
    cmd->add_option("--samples", opt.samples, "Samples per dataset")->check(CLI::PositiveNumber);
    cmd->add_option("--edge-prob", opt.edge_prob, "Edge probability (default: expected edge count = nodes)")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--ng-prob", opt.ng_prob, "Probability that a disturbance is non-Gaussian")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--seed", opt.seed, "Random seed (fallback: PCLINGAM_SEED, then a fresh one)");
  };

  auto* discover = app.add_subcommand("discover", "Estimate the distribution-equivalence pattern of a CSV dataset");
  discover->add_option("data", opt.data_csv, "CSV file with a header row")->required();
  add_discovery_flags(discover);
  discover->add_option("--out", opt.out, "Write the report JSON here");
  discover->add_option("--format", opt.format)->check(CLI::IsMember({"text", "json"}));

  auto* simulate = app.add_subcommand("simulate", "Sample a dataset from a random (or preset) model");
  add_model_flags(simulate);
  simulate->add_option("--preset", opt.preset)->check(CLI::IsMember({"random", "chain"}));
  simulate->add_option("--out", opt.out, "Output prefix; writes PREFIX.csv and PREFIX.model.json");

  auto* evaluate = app.add_subcommand("evaluate", "Run randomized trials and tabulate edge-mark confusion");
  add_model_flags(evaluate);
  add_discovery_flags(evaluate);
  evaluate->add_option("--runs", opt.runs, "Number of random models")->check(CLI::NonNegativeNumber);
  evaluate->add_option("--step1", opt.step1, "Source of the d-separation-equivalence pattern")
      ->check(CLI::IsMember({"oracle", "pc"}));
  evaluate->add_option("--format", opt.format)->check(CLI::IsMember({"text", "json"}));
  evaluate->add_option("--out", opt.out, "Write per-run reports as JSON lines here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (discover->parsed()) return cmd_discover(opt, out);
    if (simulate->parsed()) return cmd_simulate(opt, out, err);
    return cmd_evaluate(opt, out, err);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InvalidArgument& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ClassTooLarge& e) {
    err << "computation error: " << e.what() << '\n';
    return kExitComputationError;
  } catch (const Error& e) {
    err << "computation error: " << e.what() << '\n';
    return kExitComputationError;
  }
}

}  // namespace pclingam::cli
