// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "pclingam/bench.hpp"
#include "pclingam/discovery.hpp"
#include "pclingam/pattern.hpp"
#include "pclingam/scm.hpp"
#include "pclingam/stats.hpp"
#include "test_util.hpp"

using namespace pclingam;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void report(int id, const char* name, double budget_s, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v{false, ""};
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool pass = v.pass;
  std::string timing = fmt("%.2f s", secs);
  if (budget_s > 0) {
    timing += fmt(" (budget %.0f s)", budget_s);
    pass = pass && secs < budget_s;
  }
  failures += !pass;
  std::printf("[%s] %d %s: %s; %s\n", pass ? "PASS" : "FAIL", id, name, v.detail.c_str(), timing.c_str());
  std::fflush(stdout);
}

NgPattern chain_example_truth() {
  const std::vector<Edge> dir{{1, 2}};
  const std::vector<Edge> und{{0, 1}};
  return {MixedGraph(3, dir, und), {false, false, true}};
}

Verdict chain_example_end_to_end() {
  const ScmModel m = chain_example_model();
  const NgPattern truth = chain_example_truth();
  if (!(ngdag_pattern(m.ngdag()) == truth)) return {false, "generating model has the wrong pattern"};
  int hits = 0;
  for (int run = 0; run < 20; ++run) {
    const auto [unused, data_seed] = run_seeds(10, run);
    hits += pclingam::pclingam(sample(m, 10'000, data_seed)).pattern == truth;
  }
  return {hits >= 18, fmt("%d/20 runs recovered {x-y, y->z}, ng=(F,F,T) (need >= 18)", hits)};
}

Verdict table_analog(Step1 step1, double threshold) {
  ExperimentConfig c;
  c.runs = 20;
  c.nodes = 6;
  c.samples = 1000;
  c.step1 = step1;
  c.seed = 1;
  const ExperimentResult r = run_experiment(c);
  const double f = r.matrix.diagonal_fraction();
  const bool ok = r.failed_runs == 0 && f >= threshold;
  return {ok, fmt("diagonal %lld/%lld = %.3f (need >= %.2f), failed runs %d", static_cast<long long>(r.matrix.correct()),
                  static_cast<long long>(r.matrix.total()), f, threshold, r.failed_runs)};
}

Verdict lemma_chain_graph() {
  std::mt19937_64 rng(404);
  int ok = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + static_cast<int>(rng() % 7);
    std::uniform_real_distribution<double> density(0.1, 0.9);
    const NgDag g(testing::random_dag(n, density(rng), rng), testing::random_flags(n, 0.4, rng));
    ok += is_chain_graph(ngdag_pattern(g).graph);
  }
  return {ok == 1000, fmt("%d/1000 ngDAG patterns are chain graphs", ok)};
}

// Random weights on `dag` with the disturbances of `like`.
ScmModel reweighted(const Dag& dag, const ScmModel& like, std::mt19937_64& rng) {
  const int n = dag.size();
  std::uniform_real_distribution<double> mag(0.5, 1.5);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (auto [from, to] : dag.edges()) b(to, from) = (rng() % 2 ? 1.0 : -1.0) * mag(rng);
  return ScmModel(dag.topological_order(), b, Eigen::VectorXd::Zero(n), like.disturbances());
}

Verdict theorem_oracle() {
  std::mt19937_64 rng(77);
  double worst = 0.0;
  int equivalent = 0;
  int distinguished = 0;
  int non_equivalent = 0;
  for (std::uint64_t seed = 0; (equivalent < 100 || non_equivalent < 100) && seed < 100'000; ++seed) {
    const int n = 2 + static_cast<int>(seed % 4);
    const ScmModel m1 = random_model(n, 0.7, 0.4, seed);
    const NgDag d1 = m1.ngdag();
    const MixedGraph cpdag = cpdag_from_dag(d1.dag);
    std::vector<NgDag> same, different;
    for (const Dag& g : enumerate_dags(cpdag)) {
      if (g == d1.dag) continue;
      NgDag d2(g, d1.ng);
      (distribution_equivalent(d1, d2) ? same : different).push_back(d2);
    }
    if (equivalent < 100 && !same.empty()) {
      const ScmModel m2 = match_parametrization(m1, same[rng() % same.size()]);
      const Eigen::MatrixXd s1 = m1.implied_covariance();
      const double scale = std::max(1.0, s1.cwiseAbs().maxCoeff());
      worst = std::max(worst, (m2.implied_covariance() - s1).cwiseAbs().maxCoeff() / scale);
      ++equivalent;
    }
    if (non_equivalent < 100 && !different.empty()) {
      const NgDag d2 = different[rng() % different.size()];
      const ScmModel m2 = reweighted(d2.dag, m1, rng);
      const NgPattern p1 = ngdag_pattern(d1);
      const NgPattern p2 = ngdag_pattern(d2);
      // Pairs whose marks differ between the two patterns; both fits must get them right.
      const auto marks1 = edge_marks(p1.graph);
      const auto marks2 = edge_marks(p2.graph);
      bool ok = true;
      for (const auto& [model, marks] : {std::pair{&m1, &marks1}, std::pair{&m2, &marks2}}) {
        const auto est = edge_marks(pclingam::pclingam(sample(*model, 10'000, rng()), {}, cpdag).pattern.graph);
        for (std::size_t k = 0; k < marks1.size(); ++k)
          if (marks1[k] != marks2[k] && est[k] != (*marks)[k]) ok = false;
      }
      distinguished += ok;
      ++non_equivalent;
    }
  }
  const bool pass = equivalent == 100 && worst <= 1e-9 && non_equivalent == 100 && distinguished >= 90;
  return {pass, fmt("%d equivalent pairs, max relative covariance gap %.2e (need <= 1e-9); "
                    "%d/%d non-equivalent pairs oriented correctly (need >= 90)",
                    equivalent, worst, distinguished, non_equivalent)};
}

Verdict enumeration_oracle() {
  int graphs = 0;
  int ok = 0;
  for (int n = 1; n <= 4; ++n) {
    for (const Dag& g : testing::all_dags(n)) {
      ++graphs;
      const auto members = enumerate_dags(cpdag_from_dag(g));
      const auto sig = testing::dsep_signature(g);
      bool good = std::find(members.begin(), members.end(), g) != members.end();
      for (const Dag& m : members) good = good && testing::dsep_signature(m) == sig;
      ok += good;
    }
  }
  return {ok == graphs, fmt("%d/%d DAGs on <= 4 nodes: class contains g and shares its d-separations", ok, graphs)};
}

// Residuals drawn as exact N(0, 1), i.e. standardized with the population
// mean and variance, the setting of the analytic (1 - 2/pi)/N. Re-standardizing
// with sample moments lowers it to (1 - 3/pi)/N; printed for reference only.
Verdict score_calibration() {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  double population = 0.0;
  double resampled = 0.0;
  for (int t = 0; t < 100; ++t) {
    Eigen::RowVectorXd g(10'000);
    for (auto& v : g) v = normal(rng);
    population += nongaussianity_term(g);
    resampled += nongaussianity_score(standardize_rows(g));
  }
  const double mean = population / 100.0;
  return {mean >= 1e-5 && mean <= 1e-4,
          fmt("mean per-node term %.3e for N(0,1) residuals (need in [1e-5, 1e-4], analytic %.3e); "
              "after sample standardization %.3e (analytic %.3e)",
              mean, (1.0 - 2.0 / std::numbers::pi) / 1e4, resampled / 100.0, (1.0 - 3.0 / std::numbers::pi) / 1e4)};
}

Verdict normality_calibration() {
  std::mt19937_64 rng(8);
  int gaussian = 0;
  int lognormal = 0;
  for (int t = 0; t < 2000; ++t) {
    gaussian += anderson_darling(draw_disturbances({Family::Gaussian, 1.0}, 1000, rng)).p_value < 0.01;
    lognormal += anderson_darling(draw_disturbances({Family::LogNormal, 1.0}, 1000, rng)).p_value < 0.01;
  }
  const double level = gaussian / 2000.0;
  const double power = lognormal / 2000.0;
  return {level >= 0.003 && level <= 0.03 && power >= 0.99,
          fmt("Gaussian rejection rate %.4f (need in [0.003, 0.03]), LogNormal power %.4f (need >= 0.99)", level, power)};
}

}  // namespace

int main() {
  report(1, "chain example end-to-end", 10, chain_example_end_to_end);
  report(2, "oracle Step 1 on random 6-node models", 60, [] { return table_analog(Step1::Oracle, 0.93); });
  report(3, "PC Step 1 on random 6-node models", 120, [] { return table_analog(Step1::Pc, 0.85); });
  report(4, "ngDAG patterns are chain graphs", 0, lemma_chain_graph);
  report(5, "reparametrization oracle", 0, theorem_oracle);
  report(6, "enumeration oracle", 0, enumeration_oracle);
  report(7, "score calibration", 0, score_calibration);
  report(8, "normality-test calibration", 0, normality_calibration);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
