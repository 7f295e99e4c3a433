#include "doctest.h"

#include <sstream>

#include "json.hpp"
#include "pclingam/errors.hpp"
#include "pclingam/io.hpp"
#include "pclingam/pattern.hpp"

using namespace pclingam;
using nlohmann::json;

namespace {

std::string error_of(const std::string& csv) {
  std::istringstream in(csv);
  try {
    read_csv(in);
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("CSV round trip is bit exact") {
  const Dataset d = sample(random_model(4, 0.5, 0.5, 6), 300, 7);
  std::ostringstream out;
  write_csv(out, d);
  std::istringstream in(out.str());
  const Dataset back = read_csv(in);
  CHECK(back.names() == d.names());
  CHECK(back.values() == d.values());
}

TEST_CASE("CSV reading") {
  std::istringstream in("a, b\n1,2\n-3.5e2, 4\n\n");
  const Dataset d = read_csv(in);
  CHECK(d.variables() == 2);
  CHECK(d.samples() == 2);
  CHECK(d.names() == std::vector<std::string>{"a", "b"});
  CHECK(d.values()(0, 1) == -350.0);
  CHECK(d.values()(1, 1) == 4.0);
}

TEST_CASE("CSV diagnostics name the offending cell") {
  const std::string nan = error_of("x,y\n1,2\n3,nan\n");
  CHECK(nan.find("row 2") != std::string::npos);
  CHECK(nan.find("'y'") != std::string::npos);
  CHECK(error_of("x,y\n1,abc\n").find("cannot parse") != std::string::npos);
  CHECK(error_of("x,y\n1\n").find("fields") != std::string::npos);
  CHECK_FALSE(error_of("").empty());
  CHECK_FALSE(error_of("x,y\n").empty());
  CHECK_THROWS_AS(read_csv_file("/nonexistent/data.csv"), InputError);
}

TEST_CASE("pattern JSON round trip") {
  const NgPattern p = ngdag_pattern(random_model(6, 0.5, 0.5, 3).ngdag());
  const json j = pattern_to_json(p, default_names(6));
  CHECK(pattern_from_json(json::parse(j.dump())) == p);

  const json figure = pattern_to_json(ngdag_pattern(chain_example_model().ngdag()), {"x", "y", "z"});
  CHECK(figure["undirected"] == json::parse("[[0, 1]]"));
  CHECK(figure["directed"] == json::parse("[[1, 2]]"));
  CHECK(figure["ng"] == json::parse("[false, false, true]"));
}

TEST_CASE("malformed pattern JSON is an input error") {
  CHECK_THROWS_AS(pattern_from_json(json::parse(R"({"nodes":["a","b"],"directed":[],"undirected":[[1,0]],"ng":[false,false]})")),
                  InputError);
  CHECK_THROWS_AS(pattern_from_json(json::parse(R"({"nodes":["a","b"],"directed":[[0,5]],"undirected":[],"ng":[false,false]})")),
                  InputError);
  CHECK_THROWS_AS(pattern_from_json(json::parse(R"({"nodes":["a"],"directed":[],"undirected":[],"ng":[]})")), InputError);
  CHECK_THROWS_AS(pattern_from_json(json::parse(R"({"nodes":["a"]})")), InputError);
}

TEST_CASE("model JSON round trip") {
  const ScmModel m = random_model(5, 0.6, 0.5, 11);
  const json j = model_to_json(m, default_names(5));
  CHECK(j["format_version"] == kFormatVersion);
  const ScmModel back = model_from_json(json::parse(j.dump()));
  CHECK(back.b() == m.b());
  CHECK(back.c() == m.c());
  CHECK(back.order() == m.order());
  CHECK(back.disturbances() == m.disturbances());
  CHECK(pattern_from_json(j["true_pattern"]) == ngdag_pattern(m.ngdag()));
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"order":[0]})")), InputError);
}

TEST_CASE("format_pattern text") {
  const NgPattern p = ngdag_pattern(chain_example_model().ngdag());
  CHECK(format_pattern(p, {"x", "y", "z"}) == "x — y, y → z; non-Gaussian: {z}");
  CHECK(format_pattern({MixedGraph(2), {false, false}}, {"a", "b"}) == "(no edges); non-Gaussian: {}");
  const NgPattern back{MixedGraph(2, std::vector<Edge>{{1, 0}}, {}), {true, false}};
  CHECK(format_pattern(back, {"a", "b"}) == "b → a; non-Gaussian: {a}");
}

TEST_CASE("report and confusion JSON carry the documented fields") {
  const Dataset d = sample(chain_example_model(), 2000, 1, {"x", "y", "z"});
  const DiscoveryReport r = pclingam::pclingam(d);
  const json j = report_to_json(r, d.names());
  for (const char* key : {"format_version", "pattern", "best_dag", "dag_scores", "residual_p_values", "config"})
    CHECK(j.contains(key));
  CHECK(j["dag_scores"].size() == r.dag_scores.size());

  ConfusionMatrix m;
  m.counts(1, 2) = 2;
  const json c = confusion_to_json(m);
  CHECK(c["counts"][1][2] == 2);
  CHECK(c["total"] == 2);
}
