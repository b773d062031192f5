#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "pckhdmr/experiments.hpp"
#include "pckhdmr/serialization.hpp"

using namespace pckhdmr;

namespace {

// Body of a table with run-dependent parts removed: the metadata comment
// line (timestamp) and the trailing wall-clock column.
std::string masked_csv(const ResultTable& table) {
  const bool strip_wall =
      !table.columns.empty() && table.columns.back() == "wall_ms";
  std::istringstream in(table.to_csv());
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) continue;
    if (strip_wall) {
      const auto pos = line.rfind(',');
      if (pos != std::string::npos) line.resize(pos);
    }
    out += line;
    out += '\n';
  }
  return out;
}

double cell(const ResultTable& table, std::size_t row, const std::string& column) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (table.columns[c] == column) return std::stod(table.rows[row][c]);
  }
  throw std::runtime_error("no column " + column);
}

std::string text_cell(const ResultTable& table, std::size_t row,
                      const std::string& column) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (table.columns[c] == column) return table.rows[row][c];
  }
  throw std::runtime_error("no column " + column);
}

}  // namespace

TEST_CASE("string hashing matches the published reference vectors") {
  CHECK(fnv1a("") == 14695981039346656037ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hash_hex(0) == "0000000000000000");
  CHECK(hash_hex(0xaf63dc4c8601ec8cULL) == "af63dc4c8601ec8c");
}

TEST_CASE("result tables render to commented csv and structured json") {
  ResultTable table;
  table.columns = {"name", "value"};
  table.rows = {{"alpha", "1"}, {"beta", "2"}};
  table.metadata = {{"experiment", "demo"}};

  const std::string csv = table.to_csv();
  CHECK(csv.rfind("# ", 0) == 0);
  CHECK(csv.find("name,value\n") != std::string::npos);
  CHECK(csv.find("alpha,1\n") != std::string::npos);

  auto doc = nlohmann::json::parse(table.to_json_text());
  CHECK(doc.at("metadata").at("experiment") == "demo");
  CHECK(doc.at("columns").size() == 2);
  REQUIRE(doc.at("rows").size() == 2);
  CHECK(doc.at("rows")[1].at("name") == "beta");

  table.write("table_tmp.csv", "csv");
  std::ifstream in("table_tmp.csv");
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == csv);
  std::remove("table_tmp.csv");

  CHECK_THROWS_AS(table.write("table_tmp.xml", "xml"), std::invalid_argument);
}

TEST_CASE("method names map onto surrogate families") {
  CHECK(surrogate_for_method("pc-kriging-hdmr").backend ==
        SurrogateBackend::PcKriging);
  CHECK(surrogate_for_method("kriging-hdmr").backend == SurrogateBackend::Kriging);
  CHECK(surrogate_for_method("pce-hdmr").backend == SurrogateBackend::Pce);
  CHECK_THROWS_AS(surrogate_for_method("kriging-full"), std::invalid_argument);
  CHECK_THROWS_AS(surrogate_for_method("bogus"), std::invalid_argument);

  CHECK(is_hdmr_method("pc-kriging-hdmr"));
  CHECK(is_hdmr_method("kriging-hdmr"));
  CHECK(is_hdmr_method("pce-hdmr"));
  CHECK_FALSE(is_hdmr_method("kriging-full"));
}

TEST_CASE("coupling tables are square, symmetric, and reproducible") {
  RunOptions opts;
  opts.seed = 7;
  ResultTable table = run_coupling(opts);

  REQUIRE(table.rows.size() == 9);
  REQUIRE(table.columns.size() == 10);
  CHECK(table.rows[0][0] == "x1");
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(table.rows[i][i + 1] == "1");  // diagonal
    for (std::size_t j = 0; j < 9; ++j) {
      CHECK(table.rows[i][j + 1] == table.rows[j][i + 1]);
    }
  }
  CHECK(table.metadata.at("experiment") == "coupling");
  CHECK(table.metadata.contains("pairs"));

  ResultTable again = run_coupling(opts);
  CHECK(masked_csv(table) == masked_csv(again));

  RunOptions bad;
  bad.methods = {"kriging-full"};
  CHECK_THROWS_AS(run_coupling(bad), std::invalid_argument);
  RunOptions missing;
  missing.functions = {"no-such-function"};
  CHECK_THROWS_AS(run_coupling(missing), std::invalid_argument);
}

TEST_CASE("the split-ratio sweep emits replicates plus one median per ratio") {
  RunOptions opts;
  opts.replicates = 2;
  opts.validation = 500;
  ResultTable table = run_c_sweep(opts);

  REQUIRE(table.rows.size() == 9 * 2 + 9);
  int medians = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (text_cell(table, r, "kind") == "median") {
      ++medians;
      CHECK(std::isfinite(cell(table, r, "r2")));
      CHECK(cell(table, r, "raae") >= 0.0);
    } else {
      CHECK(text_cell(table, r, "kind") == "replicate");
    }
    CHECK(cell(table, r, "samples") <= 130.0);
  }
  CHECK(medians == 9);

  ResultTable again = run_c_sweep(opts);
  CHECK(masked_csv(table) == masked_csv(again));

  RunOptions bad;
  bad.replicates = 0;
  CHECK_THROWS_AS(run_c_sweep(bad), std::invalid_argument);
  RunOptions full;
  full.methods = {"kriging-full"};
  CHECK_THROWS_AS(run_c_sweep(full), std::invalid_argument);
}

TEST_CASE("the accuracy study trains the baseline on the decomposition's budget") {
  RunOptions opts;
  opts.functions = {"table3/1"};
  opts.methods = {"pc-kriging-hdmr", "kriging-full"};
  opts.validation = 1000;
  ResultTable table = run_accuracy(opts);

  REQUIRE(table.rows.size() == 2);
  CHECK(text_cell(table, 0, "method") == "pc-kriging-hdmr");
  CHECK(text_cell(table, 1, "method") == "kriging-full");
  CHECK(text_cell(table, 0, "function") == "table3/1");
  CHECK(cell(table, 0, "r2") > 0.9);
  CHECK(cell(table, 0, "p") == 2.0);
  // Matched modeling cost: the full-dimensional baseline gets exactly as
  // many training points as the decomposition consumed.
  CHECK(text_cell(table, 0, "samples") == text_cell(table, 1, "samples"));

  RunOptions bad;
  bad.methods = {"not-a-method"};
  bad.functions = {"table3/1"};
  CHECK_THROWS_AS(run_accuracy(bad), std::invalid_argument);
  RunOptions missing;
  missing.functions = {"no-such-function"};
  CHECK_THROWS_AS(run_accuracy(missing), std::invalid_argument);
}

TEST_CASE("the cost study reports measured counts beside the closed form") {
  RunOptions opts;
  opts.dimensions = {10};
  opts.methods = {"pc-kriging-hdmr"};
  ResultTable table = run_cost(opts);
  REQUIRE(table.rows.size() == 1);
  CHECK(text_cell(table, 0, "formula_s8") == "2276");
  const double samples = cell(table, 0, "samples");
  CHECK(samples > 0.0);
  CHECK(samples <= 4.0 * 125.0);
}

TEST_CASE("the budgeted reliability study spends each budget exactly") {
  RunOptions opts;
  opts.budgets = {101};
  opts.cantilever_seeds = 2;
  opts.methods = {"pc-kriging-hdmr"};
  opts.validation = 500;
  ResultTable table = run_cantilever(opts);

  REQUIRE(table.rows.size() == 3);  // two replicates + their median
  CHECK(text_cell(table, 0, "kind") == "replicate");
  CHECK(text_cell(table, 2, "kind") == "median");
  for (std::size_t r = 0; r < 2; ++r) {
    CHECK(text_cell(table, r, "samples") == "101");
    CHECK(std::isfinite(cell(table, r, "r2")));
  }
  CHECK(cell(table, 2, "samples") == 101.0);
  CHECK(table.metadata.at("build_epsilon").get<double>() <= 1e-9);

  RunOptions bad;
  bad.cantilever_seeds = 0;
  CHECK_THROWS_AS(run_cantilever(bad), std::invalid_argument);
  RunOptions full;
  full.methods = {"kriging-full"};
  CHECK_THROWS_AS(run_cantilever(full), std::invalid_argument);
}

TEST_CASE("the ranking study orders indices largest first") {
  RunOptions opts;
  opts.functions = {"table3/1"};
  opts.budget = 60;
  opts.sensitivity_samples = 2000;
  ResultTable table = run_sensitivity(opts);

  // Two single-variable rows plus one pair row for a 2-D function.
  REQUIRE(table.rows.size() == 3);
  double prev = 1e300;
  int singles = 0, pairs = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::string kind = text_cell(table, r, "table");
    const double value = cell(table, r, "index");
    if (kind == "single") {
      ++singles;
      CHECK(value <= prev);
      prev = value;
    } else {
      CHECK(kind == "pair");
      ++pairs;
    }
    CHECK(value >= 0.0);
  }
  CHECK(singles == 2);
  CHECK(pairs == 1);
  CHECK(text_cell(table, 0, "rank") == "1");
}

TEST_CASE("single fits report one row and can persist the model") {
  RunOptions opts;
  opts.validation = 500;
  const std::string path = "fit_model_tmp.json";
  ResultTable table = run_fit(opts, "table3/1", "pc-kriging-hdmr", path);
  REQUIRE(table.rows.size() == 1);
  CHECK(text_cell(table, 0, "function") == "table3/1");
  CHECK(cell(table, 0, "r2") > 0.9);

  HdmrModel model = load_hdmr(path);
  std::remove(path.c_str());
  CHECK(model.dim() == 2);
  CHECK(model.backend() == SurrogateBackend::PcKriging);
  CHECK(std::isfinite(model.predict(model.center().coords())));

  // The single-surrogate baseline fits too, but cannot persist a model file.
  RunOptions baseline;
  baseline.validation = 500;
  baseline.budget = 40;
  ResultTable full = run_fit(baseline, "table3/1", "kriging-full", "");
  REQUIRE(full.rows.size() == 1);
  CHECK(text_cell(full, 0, "method") == "kriging-full");
  CHECK(text_cell(full, 0, "samples") == "40");
  CHECK_THROWS_AS(run_fit(baseline, "table3/1", "kriging-full", "out.json"),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_fit(opts, "table3/1", "not-a-method", ""),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_fit(opts, "no-such-function", "pce-hdmr", ""),
                  std::invalid_argument);
}
