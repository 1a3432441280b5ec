#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "gradtc/errors.hpp"
#include "gradtc/experiment.hpp"

using namespace gradtc;

namespace {

const char* minimal_pd_config = R"({
  "experiment": "phase_diagram",
  "model": {"sites": 2, "J_mhz": 0.0, "B0_mhz": 100, "g_mhz": 10,
            "disorder": {"law": "gaussian", "width_mhz": 0}},
  "drive": {"kind": "delta", "epsilon": 1.5707963267948966, "T_ns": 100},
  "grid": [],
  "run": {"s_max": 5, "realizations": 1, "master_seed": 1, "initial_state": "neel"},
  "output": {"directory": "tmp_test_out"}
})";

} // namespace

TEST_CASE("config parsing") {
  SUBCASE("minimal config parses and validates") {
    const auto cfg = parse_config(minimal_pd_config);
    CHECK(cfg.kind == ExperimentKind::PhaseDiagram);
    CHECK(cfg.model.sites == 2);
    CHECK(cfg.run.n_periods == 10);  // defaulted to 2 s_max
  }
  SUBCASE("unknown keys are a hard error") {
    std::string bad = minimal_pd_config;
    bad.replace(bad.find("\"J_mhz\""), 7, "\"J_mzh\"");
    CHECK_THROWS_AS(parse_config(bad), config_error);
  }
  SUBCASE("invalid JSON is a config error") {
    CHECK_THROWS_AS(parse_config("{ not json"), config_error);
  }
  SUBCASE("unknown experiment kind") {
    std::string bad = minimal_pd_config;
    bad.replace(bad.find("phase_diagram"), 13, "phase_diagrum");
    CHECK_THROWS_AS(parse_config(bad), config_error);
  }
  SUBCASE("config round-trips through its canonical JSON") {
    const auto cfg = parse_config(minimal_pd_config);
    const std::string canon = config_to_json(cfg);
    const auto cfg2 = parse_config(canon);
    CHECK(config_to_json(cfg2) == canon);
    CHECK(config_hash(cfg2) == config_hash(cfg));
  }
  SUBCASE("drive validation") {
    std::string bad = minimal_pd_config;
    bad.replace(bad.find("\"T_ns\": 100"), 11, "\"T_ns\": -10");
    CHECK_THROWS_AS(parse_config(bad), config_error);
  }
}

TEST_CASE("grid axes") {
  GridAxis lin{"J_mhz", 1.0, 3.0, 5, false};
  const auto lv = lin.values();
  REQUIRE(lv.size() == 5);
  CHECK(lv.front() == doctest::Approx(1.0));
  CHECK(lv[2] == doctest::Approx(2.0));
  CHECK(lv.back() == doctest::Approx(3.0));

  GridAxis lg{"g_mhz", 10.0, 1000.0, 3, true};
  const auto gv = lg.values();
  CHECK(gv[1] == doctest::Approx(100.0));

  GridAxis bad{"g_mhz", -1.0, 10.0, 3, true};
  CHECK_THROWS_AS(bad.values(), config_error);
}

TEST_CASE("run_experiment trivial phase diagram") {
  // epsilon = pi/2 removes the pulse and J = 0 freezes the z projections
  auto cfg = parse_config(minimal_pd_config);
  const auto table = run_experiment(cfg, 1);
  REQUIRE(table.rows.size() == 1);
  // columns: sz1_avg_mean, sz1_avg_std
  CHECK(table.columns[0] == "sz1_avg_mean");
  CHECK(table.rows[0][0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(table.rows[0][1] == doctest::Approx(0.0));
}

TEST_CASE("worker count does not change a single numeric bit") {
  std::string cfg_text = R"({
    "experiment": "phase_diagram",
    "model": {"sites": 4, "J_mhz": 2.5, "B0_mhz": 500, "g_mhz": 200,
              "disorder": {"law": "gaussian", "width_mhz": 9}},
    "drive": {"kind": "delta", "epsilon": 0.1, "T_ns": 100},
    "grid": [{"param": "J_mhz", "min": 1, "max": 6, "points": 3}],
    "run": {"s_max": 20, "realizations": 6, "master_seed": 11,
            "initial_state": "neel", "sites_tracked": [1, 2]},
    "output": {"directory": "tmp_test_out"}
  })";
  const auto cfg = parse_config(cfg_text);
  const auto t1 = run_experiment(cfg, 1);
  const auto t4 = run_experiment(cfg, 4);
  REQUIRE(t1.rows.size() == t4.rows.size());
  for (std::size_t r = 0; r < t1.rows.size(); ++r)
    for (std::size_t c = 0; c < t1.rows[r].size(); ++c)
      CHECK(t1.rows[r][c] == t4.rows[r][c]);  // bitwise equality
}

TEST_CASE("metadata config re-parses to an equivalent config") {
  auto cfg = parse_config(minimal_pd_config);
  const auto table = run_experiment(cfg, 1);
  const auto cfg2 = parse_config(table.metadata.at("config"));
  CHECK(config_to_json(cfg2) == config_to_json(cfg));
}

TEST_CASE("write_results and emit_plot_data") {
  namespace fs = std::filesystem;
  auto cfg = parse_config(minimal_pd_config);
  cfg.output.directory = "tmp_test_out";
  const auto table = run_experiment(cfg, 1);
  const auto files = write_results(cfg, table);
  REQUIRE(files.size() == 2);
  for (const auto& f : files) CHECK(fs::exists(f));
  std::ifstream in(files[0]);
  std::string first;
  std::getline(in, first);
  CHECK(first.rfind("# gradtc", 0) == 0);

  SUBCASE("figure id must match the experiment") {
    CHECK_THROWS_AS(emit_plot_data(table, "heating", "tmp_test_out"), config_error);
  }
  SUBCASE("empty tables are rejected") {
    ResultTable empty;
    empty.kind = cfg.kind;
    CHECK_THROWS_AS(emit_plot_data(empty, "phase_diagram", "tmp_test_out"), config_error);
  }
  fs::remove_all("tmp_test_out");
}

TEST_CASE("byte-identical results file for repeated runs") {
  namespace fs = std::filesystem;
  std::string cfg_text = R"({
    "experiment": "reversal_time",
    "model": {"sites": 3, "J_mhz": 2.5, "B0_mhz": 300, "g_mhz": 100,
              "disorder": {"law": "gaussian", "width_mhz": 9}},
    "drive": {"kind": "delta", "epsilon": 0.15, "T_ns": 100},
    "grid": [{"param": "g_mhz", "min": 0, "max": 200, "points": 2}],
    "run": {"n_periods": 500, "realizations": 4, "master_seed": 3,
            "initial_state": "neel"},
    "output": {"directory": "tmp_test_out_a"}
  })";
  auto cfg = parse_config(cfg_text);
  const auto t1 = run_experiment(cfg, 2);
  const auto t2 = run_experiment(cfg, 3);
  // strip wall-time metadata differences by comparing only rows
  REQUIRE(t1.rows.size() == t2.rows.size());
  for (std::size_t r = 0; r < t1.rows.size(); ++r)
    CHECK(t1.rows[r] == t2.rows[r]);
}

TEST_CASE("fit_loglog recovers a synthetic power law") {
  std::vector<double> x, y;
  for (double v : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    x.push_back(v);
    y.push_back(3.5 * std::pow(v, -1.84));
  }
  const auto fit = fit_loglog(x, y);
  CHECK(fit.slope == doctest::Approx(-1.84).epsilon(1e-9));
  CHECK(std::exp(fit.intercept) == doctest::Approx(3.5).epsilon(1e-9));
}

TEST_CASE("presets are all parseable and named uniquely") {
  std::set<std::string> names;
  for (const auto& p : presets()) {
    CAPTURE(p.name);
    CHECK(names.insert(p.name).second);
    const auto cfg = parse_config(p.config_json);
    cfg.validate();
    CHECK(!p.description.empty());
    CHECK(!p.note.empty());
  }
  CHECK_THROWS_AS(find_preset("no-such-preset"), config_error);
}
