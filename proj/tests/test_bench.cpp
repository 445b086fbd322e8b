#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psr/bench.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

using namespace psr;

namespace {

BenchRecord synthetic(std::size_t n, Eigen::Index k, double ms) {
  BenchRecord r;
  r.engine = "psr";
  r.objects = n;
  r.k = k;
  r.wall_time_ms = ms;
  r.accepted = true;
  return r;
}

}  // namespace

TEST_CASE("power law fit recovers exponents") {
  std::vector<BenchRecord> linear, quadratic;
  for (std::size_t n : {1000, 2000, 4000, 8000}) {
    const double x = static_cast<double>(n);
    linear.push_back(synthetic(n, 100, 0.03 * x));
    quadratic.push_back(synthetic(n, 100, 2e-4 * x * x));
  }
  const auto a = fit_scaling(linear, ScalingAxis::kObjects);
  CHECK(a.exponent == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(a.r_squared == doctest::Approx(1.0));
  CHECK(a.points == 4);
  CHECK(fit_scaling(quadratic, ScalingAxis::kObjects).exponent == doctest::Approx(2.0).epsilon(1e-9));

  std::vector<BenchRecord> depth;
  for (Eigen::Index k : {100, 200, 400}) depth.push_back(synthetic(4000, k, 0.5 * static_cast<double>(k)));
  CHECK(fit_scaling(depth, ScalingAxis::kDepth).exponent == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fits need enough well-formed points") {
  const std::vector<double> x{1, 2}, y{1, 2};
  CHECK_THROWS(fit_power_law(x, y));
  const std::vector<double> x3{1, 2, 4}, bad{1, 0, 2};
  CHECK_THROWS(fit_power_law(x3, bad));
  const std::vector<double> flat{5, 5, 5};
  CHECK_THROWS(fit_power_law(flat, x3));

  std::vector<BenchRecord> mixed{synthetic(1000, 1, 1), synthetic(2000, 1, 2), synthetic(4000, 1, 4)};
  mixed[1].engine = "ylks";
  CHECK_THROWS(fit_scaling(mixed, ScalingAxis::kObjects));
}

TEST_CASE("grid parsing takes the cartesian product") {
  const auto grid = parse_grid(nlohmann::json::parse(R"({"objects":[100,200],"k":[5,10,20],"engines":["psr"]})"));
  CHECK(grid.points.size() == 6);
  CHECK(grid.engines == std::vector<EngineKind>{EngineKind::kPsr});
  CHECK(grid.points[0].data.instances == 20);
  CHECK(grid.points[0].data.ud == 2.0);
  CHECK(grid.points[5].data.objects == 200);
  CHECK(grid.points[5].k == 20);
  CHECK(parse_grid(nlohmann::json::parse(R"({"objects":[]})")).points.empty());
  CHECK_THROWS_AS(parse_grid(nlohmann::json::parse(R"({"engines":["quick"]})")), std::invalid_argument);
}

TEST_CASE("empty grid gives no records") { CHECK(run_suite(BenchGrid{}).empty()); }

TEST_CASE("suite gates and times both engines") {
  BenchGrid grid;
  grid.points.push_back({GenParams{300, 10, 3, 10.0, 2.0, 7, 0.0}, 20});
  std::size_t streamed = 0;
  SuiteOptions opt;
  opt.repeats = 3;
  opt.on_record = [&](const BenchRecord&) { ++streamed; };
  const auto records = run_suite(grid, opt);
  REQUIRE(records.size() == 2);
  CHECK(streamed == 2);
  for (const auto& r : records) {
    CHECK(r.error.empty());
    CHECK(r.accepted);
    CHECK(r.repeats == 3);
    REQUIRE(r.gate_max_diff);
    CHECK(*r.gate_max_diff <= 1e-6);
    CHECK(r.peak_result_rows == 3000);
    CHECK(r.avg_aol_size > 0.0);
    CHECK(r.wall_time_ms > 0.0);
  }
  CHECK(records[0].engine == "psr");
  CHECK(records[1].engine == "ylks");

  const auto j = to_json(records[0]);
  CHECK(j.at("N") == 300);
  CHECK(j.at("k") == 20);
  std::ostringstream csv;
  write_records_csv(csv, records);
  const std::string text = csv.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

TEST_CASE("baseline is skipped above its object cap") {
  BenchGrid grid;
  grid.ylks_max_objects = 100;
  grid.points.push_back({GenParams{200, 2, 2, 10.0, 1.0, 1, 0.0}, 5});
  SuiteOptions opt;
  opt.repeats = 1;
  const auto records = run_suite(grid, opt);
  REQUIRE(records.size() == 2);
  CHECK(records[0].accepted);
  CHECK(records[1].engine == "ylks");
  CHECK_FALSE(records[1].accepted);
  CHECK(records[1].error.rfind("skipped", 0) == 0);
}

TEST_CASE("engine names") {
  CHECK(parse_engine("psr") == EngineKind::kPsr);
  CHECK(to_string(EngineKind::kYlks) == "ylks");
  CHECK_THROWS(parse_engine("fast"));
}
