#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psr/baselines.hpp"
#include "psr/engine.hpp"
#include "support.hpp"

using namespace psr;

TEST_CASE("E1 by enumeration") {
  const auto r = possible_worlds_rank(testing::e1(), testing::origin(1), 2);
  REQUIRE(r.instances.rows() == 3);
  RowMatXd rows(3, 2);
  rows << 1, 0, 0.4, 0.6, 0, 1;
  CHECK((r.instances.probs - rows).cwiseAbs().maxCoeff() < 1e-12);
  RowMatXd objects(2, 2);
  objects << 0.6, 0.4, 0.4, 0.6;
  CHECK((r.objects.probs - objects).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(world_count(testing::e1()) == 2);
}

TEST_CASE("E1 through the quadratic baseline matches the engine") {
  const auto a = ylks_rank(testing::e1(), testing::origin(1), 2);
  const auto b = psr_rank(testing::e1(), testing::origin(1), 2);
  CHECK(testing::max_diff(a, b) < 1e-12);
}

TEST_CASE("half-present object alone") {
  UncertainDatabase db;
  db.objects.push_back({1, {{0, VecXd::Constant(1, 1.0), 0.5}}});
  const auto r = possible_worlds_rank(db, testing::origin(1), 1);
  CHECK(r.instances.probs(0, 0) == doctest::Approx(1.0));
  CHECK(r.objects.probs(0, 0) == doctest::Approx(0.5));
  CHECK(world_count(db) == 2);
}

TEST_CASE("quadratic baseline trivial cases") {
  UncertainDatabase one;
  one.objects.push_back({1, {{0, VecXd::Constant(1, 1.0), 1.0}}});
  const auto r1 = ylks_rank(one, testing::origin(1), 3);
  CHECK((r1.instances.probs.row(0).array() == VecXd::Unit(3, 0).array().transpose()).all());

  UncertainDatabase two = one;
  two.objects.push_back({2, {{0, VecXd::Constant(1, 2.0), 1.0}}});
  const auto r2 = ylks_rank(two, testing::origin(1), 2);
  CHECK(r2.instances.probs(0, 0) == 1.0);
  CHECK(r2.instances.probs(1, 1) == 1.0);
  CHECK(r2.instances.probs(1, 0) == 0.0);
}

TEST_CASE("world probabilities sum to one") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) {
    const auto db = testing::random_small_db(rng);
    double total = 0;
    std::size_t worlds = 0;
    for_each_world(db, [&](const WorldOutcome& w) {
      CHECK(w.probability > 0.0);
      CHECK(w.choice.size() == db.objects.size());
      total += w.probability;
      ++worlds;
    });
    CHECK(std::abs(total - 1) <= 1e-9);
    CHECK(static_cast<double>(worlds) == world_count(db));
  }
}

TEST_CASE("enumeration guard fires before any work") {
  UncertainDatabase db;
  for (int o = 0; o < 8; ++o) {
    UncertainObject obj{o, {}};
    for (int i = 0; i < 10; ++i) obj.instances.push_back({i, VecXd::Constant(1, o + 0.1 * i), 0.1});
    db.objects.push_back(obj);
  }
  CHECK(world_count(db) == 1e8);
  int visited = 0;
  CHECK_THROWS_AS(for_each_world(db, [&](const WorldOutcome&) { ++visited; }), ResourceLimitExceeded);
  CHECK(visited == 0);
  CHECK_THROWS_AS(possible_worlds_rank(db, testing::origin(1), 2), ResourceLimitExceeded);
}

TEST_CASE("engine, baseline and oracle agree on enumerable databases") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 100; ++t) {
    const auto db = testing::random_small_db(rng);
    const auto q = testing::random_query(rng, db.dimensionality);
    const auto k = static_cast<Eigen::Index>(db.objects.size());
    const auto oracle = possible_worlds_rank(db, q, k);
    CHECK(testing::max_diff(psr_rank(db, q, k), oracle) <= 1e-9);
    CHECK(testing::max_diff(ylks_rank(db, q, k), oracle) <= 1e-9);
  }
}
