#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psr/active_object_list.hpp"
#include "psr/baselines.hpp"
#include "psr/datagen.hpp"
#include "psr/engine.hpp"
#include "support.hpp"

#include <map>

using namespace psr;

namespace {

Eigen::RowVectorXd row(std::initializer_list<double> v) {
  Eigen::RowVectorXd r(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) r[i++] = x;
  return r;
}

UncertainDatabase certain_chain(int n) {
  UncertainDatabase db;
  db.dimensionality = 1;
  for (int i = 0; i < n; ++i) db.objects.push_back({i + 1, {{0, VecXd::Constant(1, i + 1.0), 1.0}}});
  return db;
}

}  // namespace

TEST_CASE("E1 instance rows and object distribution") {
  const auto r = psr_rank(testing::e1(), testing::origin(1), 2);
  REQUIRE(r.instances.rows() == 3);
  CHECK((r.instances.probs.row(0) - row({1, 0})).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((r.instances.probs.row(1) - row({0.4, 0.6})).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((r.instances.probs.row(2) - row({0, 1})).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(r.instances.keys[1].object_id == 2);
  CHECK(r.objects.object_ids == std::vector<ObjectId>{1, 2});
  CHECK((r.objects.probs.row(0) - row({0.6, 0.4})).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((r.objects.probs.row(1) - row({0.4, 0.6})).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(r.stats.case_counts[static_cast<int>(StepCase::kNewObject)] == 1);
  CHECK(r.stats.case_counts[static_cast<int>(StepCase::kSeenObject)] == 1);
}

TEST_CASE("full_dp_recompute examples") {
  const auto db = testing::e1();
  ActiveObjectList empty(db);
  CHECK((full_dp_recompute(empty, std::nullopt, 3) == VecXd::Unit(3, 0).array()).all());

  ActiveObjectList aol(db);
  aol.update(0, 0.6);
  CHECK((full_dp_recompute(aol, ObjectIndex{1}, 2) - dynamic_round(VecXd::Unit(2, 0).array(), 0.6)).abs().maxCoeff() ==
        0.0);
  aol.update(0, 0.4);
  CHECK((full_dp_recompute(aol, std::nullopt, 2) - VecXd::Unit(2, 1).array()).abs().maxCoeff() < 1e-15);
}

TEST_CASE("active object list accounting") {
  const auto db = testing::e1();
  ActiveObjectList aol(db);
  CHECK(aol.update(0, 0.6) == 0.0);
  CHECK(aol.contains(0));
  CHECK_FALSE(aol.contains(1));
  CHECK(aol.active_count() == 1);
  CHECK(aol.update(1, 1.0) == 0.0);
  CHECK(aol.active_count() == 1);
  CHECK(aol.update(0, 0.4) == doctest::Approx(0.6));
  CHECK(aol.active_count() == 0);
  CHECK(aol.seen_objects().size() == 2);
  CHECK(aol.seen_mass(0) <= 1.0);
}

TEST_CASE("early stop omits instances after an all-zero vector") {
  const auto db = certain_chain(3);
  const auto r = psr_rank(db, testing::origin(1), 1);
  CHECK(r.stats.rows_emitted == 2);
  REQUIRE(r.stats.early_stop_row);
  CHECK(*r.stats.early_stop_row == 2);
  CHECK(r.stats.implicit_zero_rows == 1);
  CHECK(r.instances.probs(1, 0) == 0.0);

  auto stream = build_browsing(db, testing::origin(1));
  RankOptions all{1};
  all.stop_on_zero = false;
  const auto full = psr_rank(db, stream, all);
  CHECK(full.stats.rows_emitted == 3);
  CHECK_FALSE(full.stats.early_stop_row);
  CHECK(max_abs_difference(r.instances, full.instances) == 0.0);
}

TEST_CASE("certain chain ranks deterministically") {
  const auto r = psr_rank(certain_chain(2), testing::origin(1), 2);
  CHECK((r.instances.probs.row(0) - row({1, 0})).cwiseAbs().maxCoeff() == 0.0);
  CHECK((r.instances.probs.row(1) - row({0, 1})).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("depth must be positive") {
  auto stream = build_browsing(testing::e1(), testing::origin(1));
  CHECK_THROWS_AS(psr_rank(testing::e1(), stream, RankOptions{0}), std::invalid_argument);
}

TEST_CASE("rows are truncated poisson binomials over the other seen objects") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    const auto db = testing::random_small_db(rng);
    const auto q = testing::random_query(rng, db.dimensionality);
    const Eigen::Index k = 1 + t % 5;
    auto stream = build_browsing(db, q);
    RankOptions opt{k};
    opt.stop_on_zero = false;
    const auto r = psr_rank(db, stream, opt);
    REQUIRE(r.instances.rows() == static_cast<Eigen::Index>(db.instance_count()));

    std::map<ObjectId, double> seen;
    std::size_t case_total = 0;
    for (Eigen::Index i = 0; i < r.instances.rows(); ++i) {
      const auto& e = stream.entries()[static_cast<std::size_t>(i)];
      seen[e.object_id] += e.probability;
      std::vector<double> others;
      for (const auto& [id, m] : seen)
        if (id != e.object_id) others.push_back(std::min(m, 1.0));
      const ArrXd expected = truncated_poisson_binomial<double>(others, k);
      CHECK((r.instances.probs.row(i).transpose().array() - expected).abs().maxCoeff() <= 1e-9);

      const double sum = r.instances.probs.row(i).sum();
      CHECK(sum <= 1 + 1e-9);
      if (k > static_cast<Eigen::Index>(others.size())) CHECK(std::abs(sum - 1) <= 1e-9);
    }
    for (auto c : r.stats.case_counts) case_total += c;
    CHECK(case_total + 1 == db.instance_count());
    for (Eigen::Index o = 0; o < r.objects.probs.rows(); ++o)
      CHECK(r.objects.probs.row(o).sum() <= db.objects[static_cast<std::size_t>(o)].mass() + 1e-9);
  }
}

TEST_CASE("agrees with the quadratic baseline on generated data") {
  GenParams g;
  g.objects = 300;
  g.instances = 10;
  g.ud = 3;
  g.seed = 17;
  const auto db = generate(g);
  const VecXd q = VecXd::Constant(3, 5.0);
  for (Eigen::Index k : {5, 30}) {
    const auto a = psr_rank(db, q, k);
    const auto b = ylks_rank(db, q, k);
    CHECK(testing::max_diff(a, b) <= 1e-6);
    // Stop points may differ: rows one engine omits are implicit zeros, and
    // the difference above already compares them against zero.
    CHECK(a.stats.rows_emitted + a.stats.implicit_zero_rows == db.instance_count());
  }
}
