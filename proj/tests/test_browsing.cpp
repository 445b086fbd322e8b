#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psr/browsing.hpp"
#include "support.hpp"

#include <algorithm>
#include <set>

using namespace psr;

TEST_CASE("E1 browses a1, b1, a2") {
  auto s = build_browsing(testing::e1(), testing::origin(1));
  REQUIRE(s.size() == 3);
  const auto e = s.entries();
  CHECK((e[0].object_id == 1 && e[0].instance_id == 0 && e[0].distance == 1.0));
  CHECK((e[1].object_id == 2 && e[1].instance_id == 0 && e[1].distance == 2.0));
  CHECK((e[2].object_id == 1 && e[2].instance_id == 1 && e[2].distance == 3.0));

  s.next();
  s.next();
  const auto third = s.next();
  REQUIRE(third);
  CHECK(third->object_id == 1);
  CHECK(third->instance_id == 1);
  CHECK(s.exhausted());
  CHECK_FALSE(s.next());
}

TEST_CASE("equal distances break ties by object id") {
  UncertainDatabase db;
  db.dimensionality = 1;
  db.objects.push_back({5, {{0, VecXd::Constant(1, 1.0), 1.0}}});
  db.objects.push_back({2, {{0, VecXd::Constant(1, -1.0), 1.0}}});
  const auto s = build_browsing(db, testing::origin(1));
  CHECK(s.entries()[0].object_id == 2);
  CHECK(s.entries()[0].object_index == 1);
  CHECK(s.entries()[1].object_id == 5);
}

TEST_CASE("empty database gives an empty stream") {
  UncertainDatabase db;
  auto s = build_browsing(db, testing::origin(1));
  CHECK(s.size() == 0);
  CHECK(s.exhausted());
  CHECK_FALSE(s.next());
}

TEST_CASE("single instance stream") {
  UncertainDatabase db;
  db.objects.push_back({1, {{0, VecXd::Constant(1, 4.0), 1.0}}});
  auto s = build_browsing(db, testing::origin(1));
  const auto first = s.next();
  REQUIRE(first);
  CHECK(first->distance == 4.0);
  CHECK_FALSE(s.next());
  s.rewind();
  CHECK(s.position() == 0);
  CHECK(s.next());
}

TEST_CASE("query dimension must match") {
  CHECK_THROWS_AS(build_browsing(testing::e1(), testing::origin(2)), DimensionMismatch);
}

TEST_CASE("browsing properties on random databases") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    const auto db = testing::random_small_db(rng);
    const auto q = testing::random_query(rng, db.dimensionality);
    const auto s = build_browsing(db, q);

    std::multiset<std::pair<ObjectId, InstanceId>> expected, emitted;
    for (const auto& o : db.objects)
      for (const auto& i : o.instances) expected.insert({o.object_id, i.instance_id});
    for (const auto& r : s.entries()) emitted.insert({r.object_id, r.instance_id});
    CHECK(emitted == expected);

    const auto e = s.entries();
    CHECK(std::is_sorted(e.begin(), e.end(), browsing_before));
    for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i - 1].distance <= e[i].distance);
    for (const auto& r : e) {
      const auto& inst = db.objects[r.object_index].instances[static_cast<std::size_t>(r.instance_id)];
      CHECK(r.distance == distance(inst.position, q));
      CHECK(r.probability == inst.probability);
    }

    const auto again = build_browsing(db, q);
    CHECK(std::equal(e.begin(), e.end(), again.entries().begin(), again.entries().end(),
                     [](const RankedInstance& a, const RankedInstance& b) {
                       return a.object_id == b.object_id && a.instance_id == b.instance_id &&
                              a.distance == b.distance;
                     }));
  }
}
