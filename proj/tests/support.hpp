#pragma once

#include "psr/dataset.hpp"
#include "psr/rank_result.hpp"

#include <random>

namespace psr::testing {

// q = 0; A = {a1: x=1 p=.6, a2: x=3 p=.4}, B = {b1: x=2 p=1}.
inline UncertainDatabase e1() {
  UncertainDatabase db;
  db.dimensionality = 1;
  auto at = [](double x) { return VecXd::Constant(1, x); };
  db.objects.push_back({1, {{0, at(1), 0.6}, {1, at(3), 0.4}}});
  db.objects.push_back({2, {{0, at(2), 1.0}}});
  return db;
}

inline VecXd origin(int dims) { return VecXd::Zero(dims); }

struct SmallDbShape {
  int max_objects = 6;
  int max_instances = 3;
  int max_dims = 3;
};

// Random enumerable database. Roughly half of the draws leave existential mass.
inline UncertainDatabase random_small_db(std::mt19937_64& rng, const SmallDbShape& shape = {}) {
  std::uniform_int_distribution<int> n_objects(1, shape.max_objects);
  std::uniform_int_distribution<int> n_instances(1, shape.max_instances);
  std::uniform_int_distribution<int> n_dims(1, shape.max_dims);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);

  UncertainDatabase db;
  db.dimensionality = n_dims(rng);
  const int objects = n_objects(rng);
  for (int o = 0; o < objects; ++o) {
    UncertainObject obj;
    obj.object_id = 10 * o + 3;
    const int m = n_instances(rng);
    const double mass = unit(rng) < 0.5 ? 0.2 + 0.75 * unit(rng) : 1.0;
    std::vector<double> w(m);
    double total = 0;
    for (auto& x : w) total += (x = 0.1 + unit(rng));
    for (int i = 0; i < m; ++i) {
      VecXd pos(db.dimensionality);
      for (auto& c : pos) c = coord(rng);
      obj.instances.push_back({i, pos, mass * w[i] / total});
    }
    db.objects.push_back(std::move(obj));
  }
  return db;
}

inline VecXd random_query(std::mt19937_64& rng, int dims) {
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  VecXd q(dims);
  for (auto& c : q) c = coord(rng);
  return q;
}

inline double max_diff(const RankResult& a, const RankResult& b) {
  return std::max(max_abs_difference(a.instances, b.instances), max_abs_difference(a.objects, b.objects));
}

}  // namespace psr::testing
