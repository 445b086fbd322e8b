#include "psr/baselines.hpp"

#include "detail/ranking_pass.hpp"

#include <algorithm>
#include <chrono>

namespace psr {

namespace {

class RecomputeStepper {
 public:
  explicit RecomputeStepper(Eigen::Index k) : v_(unit_rank_vector(k)) {}

  const RankVector& current() const { return v_; }
  void first(const RankedInstance&, const ActiveObjectList&) {}
  StepCase next(const detail::StepInput& in, const ActiveObjectList& aol, RankStats&) {
    full_dp_recompute(aol, in.y.object_index, v_);
    return detail::classify(in);
  }

 private:
  RankVector v_;
};

}  // namespace

RankResult ylks_rank(const UncertainDatabase& db, BrowsingStream& stream, const RankOptions& options) {
  RecomputeStepper stepper(options.k);
  return detail::run_ranking_pass(db, stream, options, stepper);
}

RankResult ylks_rank(const UncertainDatabase& db, const QueryPoint& q, Eigen::Index k) {
  require_valid(db);
  auto stream = build_browsing(db, q);
  return ylks_rank(db, stream, RankOptions{k});
}

namespace {
double absent_mass(const UncertainObject& o) {
  const double absent = 1.0 - o.mass();
  return absent > kMassSlack ? absent : 0.0;
}
}  // namespace

double world_count(const UncertainDatabase& db) {
  double count = 1.0;
  for (const auto& o : db.objects)
    count *= static_cast<double>(o.instances.size()) + (absent_mass(o) > 0.0 ? 1.0 : 0.0);
  return count;
}

void for_each_world(const UncertainDatabase& db, const std::function<void(const WorldOutcome&)>& visit,
                    double max_worlds) {
  const double count = world_count(db);
  if (count > max_worlds)
    throw ResourceLimitExceeded("possible-worlds enumeration needs " + std::to_string(count) +
                                " worlds, limit is " + std::to_string(max_worlds));

  const std::size_t n_obj = db.objects.size();
  // Options per object: instance indices first, then kAbsent when the object may be missing.
  std::vector<std::vector<std::pair<int, double>>> options(n_obj);
  for (std::size_t o = 0; o < n_obj; ++o) {
    const auto& obj = db.objects[o];
    for (std::size_t i = 0; i < obj.instances.size(); ++i)
      options[o].emplace_back(static_cast<int>(i), obj.instances[i].probability);
    if (double a = absent_mass(obj); a > 0.0) options[o].emplace_back(WorldOutcome::kAbsent, a);
    if (options[o].empty()) return;
  }

  std::vector<std::size_t> digit(n_obj, 0);
  WorldOutcome world;
  world.choice.resize(n_obj);
  while (true) {
    world.probability = 1.0;
    for (std::size_t o = 0; o < n_obj; ++o) {
      world.choice[o] = options[o][digit[o]].first;
      world.probability *= options[o][digit[o]].second;
    }
    visit(world);

    std::size_t o = 0;
    while (o < n_obj && ++digit[o] == options[o].size()) digit[o++] = 0;
    if (o == n_obj) break;
  }
}

RankResult possible_worlds_rank(const UncertainDatabase& db, const QueryPoint& q, Eigen::Index k,
                                double max_worlds) {
  if (k < 1) throw std::invalid_argument("ranking depth k must be >= 1");
  require_valid(db);
  const auto start = std::chrono::steady_clock::now();
  const auto stream = build_browsing(db, q);
  const auto entries = stream.entries();

  // Browsing position of every (object, instance); the browsing order is the
  // tie-broken distance order, so comparing positions ranks a world.
  std::vector<std::vector<std::size_t>> position(db.objects.size());
  for (std::size_t o = 0; o < db.objects.size(); ++o) position[o].resize(db.objects[o].instances.size());
  std::vector<std::size_t> instance_index(entries.size());
  for (std::size_t r = 0; r < entries.size(); ++r) {
    const auto& obj = db.objects[entries[r].object_index];
    const auto it = std::find_if(obj.instances.begin(), obj.instances.end(),
                                 [&](const VectorInstance& v) { return v.instance_id == entries[r].instance_id; });
    instance_index[r] = static_cast<std::size_t>(it - obj.instances.begin());
    position[entries[r].object_index][instance_index[r]] = r;
  }

  RowMatXd acc = RowMatXd::Zero(static_cast<Eigen::Index>(entries.size()), k);
  std::vector<std::size_t> present;
  present.reserve(db.objects.size());
  for_each_world(
      db,
      [&](const WorldOutcome& w) {
        present.clear();
        for (std::size_t o = 0; o < w.choice.size(); ++o)
          if (w.choice[o] != WorldOutcome::kAbsent) present.push_back(position[o][static_cast<std::size_t>(w.choice[o])]);
        std::sort(present.begin(), present.end());
        const auto depth = std::min<std::size_t>(present.size(), static_cast<std::size_t>(k));
        for (std::size_t rank = 0; rank < depth; ++rank)
          acc(static_cast<Eigen::Index>(present[rank]), static_cast<Eigen::Index>(rank)) += w.probability;
      },
      max_worlds);

  RankResult result;
  result.instances.probs.resize(acc.rows(), k);
  result.objects.probs = RowMatXd::Zero(static_cast<Eigen::Index>(db.objects.size()), k);
  for (const auto& o : db.objects) result.objects.object_ids.push_back(o.object_id);
  for (std::size_t r = 0; r < entries.size(); ++r) {
    const auto& e = entries[r];
    const auto row = static_cast<Eigen::Index>(r);
    result.instances.keys.push_back({e.object_id, e.instance_id, e.distance});
    result.objects.probs.row(static_cast<Eigen::Index>(e.object_index)) += acc.row(row);
    result.instances.probs.row(row) = acc.row(row) / e.probability;
  }

  auto& stats = result.stats;
  stats.instance_count = entries.size();
  stats.rows_emitted = entries.size();
  stats.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace psr
