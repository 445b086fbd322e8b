#pragma once

// Shared streaming skeleton of the incremental engine and the quadratic
// baseline: they differ only in how the next instance's vector is derived.

#include "psr/active_object_list.hpp"
#include "psr/browsing.hpp"
#include "psr/engine.hpp"

#include <chrono>
#include <stdexcept>

namespace psr::detail {

/// What a stepper sees when instance y follows instance x. The active object
/// list already contains y.
struct StepInput {
  const RankedInstance& x;
  const RankedInstance& y;
  bool y_object_seen_before;
  /// Seen mass of y's object excluding y itself.
  double mass_before_y;
};

inline StepCase classify(const StepInput& in) {
  if (in.x.object_index == in.y.object_index) return StepCase::kSameObject;
  return in.y_object_seen_before ? StepCase::kSeenObject : StepCase::kNewObject;
}

// Stepper concept:
//   void first(const RankedInstance&, const ActiveObjectList&);
//   StepCase next(const StepInput&, const ActiveObjectList&, RankStats&);
//   const RankVector& current() const;
template <typename Stepper>
RankResult run_ranking_pass(const UncertainDatabase& db, BrowsingStream& stream, const RankOptions& options,
                            Stepper& stepper) {
  if (options.k < 1) throw std::invalid_argument("ranking depth k must be >= 1");
  const Eigen::Index k = options.k;
  const auto start = std::chrono::steady_clock::now();

  RankResult result;
  auto& rows = result.instances;
  auto& objects = result.objects;
  auto& stats = result.stats;

  stats.instance_count = stream.size() - stream.position();
  rows.keys.reserve(stats.instance_count);
  rows.probs.resize(static_cast<Eigen::Index>(stats.instance_count), k);
  objects.object_ids.reserve(db.objects.size());
  for (const auto& o : db.objects) objects.object_ids.push_back(o.object_id);
  objects.probs = RowMatXd::Zero(static_cast<Eigen::Index>(db.objects.size()), k);

  ActiveObjectList aol(db);
  double aol_total = 0.0;

  auto emit = [&](const RankedInstance& inst) {
    const auto r = static_cast<Eigen::Index>(rows.keys.size());
    const auto v = stepper.current().head(k).matrix().transpose();
    rows.keys.push_back({inst.object_id, inst.instance_id, inst.distance});
    rows.probs.row(r) = v;
    objects.probs.row(static_cast<Eigen::Index>(inst.object_index)) += inst.probability * v;
    aol_total += static_cast<double>(aol.active_count());
  };

  auto first = stream.next();
  if (first) {
    RankedInstance x = *first;
    aol.update(x.object_index, x.probability);
    stepper.first(x, aol);
    emit(x);

    while (true) {
      if (options.stop_on_zero && (stepper.current().head(k) == 0.0).all()) {
        if (!stream.exhausted()) stats.early_stop_row = stream.position();
        break;
      }
      auto next = stream.next();
      if (!next) break;
      const RankedInstance& y = *next;

      const bool seen_before = aol.contains(y.object_index);
      const double mass_before_y = aol.update(y.object_index, y.probability);
      const StepCase c = stepper.next(StepInput{x, y, seen_before, mass_before_y}, aol, stats);
      ++stats.case_counts[static_cast<std::size_t>(c)];
      emit(y);
      x = y;
    }
  }

  stats.rows_emitted = rows.keys.size();
  stats.implicit_zero_rows = stats.instance_count - stats.rows_emitted;
  if (stats.implicit_zero_rows > 0) rows.probs.conservativeResize(static_cast<Eigen::Index>(stats.rows_emitted), k);
  if (stats.rows_emitted > 0) stats.avg_aol_size = aol_total / static_cast<double>(stats.rows_emitted);
  stats.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace psr::detail
