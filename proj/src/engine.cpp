#include "psr/engine.hpp"

#include "detail/ranking_pass.hpp"
#include "psr/tracked_vector.hpp"

namespace psr {
namespace {

class IncrementalStepper {
 public:
  IncrementalStepper(Eigen::Index k, Eigen::Index guard, double tolerance)
      : k_(k), carried_(k + guard), exhausted_(k + guard), tolerance_(tolerance) {}

  const RankVector& current() const { return carried_.values(); }

  void first(const RankedInstance& x, const ActiveObjectList& aol) { fold_if_exhausted(x, aol); }

  StepCase next(const detail::StepInput& in, const ActiveObjectList& aol, RankStats& stats) {
    const StepCase c = detail::classify(in);
    switch (c) {
      case StepCase::kSameObject:
        break;
      case StepCase::kNewObject:
        carried_.round(aol.seen_mass(in.x.object_index));
        break;
      case StepCase::kSeenObject:
        if (1.0 - in.mass_before_y < kDivisorGuard) {
          recompute(in.y.object_index, aol, stats);
          break;
        }
        {
          // Without o_Y and o_X, |seen| - 2 objects remain: |seen| - 1 meaningful entries.
          const auto length = static_cast<Eigen::Index>(aol.seen_objects().size()) - 1;
          carried_.remove(in.mass_before_y, length, k_, tolerance_);
          carried_.round(aol.seen_mass(in.x.object_index));
        }
        if (carried_.max_error(k_) > tolerance_) recompute(in.y.object_index, aol, stats);
        break;
    }
    fold_if_exhausted(in.y, aol);
    return c;
  }

 private:
  /// Exhausted objects are never divided out again, so their events are
  /// accumulated once into a separate vector that the fallback starts from.
  void fold_if_exhausted(const RankedInstance& inst, const ActiveObjectList& aol) {
    if (aol.remaining(inst.object_index) == 0) exhausted_.round(aol.seen_mass(inst.object_index));
  }

  /// Rebuilds the vector from forward rounds only: O(k * |active objects|).
  void recompute(ObjectIndex exclude, const ActiveObjectList& aol, RankStats& stats) {
    ++stats.fallback_count;
    carried_ = exhausted_;
    for (ObjectIndex o : aol.active_objects())
      if (o != exclude) carried_.round(aol.seen_mass(o));
  }

  Eigen::Index k_;
  TrackedRankVector<double> carried_;
  TrackedRankVector<double> exhausted_;
  double tolerance_;
};

}  // namespace

RankResult psr_rank(const UncertainDatabase& db, BrowsingStream& stream, const RankOptions& options) {
  IncrementalStepper stepper(options.k, options.guard_entries, options.error_tolerance);
  return detail::run_ranking_pass(db, stream, options, stepper);
}

RankResult psr_rank(const UncertainDatabase& db, const QueryPoint& q, Eigen::Index k) {
  require_valid(db);
  auto stream = build_browsing(db, q);
  return psr_rank(db, stream, RankOptions{k});
}

}  // namespace psr
