#pragma once

#include "psr/engine.hpp"

#include <functional>
#include <vector>

namespace psr {

/// Quadratic baseline: every instance's vector is evaluated from scratch over
/// the active object list, O(k * |seen objects|) per instance. Same output
/// contract, mass accounting and stop rule as psr_rank.
RankResult ylks_rank(const UncertainDatabase& db, BrowsingStream& stream, const RankOptions& options);
RankResult ylks_rank(const UncertainDatabase& db, const QueryPoint& q, Eigen::Index k);

inline constexpr double kMaxWorlds = 1e7;

/// One joint choice of at most one instance per object.
struct WorldOutcome {
  static constexpr int kAbsent = -1;
  /// Per object (database order): index into its instances, or kAbsent.
  std::vector<int> choice;
  double probability = 0.0;
};

/// Number of possible worlds, counting an absent branch for objects with mass < 1.
double world_count(const UncertainDatabase& db);

/// Calls `visit` once per possible world. Throws ResourceLimitExceeded before
/// enumerating anything if world_count exceeds `max_worlds`.
void for_each_world(const UncertainDatabase& db, const std::function<void(const WorldOutcome&)>& visit,
                    double max_worlds = kMaxWorlds);

/// Exhaustive ground truth. Rows follow browsing order and cover every
/// instance; each row is conditioned on its object being at that instance
/// (accumulated world mass divided by the instance probability).
RankResult possible_worlds_rank(const UncertainDatabase& db, const QueryPoint& q, Eigen::Index k,
                                double max_worlds = kMaxWorlds);

}  // namespace psr
