#pragma once

#include "psr/browsing.hpp"
#include "psr/dataset.hpp"
#include "psr/rank_result.hpp"
#include "psr/rank_vector.hpp"

namespace psr {

struct RankOptions {
  Eigen::Index k = 1;
  /// Stop before an instance whose predecessor's vector is exactly zero;
  /// later instances then have all-zero rows and are omitted. Benchmarks
  /// switch this off to time complete passes.
  bool stop_on_zero = true;
  /// A step whose running error estimate exceeds this is recomputed exactly.
  double error_tolerance = 1e-10;
  /// Extra entries carried past k. Removal of a likely event runs downward
  /// from the top of this margin, which damps its unknown starting value.
  Eigen::Index guard_entries = 64;
};

/// Incremental rank probabilities in a single pass with O(k) work per instance.
///
/// Consecutive instances x, y of the stream fall into one of three cases:
/// same object (vector carried over), y's object unseen (one forward round
/// with x's object's seen mass), or y's object already seen (its previous
/// contribution is divided out first, then x's object is folded in).
///
/// The vector carries a running rounding-error estimate. A step is recomputed
/// from the active object list, O(k * |active|), when the divisor 1 - P_x(o_y)
/// falls below kDivisorGuard or the estimate exceeds options.error_tolerance.
///
/// Consumes `stream` from its current position.
RankResult psr_rank(const UncertainDatabase& db, BrowsingStream& stream, const RankOptions& options);

/// Validates, builds the browsing stream and ranks with default options.
RankResult psr_rank(const UncertainDatabase& db, const QueryPoint& q, Eigen::Index k);

}  // namespace psr
