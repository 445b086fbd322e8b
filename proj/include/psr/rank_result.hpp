#pragma once

#include "psr/types.hpp"

#include <array>
#include <optional>
#include <vector>

namespace psr {

struct InstanceKey {
  ObjectId object_id = 0;
  InstanceId instance_id = 0;
  double distance = 0.0;
};

/// One row per processed instance, in browsing order. Row r holds the
/// probability that exactly i other objects precede the instance, not yet
/// weighted by the instance's own probability.
struct InstanceRankMatrix {
  std::vector<InstanceKey> keys;
  RowMatXd probs;

  Eigen::Index rows() const { return probs.rows(); }
  Eigen::Index k() const { return probs.cols(); }
};

/// Row o (database order) holds P(object at rank i+1), i = 0..k-1.
struct ObjectRankDistribution {
  std::vector<ObjectId> object_ids;
  RowMatXd probs;

  Eigen::Index k() const { return probs.cols(); }
};

enum class StepCase { kSameObject = 0, kNewObject = 1, kSeenObject = 2 };

struct RankStats {
  std::size_t instance_count = 0;
  std::size_t rows_emitted = 0;
  /// Browsing position at which the pass stopped because the carried vector was zero.
  std::optional<std::size_t> early_stop_row;
  std::size_t implicit_zero_rows = 0;
  std::array<std::size_t, 3> case_counts{};
  std::size_t fallback_count = 0;
  /// Mean number of active objects over the processed instances.
  double avg_aol_size = 0.0;
  double elapsed_ms = 0.0;
};

struct RankResult {
  InstanceRankMatrix instances;
  ObjectRankDistribution objects;
  RankStats stats;
};

/// Max elementwise difference with rows aligned by (object_id, instance_id).
/// A row present on one side only is compared against zeros.
double max_abs_difference(const InstanceRankMatrix& a, const InstanceRankMatrix& b);
double max_abs_difference(const ObjectRankDistribution& a, const ObjectRankDistribution& b);

}  // namespace psr
