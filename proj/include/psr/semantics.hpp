#pragma once

#include "psr/rank_result.hpp"

#include <string>
#include <vector>

namespace psr {

enum class RankLevel { kInstance, kObject };

/// Entries (instances or objects) with their rank probabilities; column i is rank i+1.
struct RankTable {
  RankLevel level = RankLevel::kObject;
  /// Instance level: row index in the instance matrix. Object level: object_id.
  std::vector<std::int64_t> ids;
  RowMatXd probs;

  Eigen::Index entries() const { return probs.rows(); }
  Eigen::Index depth() const { return probs.cols(); }
};

RankTable instance_table(const InstanceRankMatrix& m);
RankTable object_table(const ObjectRankDistribution& d);

enum class SemanticsMethod { kUkRanks, kPtK, kGlobalTopK, kExpectedRank };

std::string to_string(SemanticsMethod m);
std::string to_string(RankLevel l);
SemanticsMethod parse_semantics_method(const std::string& s);
RankLevel parse_rank_level(const std::string& s);

struct SemanticsResult {
  SemanticsMethod method = SemanticsMethod::kUkRanks;
  RankLevel level = RankLevel::kObject;
  std::vector<std::int64_t> ranking;
  std::vector<double> scores;
  /// U-kRanks: ranks whose column has no positive probability.
  std::vector<bool> unsupported;
  /// Global top-k: fewer than k entries were available.
  bool short_result = false;

  bool operator==(const SemanticsResult&) const = default;
};

// All ties go to the smaller entry id.

/// Probabilities closer than this count as equal, so that ties which are exact
/// in real arithmetic resolve the same way whichever engine produced the table.
/// Ties go to the smaller id.
inline constexpr double kTieTolerance = 1e-12;

/// Most probable entry for each rank 1..k; an entry may win several ranks.
SemanticsResult u_k_ranks(const RankTable& table, Eigen::Index k, double tie_tolerance = kTieTolerance);

/// Entries whose probability of rank k or better strictly exceeds `threshold`
/// (by more than the tie tolerance).
SemanticsResult pt_k(const RankTable& table, Eigen::Index k, double threshold,
                     double tie_tolerance = kTieTolerance);

/// The k entries with the highest probability of rank k or better.
SemanticsResult global_top_k(const RankTable& table, Eigen::Index k, double tie_tolerance = kTieTolerance);

/// Ascending sum_i i * P(rank i) / sum_i P(rank i); +inf for entries without
/// mass above the tie tolerance.
/// Expects a full-depth table (depth = number of objects).
SemanticsResult expected_rank(const RankTable& table, double tie_tolerance = kTieTolerance);

/// `{"method":..., "level":..., "ranking":[...], "scores":[...]}`
std::string to_json(const SemanticsResult& r);

}  // namespace psr
