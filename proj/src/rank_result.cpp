#include "psr/rank_result.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace psr {

double max_abs_difference(const InstanceRankMatrix& a, const InstanceRankMatrix& b) {
  if (a.k() != b.k()) throw std::invalid_argument("max_abs_difference: k differs");
  std::map<std::pair<ObjectId, InstanceId>, Eigen::Index> rows_b;
  for (std::size_t r = 0; r < b.keys.size(); ++r)
    rows_b.emplace(std::pair{b.keys[r].object_id, b.keys[r].instance_id}, static_cast<Eigen::Index>(r));

  double worst = 0.0;
  for (std::size_t r = 0; r < a.keys.size(); ++r) {
    const auto ra = static_cast<Eigen::Index>(r);
    auto it = rows_b.find({a.keys[r].object_id, a.keys[r].instance_id});
    if (it == rows_b.end()) {
      worst = std::max(worst, a.probs.row(ra).cwiseAbs().maxCoeff());
      continue;
    }
    worst = std::max(worst, (a.probs.row(ra) - b.probs.row(it->second)).cwiseAbs().maxCoeff());
    rows_b.erase(it);
  }
  for (const auto& [key, rb] : rows_b) worst = std::max(worst, b.probs.row(rb).cwiseAbs().maxCoeff());
  return worst;
}

double max_abs_difference(const ObjectRankDistribution& a, const ObjectRankDistribution& b) {
  if (a.k() != b.k() || a.object_ids != b.object_ids)
    throw std::invalid_argument("max_abs_difference: distributions are not aligned");
  if (a.probs.size() == 0) return 0.0;
  return (a.probs - b.probs).cwiseAbs().maxCoeff();
}

}  // namespace psr
