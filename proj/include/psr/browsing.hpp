#pragma once

#include "psr/dataset.hpp"

#include <optional>
#include <span>
#include <vector>

namespace psr {

/// One instance as seen by the ranking pass.
struct RankedInstance {
  ObjectIndex object_index = 0;  // position in UncertainDatabase::objects
  ObjectId object_id = 0;
  InstanceId instance_id = 0;
  double probability = 0.0;
  double distance = 0.0;
};

/// Strict weak order used everywhere instances are ranked: distance, then ids.
inline bool browsing_before(const RankedInstance& a, const RankedInstance& b) {
  if (a.distance != b.distance) return a.distance < b.distance;
  if (a.object_id != b.object_id) return a.object_id < b.object_id;
  return a.instance_id < b.instance_id;
}

/// All instances of a database in ascending distance from a query point.
///
/// Realized by presorting; ties are broken by (object_id, instance_id) so
/// two builds over the same input always emit the same sequence.
class BrowsingStream {
 public:
  BrowsingStream() = default;
  explicit BrowsingStream(std::vector<RankedInstance> sorted) : entries_(std::move(sorted)) {}

  std::optional<RankedInstance> next() {
    if (cursor_ >= entries_.size()) return std::nullopt;
    return entries_[cursor_++];
  }

  void rewind() { cursor_ = 0; }
  std::size_t size() const { return entries_.size(); }
  std::size_t position() const { return cursor_; }
  bool exhausted() const { return cursor_ >= entries_.size(); }
  std::span<const RankedInstance> entries() const { return entries_; }

 private:
  std::vector<RankedInstance> entries_;
  std::size_t cursor_ = 0;
};

/// Throws DimensionMismatch if the query does not match the database.
BrowsingStream build_browsing(const UncertainDatabase& db, const QueryPoint& q);

}  // namespace psr
