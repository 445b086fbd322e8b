#pragma once

#include "psr/dataset.hpp"

#include <optional>
#include <span>
#include <vector>

namespace psr {

/// Per-object probability mass of the instances emitted so far.
///
/// Slots are addressed by ObjectIndex, so lookup and update are O(1).
/// Objects stay in the list after their last instance has been seen.
class ActiveObjectList {
 public:
  ActiveObjectList() = default;
  explicit ActiveObjectList(const UncertainDatabase& db);

  bool contains(ObjectIndex o) const { return seen_[o]; }

  /// Seen mass, clamped to 1 against accumulated rounding.
  double seen_mass(ObjectIndex o) const { return mass_[o] < 1.0 ? mass_[o] : 1.0; }
  std::size_t remaining(ObjectIndex o) const { return remaining_[o]; }

  /// Adds an emitted instance's mass; returns the object's seen mass before the update.
  double update(ObjectIndex o, double p);

  /// Objects seen at least once and not yet exhausted.
  std::size_t active_count() const { return active_list_.size(); }
  /// Every object seen so far, in order of first appearance.
  std::span<const ObjectIndex> seen_objects() const { return order_; }
  /// Objects seen at least once and not yet exhausted, in no particular order.
  std::span<const ObjectIndex> active_objects() const { return active_list_; }

 private:
  std::vector<double> mass_;
  std::vector<std::size_t> remaining_;
  std::vector<char> seen_;
  std::vector<ObjectIndex> order_;
  std::vector<ObjectIndex> active_list_;
  std::vector<std::size_t> active_slot_;
};

/// Evaluates the rank recursion from scratch over all seen objects except
/// `exclude`: O(k * |seen|), independent of any carried state.
RankVector full_dp_recompute(const ActiveObjectList& aol, std::optional<ObjectIndex> exclude, Eigen::Index k);

/// Same as above, writing into `out` (its size is the ranking depth).
void full_dp_recompute(const ActiveObjectList& aol, std::optional<ObjectIndex> exclude, RankVector& out);

}  // namespace psr
