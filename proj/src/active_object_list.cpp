#include "psr/active_object_list.hpp"

#include "psr/rank_vector.hpp"

namespace psr {

ActiveObjectList::ActiveObjectList(const UncertainDatabase& db)
    : mass_(db.objects.size(), 0.0),
      remaining_(db.objects.size()),
      seen_(db.objects.size(), 0),
      active_slot_(db.objects.size(), 0) {
  for (ObjectIndex o = 0; o < db.objects.size(); ++o) remaining_[o] = db.objects[o].instances.size();
  order_.reserve(db.objects.size());
}

double ActiveObjectList::update(ObjectIndex o, double p) {
  const double before = seen_mass(o);
  if (!seen_[o]) {
    seen_[o] = 1;
    order_.push_back(o);
    if (remaining_[o] > 0) {
      active_slot_[o] = active_list_.size();
      active_list_.push_back(o);
    }
  }
  mass_[o] += p;
  if (remaining_[o] > 0 && --remaining_[o] == 0) {
    const ObjectIndex last = active_list_.back();
    active_list_[active_slot_[o]] = last;
    active_slot_[last] = active_slot_[o];
    active_list_.pop_back();
  }
  return before;
}

void full_dp_recompute(const ActiveObjectList& aol, std::optional<ObjectIndex> exclude, RankVector& out) {
  out.setZero();
  if (out.size() == 0) return;
  out[0] = 1.0;
  for (ObjectIndex o : aol.seen_objects()) {
    if (exclude && o == *exclude) continue;
    dynamic_round_in_place(out, aol.seen_mass(o));
  }
}

RankVector full_dp_recompute(const ActiveObjectList& aol, std::optional<ObjectIndex> exclude, Eigen::Index k) {
  RankVector v(k);
  full_dp_recompute(aol, exclude, v);
  return v;
}

}  // namespace psr
