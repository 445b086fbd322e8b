#include "psr/browsing.hpp"

#include <algorithm>

namespace psr {

BrowsingStream build_browsing(const UncertainDatabase& db, const QueryPoint& q) {
  if (q.size() != db.dimensionality) throw DimensionMismatch();

  std::vector<RankedInstance> entries;
  entries.reserve(db.instance_count());
  for (ObjectIndex o = 0; o < db.objects.size(); ++o) {
    const auto& obj = db.objects[o];
    for (const auto& inst : obj.instances)
      entries.push_back({o, obj.object_id, inst.instance_id, inst.probability, distance(inst.position, q)});
  }
  std::sort(entries.begin(), entries.end(), browsing_before);
  return BrowsingStream(std::move(entries));
}

}  // namespace psr
