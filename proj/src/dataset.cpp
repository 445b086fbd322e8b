#include "psr/dataset.hpp"

#include <numeric>
#include <sstream>
#include <unordered_set>

namespace psr {

double UncertainObject::mass() const {
  return std::accumulate(instances.begin(), instances.end(), 0.0,
                         [](double acc, const VectorInstance& inst) { return acc + inst.probability; });
}

std::size_t UncertainDatabase::instance_count() const {
  std::size_t n = 0;
  for (const auto& o : objects) n += o.instances.size();
  return n;
}

std::string ValidationReport::to_string() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    const auto& v = violations[i];
    if (i) os << "; ";
    os << "object " << v.object_id;
    if (v.instance_id) os << " instance " << *v.instance_id;
    os << ": " << v.rule;
  }
  return os.str();
}

ValidationReport validate_database(const UncertainDatabase& db) {
  ValidationReport report;
  auto flag = [&](ObjectId o, std::optional<InstanceId> i, std::string rule) {
    report.violations.push_back({o, i, std::move(rule)});
  };

  if (db.dimensionality < 1) flag(0, std::nullopt, "dimensionality < 1");

  std::unordered_set<ObjectId> ids;
  for (const auto& obj : db.objects) {
    if (!ids.insert(obj.object_id).second) flag(obj.object_id, std::nullopt, "duplicate object_id");
    if (obj.instances.empty()) flag(obj.object_id, std::nullopt, "object has no instances");

    for (const auto& inst : obj.instances) {
      if (inst.position.size() != db.dimensionality)
        flag(obj.object_id, inst.instance_id, "dimension mismatch");
      if (!inst.position.allFinite()) flag(obj.object_id, inst.instance_id, "non-finite coordinate");
      if (inst.probability == 0.0)
        flag(obj.object_id, inst.instance_id, "zero-mass instance");
      else if (!(inst.probability > 0.0 && inst.probability <= 1.0 + kMassSlack))
        flag(obj.object_id, inst.instance_id, "probability outside (0, 1]");
    }
    if (obj.mass() > 1.0 + kMassSlack) flag(obj.object_id, std::nullopt, "object mass > 1");
  }
  return report;
}

void require_valid(const UncertainDatabase& db) {
  auto report = validate_database(db);
  if (!report.ok()) throw DataError("invalid database: " + report.to_string());
}

}  // namespace psr
