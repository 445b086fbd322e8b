#pragma once

#include "psr/errors.hpp"
#include "psr/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace psr {

inline constexpr double kMassSlack = 1e-12;

struct VectorInstance {
  InstanceId instance_id = 0;
  VecXd position;
  double probability = 0.0;
};

/// An x-tuple: mutually exclusive alternatives whose masses sum to at most one.
struct UncertainObject {
  ObjectId object_id = 0;
  std::vector<VectorInstance> instances;

  double mass() const;
};

struct UncertainDatabase {
  int dimensionality = 1;
  std::vector<UncertainObject> objects;

  std::size_t instance_count() const;
};

/// Query location; must match the database dimensionality.
using QueryPoint = VecXd;

struct Violation {
  ObjectId object_id = 0;
  std::optional<InstanceId> instance_id;
  std::string rule;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

ValidationReport validate_database(const UncertainDatabase& db);

/// Throws DataError carrying the report text unless the database is valid.
void require_valid(const UncertainDatabase& db);

/// Euclidean distance. Throws DimensionMismatch on unequal lengths.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar distance(const Eigen::MatrixBase<DerivedA>& a,
                                   const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) throw DimensionMismatch();
  return (a - b).norm();
}

}  // namespace psr
