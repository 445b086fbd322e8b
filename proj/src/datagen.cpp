#include "psr/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace psr {
namespace {

class UnitSource {
 public:
  explicit UnitSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

void check(const GenParams& p) {
  if (p.objects < 1 || p.instances < 1) throw DataError("objects and instances must be >= 1");
  if (p.dims < 1) throw DataError("dims must be >= 1");
  if (!(p.space > 0.0) || !std::isfinite(p.space)) throw DataError("space must be > 0");
  if (!(p.ud >= 0.0) || !std::isfinite(p.ud)) throw DataError("ud must be >= 0");
  if (!(p.existential >= 0.0 && p.existential < 1.0)) throw DataError("existential mass must be in [0, 1)");
}

}  // namespace

UncertainDatabase generate(const GenParams& params) {
  check(params);
  UnitSource rng(params.seed);
  const double p = (1.0 - params.existential) / static_cast<double>(params.instances);
  const double half = params.ud / 2.0;

  UncertainDatabase db;
  db.dimensionality = params.dims;
  db.objects.reserve(params.objects);
  VecXd lo(params.dims), hi(params.dims);
  for (std::size_t o = 0; o < params.objects; ++o) {
    UncertainObject obj{static_cast<ObjectId>(o), {}};
    obj.instances.reserve(params.instances);
    for (int c = 0; c < params.dims; ++c) {
      const double center = rng.uniform(0.0, params.space);
      lo[c] = std::max(0.0, center - half);
      hi[c] = std::min(params.space, center + half);
    }
    for (std::size_t i = 0; i < params.instances; ++i) {
      VecXd pos(params.dims);
      for (int c = 0; c < params.dims; ++c) pos[c] = rng.uniform(lo[c], hi[c]);
      obj.instances.push_back({static_cast<InstanceId>(i), std::move(pos), p});
    }
    db.objects.push_back(std::move(obj));
  }
  return db;
}

}  // namespace psr
