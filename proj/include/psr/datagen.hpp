#pragma once

#include "psr/dataset.hpp"

#include <cstdint>

namespace psr {

/// Synthetic uncertain objects: uniform centers in [0, space]^dims, each
/// object's instances uniform in a cube of side `ud` around its center,
/// clipped to the space. All instances of an object share mass (1 - existential) / m.
struct GenParams {
  std::size_t objects = 1;
  std::size_t instances = 1;
  int dims = 3;
  double space = 10.0;
  double ud = 1.0;
  std::uint64_t seed = 0;
  double existential = 0.0;
};

/// Throws DataError on invalid parameters. Output is a pure function of
/// `params`; the random source is std::mt19937_64 with 53-bit mantissa
/// extraction, so it does not depend on the standard library's distributions.
UncertainDatabase generate(const GenParams& params);

}  // namespace psr
