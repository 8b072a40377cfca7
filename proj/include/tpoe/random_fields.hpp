// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "tpoe/field.hpp"

namespace tpoe {

/// Seeded generator for ensembles. Uses std::mt19937_64, whose output
/// sequence is fixed by the standard; the uniform and normal transforms are
/// implemented here so results do not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal (Box-Muller, no caching).
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// Treatment of the spatially constant modes m == 0.
enum class MeanPolicy {
  kKeep,        ///< keep m == 0 at every k
  kDropSteady,  ///< drop only (m, k) == (0, 0)
  kDropAll,     ///< drop m == 0 at every k (zero spatial mean at all times)
};

/// Which modes a random band-limited field may populate. Modes are drawn in
/// a fixed order that does not depend on the grid, so the same seed gives the
/// same continuous field on every grid that resolves the band.
struct RandomFieldSpec {
  int max_spatial_mode = 3;  ///< |m_j| <= max_spatial_mode
  int max_time_mode = 3;     ///< |k| <= max_time_mode
  bool steady = true;        ///< include k == 0
  bool periodic = true;      ///< include k != 0
  bool solenoidal = true;    ///< Helmholtz-project each vector mode
  MeanPolicy mean = MeanPolicy::kDropAll;
};

/// Real random field with the given number of components (1 or n).
SpaceTimeField random_field(const TorusDomain& domain, int components, const RandomFieldSpec& spec, Rng& rng);

}  // namespace tpoe
