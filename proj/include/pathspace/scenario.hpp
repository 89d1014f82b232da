#pragma once

#include <cstdint>

#include "pathspace/constants.hpp"
#include "pathspace/damped.hpp"
#include "pathspace/geometry.hpp"
#include "pathspace/sampler.hpp"

namespace pathspace {

// everything a Monte Carlo verification run needs besides the functional
struct ScenarioConfig {
  ManifoldModel model;
  Vec x0;
  PathGrid grid;
  uint64_t n_paths = 0;
  uint64_t base_seed = 0;
  CurvatureBounds bounds;
  bool factor2 = true;          // ship the provable factor-2 entropy bound
  double rhs_multiplier = 1.0;  // < 1 turns the run into a forced-failure self-test
  ProjectionVariant q_projection = ProjectionVariant::EveryEvent;
  bool parallel = true;

  SamplerConfig sampler() const { return SamplerConfig{grid, base_seed}; }
};

}  // namespace pathspace
