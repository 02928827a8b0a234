#pragma once

#include "dahgnn/types.hpp"

namespace dahgnn {

/// First/second-moment accumulators, one pair per parameter, plus the shared
/// step counter. Owned exclusively by one training run.
struct AdamState {
  std::vector<Matrix> m;
  std::vector<Matrix> v;
  long step = 0;

  static AdamState zeros_like(const std::vector<Matrix*>& params);
};

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// One bias-corrected update, in place. Increments state.step by exactly 1.
/// Throws std::invalid_argument on any shape mismatch.
void adam_step(const std::vector<Matrix*>& params,
               const std::vector<Matrix>& grads, AdamState& state, double lr,
               const AdamConfig& cfg = {});

}  // namespace dahgnn
