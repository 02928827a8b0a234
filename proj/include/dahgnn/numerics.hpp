#pragma once

#include <cstdint>

#include "dahgnn/types.hpp"

namespace dahgnn {

/// Uniform initialization on [-b, b] with b = sqrt(6 / (rows + cols)).
/// Deterministic for a fixed seed. Throws std::invalid_argument on a zero
/// dimension.
Matrix xavier_init(Index rows, Index cols, std::uint64_t rng_seed);

inline double leaky_relu(double x, double slope = 0.2) {
  return x > 0.0 ? x : slope * x;
}

/// Derivative; the kink at 0 takes the positive branch.
inline double leaky_relu_grad(double x, double slope = 0.2) {
  return x >= 0.0 ? 1.0 : slope;
}

inline double elu(double x, double alpha = 1.0) {
  return x > 0.0 ? x : alpha * (std::exp(x) - 1.0);
}

inline double elu_grad(double x, double alpha = 1.0) {
  return x >= 0.0 ? 1.0 : alpha * std::exp(x);
}

Matrix leaky_relu(const Matrix& x, double slope = 0.2);
Matrix elu(const Matrix& x, double alpha = 1.0);

enum class SoftmaxAxis { Row, Column };

/// Softmax over the unmasked entries of each row (or column), computed with
/// max-subtraction. Masked entries are exactly 0; every selected group must
/// contain at least one unmasked entry or DegenerateGroupError is thrown.
Matrix masked_softmax(const Matrix& scores, const BoolMatrix& mask,
                      SoftmaxAxis axis);

}  // namespace dahgnn
