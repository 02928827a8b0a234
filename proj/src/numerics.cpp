#include "dahgnn/numerics.hpp"

#include <cmath>

#include "dahgnn/rng.hpp"

namespace dahgnn {

Matrix xavier_init(Index rows, Index cols, std::uint64_t rng_seed) {
  require(rows >= 1 && cols >= 1, "xavier_init: dimensions must be >= 1");
  const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Rng rng(rng_seed);
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      out(i, j) = rng.uniform(-bound, bound);
  return out;
}

Matrix leaky_relu(const Matrix& x, double slope) {
  return x.unaryExpr([slope](double v) { return leaky_relu(v, slope); });
}

Matrix elu(const Matrix& x, double alpha) {
  return x.unaryExpr([alpha](double v) { return elu(v, alpha); });
}

namespace {

// Softmax over one contiguous logical group given by (start, stride, count).
void group_softmax_strided(const Matrix& scores, const BoolMatrix& mask,
                           Matrix& out, Index row0, Index col0, Index drow,
                           Index dcol, Index count, const char* axis_name,
                           Index group_index) {
  double max_score = -std::numeric_limits<double>::infinity();
  Index unmasked = 0;
  for (Index t = 0; t < count; ++t) {
    const Index r = row0 + t * drow, c = col0 + t * dcol;
    if (mask(r, c)) {
      ++unmasked;
      max_score = std::max(max_score, scores(r, c));
    }
  }
  if (unmasked == 0)
    throw DegenerateGroupError(std::string("masked_softmax: fully masked ") +
                               axis_name + " " + std::to_string(group_index));
  double sum = 0.0;
  for (Index t = 0; t < count; ++t) {
    const Index r = row0 + t * drow, c = col0 + t * dcol;
    if (mask(r, c)) {
      const double e = std::exp(scores(r, c) - max_score);
      out(r, c) = e;
      sum += e;
    }
  }
  for (Index t = 0; t < count; ++t) {
    const Index r = row0 + t * drow, c = col0 + t * dcol;
    if (mask(r, c)) out(r, c) /= sum;
  }
}

}  // namespace

Matrix masked_softmax(const Matrix& scores, const BoolMatrix& mask,
                      SoftmaxAxis axis) {
  require(scores.rows() == mask.rows() && scores.cols() == mask.cols(),
          "masked_softmax: scores and mask shapes differ");
  Matrix out = Matrix::Zero(scores.rows(), scores.cols());
  if (axis == SoftmaxAxis::Row) {
    for (Index i = 0; i < scores.rows(); ++i)
      group_softmax_strided(scores, mask, out, i, 0, 0, 1, scores.cols(),
                            "row", i);
  } else {
    for (Index j = 0; j < scores.cols(); ++j)
      group_softmax_strided(scores, mask, out, 0, j, 1, 0, scores.rows(),
                            "column", j);
  }
  return out;
}

}  // namespace dahgnn
