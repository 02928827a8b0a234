#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace dahgnn {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;
using SparseMatrix = Eigen::SparseMatrix<double>;

using IndexList = std::vector<int>;
using IndexListPtr = std::shared_ptr<const IndexList>;

/// A softmax group (a hyperedge's member set, or a node's incident-edge set)
/// contains no entries, so no probability can be produced for it.
struct DegenerateGroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file; the message carries the path and 1-based line number.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Training produced a non-finite loss or non-finite parameters.
struct DivergedError : std::runtime_error {
  DivergedError(int epoch_, const std::string& what_)
      : std::runtime_error(what_), epoch(epoch_) {}
  int epoch;
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

inline void ensure_finite(const Matrix& m, const std::string& what) {
  if (!m.allFinite())
    throw std::runtime_error(what + ": non-finite values encountered");
}

}  // namespace dahgnn
