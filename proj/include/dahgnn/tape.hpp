#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dahgnn/types.hpp"

namespace dahgnn {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

using SparsePtr = std::shared_ptr<const SparseMatrix>;

/// Gradients of a scalar loss with respect to every parameter registered on
/// the tape, in registration order. Parameters the loss does not reach get a
/// zero gradient of matching shape.
struct Gradients {
  std::vector<Matrix> by_param;
  std::vector<std::string> names;
};

/// Record of one forward pass: an append-only sequence of primitive matrix
/// operations with eagerly computed values. `backward` walks it in reverse to
/// accumulate adjoints; `replay` recomputes every value from the leaves,
/// reproducing the forward bit-identically.
///
/// Values are immutable once a node is created. One owner appends and runs
/// backward; concurrent reads of values are safe.
class Tape {
 public:
  NodeId constant(Matrix value);
  NodeId parameter(const Matrix& value, std::string name);

  NodeId matmul(NodeId a, NodeId b);
  NodeId add(NodeId a, NodeId b);
  NodeId leaky_relu(NodeId a, double slope);
  NodeId elu(NodeId a, double alpha);
  NodeId sum(NodeId a);

  /// Row selection: out.row(t) = in.row(idx[t]). Indices may repeat.
  NodeId gather_rows(NodeId a, IndexListPtr idx);

  /// Softmax over contiguous groups of a column vector. offsets has
  /// group_count+1 entries; group g spans rows [offsets[g], offsets[g+1]).
  /// Computed with max-subtraction; an empty group throws
  /// DegenerateGroupError.
  NodeId group_softmax(NodeId a, IndexListPtr offsets);

  /// out(dst[t], :) += coeff(t) * features(src[t], :), out has out_rows rows.
  NodeId incidence_aggregate(NodeId coeff, NodeId features, IndexListPtr src,
                             IndexListPtr dst, Index out_rows);

  NodeId concat_cols(const std::vector<NodeId>& parts);

  /// value = (*sparse) * a, with the sparse factor treated as a constant.
  NodeId sparse_left_product(SparsePtr sparse, NodeId a);

  NodeId row_softmax(NodeId a);

  /// -sum_{i in labeled} sum_j Y(i,j) * ln(max(Z(i,j), 1e-12)), a 1x1 value.
  NodeId cross_entropy(NodeId z, NodeId y_onehot, IndexListPtr labeled);

  const Matrix& value(NodeId id) const { return nodes_[check(id)].value; }

  /// Reverse-mode sweep from a scalar node.
  Gradients backward(NodeId loss) const;

  /// Recomputes every non-leaf value in recorded order.
  void replay();

  std::size_t size() const { return nodes_.size(); }
  Index param_count() const { return static_cast<Index>(param_nodes_.size()); }
  NodeId param_node(Index slot) const { return param_nodes_[slot]; }

  static constexpr double kLogClamp = 1e-12;

 private:
  enum class Op : std::uint8_t {
    Constant,
    Parameter,
    MatMul,
    Add,
    LeakyRelu,
    Elu,
    Sum,
    GatherRows,
    GroupSoftmax,
    IncidenceAggregate,
    ConcatCols,
    SparseLeftProduct,
    RowSoftmax,
    CrossEntropy,
  };

  struct Node {
    Op op;
    NodeId a = kNoNode;
    NodeId b = kNoNode;
    std::vector<NodeId> parts;  // ConcatCols only
    Matrix value;
    double scalar = 0.0;  // activation slope / alpha
    IndexListPtr idx_a;   // gather index / aggregate src / labeled rows
    IndexListPtr idx_b;   // aggregate dst
    IndexListPtr offsets;
    SparsePtr sparse;
    Index out_rows = 0;
    std::string name;  // Parameter only
  };

  NodeId check(NodeId id) const;
  NodeId push(Node node);
  void eval(Node& node) const;

  std::vector<Node> nodes_;
  std::vector<NodeId> param_nodes_;
};

}  // namespace dahgnn
