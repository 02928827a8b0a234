#pragma once

#include <array>
#include <functional>

#include "dahgnn/hypergraph.hpp"
#include "dahgnn/tape.hpp"
#include "dahgnn/types.hpp"

namespace dahgnn {

struct HGConvParams {
  Matrix theta;  // d0 x d, trainable
};

/// One attention head: a projection plus the two score vectors used for the
/// vertex-side and edge-side aggregations. The score vectors are twice the
/// projection's output width (they act on a concatenated pair).
struct DaAttentionHead {
  Matrix w;        // d_in x d'
  Matrix alpha_x;  // 2d' x 1
  Matrix alpha_e;  // 2d' x 1
};

struct DaHgnnParams {
  HGConvParams conv;
  std::vector<DaAttentionHead> layer1;
  DaAttentionHead layer2;  // output width = class count

  static DaHgnnParams xavier(Index input_dim, Index hidden_dim, Index attn_dim,
                             int heads, Index classes, std::uint64_t seed);

  /// Fixed enumeration order: conv, layer-1 heads, layer 2. Checkpoints,
  /// tape registration, gradient slots and Adam state all share it.
  void for_each(const std::function<void(const std::string&, Matrix&)>& fn);
  void for_each(
      const std::function<void(const std::string&, const Matrix&)>& fn) const;
  std::vector<Matrix*> tensors();

  Index input_dim() const { return conv.theta.rows(); }
  Index hidden_dim() const { return conv.theta.cols(); }
  Index attn_dim() const { return layer1.front().w.cols(); }
  Index class_count() const { return layer2.w.cols(); }
  void validate() const;
};

/// Frozen normalized densities for one forward pass, one slot per attention
/// head in model order (layer-1 heads, then layer 2). Captured for the
/// stop-gradient finite-difference harness and re-injected to evaluate the
/// loss with the density term held constant.
struct DensityCapture {
  struct HeadDensities {
    Vector node;  // rho-tilde per node
    Vector edge;  // rho-tilde per hyperedge
  };
  std::vector<HeadDensities> heads;
};

struct ForwardOptions {
  double delta = 0.4;
  bool density_enabled = true;
  double leaky_slope = 0.2;
  double elu_alpha = 1.0;
  const DensityCapture* frozen = nullptr;  // use these rho-tilde values
  DensityCapture* capture = nullptr;       // record the values used
};

/// X = De^{-1/2} H^T Dv^{-1/2} X0 Theta. Requires a square incidence
/// (node count == hyperedge count).
NodeId hgconv_forward(Tape& tape, NodeId x0, const HyperGraph& graph,
                      NodeId theta);

/// E = Dv^{-1/2} H De^{-1/2} X. Requires a square incidence.
NodeId hyperedge_embed(Tape& tape, NodeId x, const HyperGraph& graph);

/// Attention scores for every incident pair, flattened in the plan's order:
/// LeakyReLU(alpha^T [left.row(first) || right.row(second)]).
NodeId incident_attention_scores(Tape& tape, NodeId left, NodeId right,
                                 NodeId alpha, IndexListPtr left_rows,
                                 IndexListPtr right_rows, double leaky_slope);

struct Aggregation {
  NodeId scores;        // pair_count x 1, post-LeakyReLU
  NodeId coefficients;  // pair_count x 1, softmax per group
  NodeId output;        // aggregated features after ELU
};

/// Node -> hyperedge half: per incident pair score from (projected node,
/// projected edge), node-density bias, softmax over each edge's members,
/// then E~ = ELU(COE_X^T WX).
Aggregation vertex_aggregation(Tape& tape, NodeId wx, NodeId we, NodeId alpha_x,
                               const Vector& node_density_tilde,
                               const HyperGraph& graph,
                               const ForwardOptions& opts = {});

/// Hyperedge -> node half: pair score from (aggregated edge, projected node),
/// edge-density bias, softmax over each node's incident edges, then
/// X~ = ELU(COE_E^T E~).
Aggregation hyperedge_aggregation(Tape& tape, NodeId wx, NodeId e_tilde,
                                  NodeId alpha_e,
                                  const Vector& edge_density_tilde,
                                  const HyperGraph& graph,
                                  const ForwardOptions& opts = {});

/// One full density-aware attention layer; `capture_slot` selects the
/// DensityCapture entry when freezing/recording is requested.
NodeId da_layer_forward(Tape& tape, NodeId x, NodeId e, const HyperGraph& graph,
                        NodeId w, NodeId alpha_x, NodeId alpha_e,
                        const ForwardOptions& opts, int capture_slot);

/// Column concatenation of the per-head layer outputs, head order fixed.
NodeId multi_head_forward(Tape& tape, NodeId x, NodeId e,
                          const HyperGraph& graph,
                          const std::vector<std::array<NodeId, 3>>& heads,
                          const ForwardOptions& opts, int capture_slot0 = 0);

struct ModelForward {
  NodeId z;                       // n x c, row-stochastic
  NodeId logits;                  // n x c, final embedding before softmax
  std::vector<NodeId> param_ids;  // tape slots in for_each order
};

/// Full model: convolution, hyperedge embedding, multi-head attention layer,
/// re-embedding of its output, single-head attention layer, row softmax.
/// Registers every parameter on the tape in for_each order.
ModelForward model_forward(Tape& tape, const Matrix& x0,
                           const HyperGraph& graph, const DaHgnnParams& params,
                           const ForwardOptions& opts = {});

/// Dense n x m materialization of vertex-aggregation coefficients
/// (edge-major pair order); non-incident entries are 0.
Matrix dense_vertex_coefficients(const HyperGraph& graph,
                                 const Matrix& coefficients);
/// Dense m x n materialization of hyperedge-aggregation coefficients
/// (node-major pair order).
Matrix dense_hyperedge_coefficients(const HyperGraph& graph,
                                    const Matrix& coefficients);

}  // namespace dahgnn
