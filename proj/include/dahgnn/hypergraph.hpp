#pragma once

#include <iosfwd>

#include "dahgnn/types.hpp"

namespace dahgnn {

/// Flattened (node, hyperedge) incidence pairs in the two traversal orders
/// the attention layers need. Edge-major pairs are grouped by hyperedge
/// (softmax over an edge's members), node-major pairs by node (softmax over
/// a node's incident edges); entries of a group are contiguous.
struct IncidencePlan {
  IndexListPtr edge_major_nodes;
  IndexListPtr edge_major_edges;
  IndexListPtr edge_major_offsets;  // edge_count + 1 entries
  IndexListPtr node_major_nodes;
  IndexListPtr node_major_edges;
  IndexListPtr node_major_offsets;  // node_count + 1 entries
  Index pair_count = 0;
};

/// Immutable sparse incidence structure: per-edge member lists, per-node edge
/// lists, degrees, co-membership neighborhoods, and the normalized
/// propagation operators. Safe for unrestricted concurrent reads.
class HyperGraph {
 public:
  /// Backdoor constructor for tests and hand-built structures; member lists
  /// are sorted and deduplicated. kNN construction goes through
  /// build_knn_hypergraph.
  static HyperGraph from_edges(Index node_count,
                               std::vector<std::vector<int>> members,
                               std::vector<int> seed_of_edge = {});

  Index node_count() const { return node_count_; }
  Index edge_count() const { return static_cast<Index>(members_.size()); }

  const std::vector<int>& members(int edge) const;
  const std::vector<int>& edges_of(int node) const;

  /// Nodes sharing at least one hyperedge with `node`, excluding it.
  const std::vector<int>& neighbors(int node) const;

  const std::vector<int>& vertex_degrees() const { return vertex_degrees_; }
  const std::vector<int>& hyperedge_degrees() const {
    return hyperedge_degrees_;
  }
  int seed_of(int edge) const;

  const IncidencePlan& plan() const { return plan_; }

  /// Dense n x m incidence, materialized on demand.
  Matrix dense_incidence() const;

  /// De^{-1/2} H^T Dv^{-1/2} — propagates node features into the convolution.
  const SparsePtr& conv_propagation() const;
  /// Dv^{-1/2} H De^{-1/2} — produces hyperedge embeddings from node features.
  const SparsePtr& edge_embed_propagation() const;

 private:
  HyperGraph() = default;
  void finalize();

  Index node_count_ = 0;
  std::vector<std::vector<int>> members_;
  std::vector<std::vector<int>> edges_of_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<int> vertex_degrees_;
  std::vector<int> hyperedge_degrees_;
  std::vector<int> seed_of_edge_;
  IncidencePlan plan_;
  SparsePtr conv_propagation_;        // empty when a degree is zero
  SparsePtr edge_embed_propagation_;  // likewise
};

using DistanceMatrix = Matrix;

/// Exact pairwise Euclidean distances; symmetric with a zero diagonal.
DistanceMatrix pairwise_euclidean(const Matrix& features);

/// One hyperedge per node: the node plus its k nearest neighbors by Euclidean
/// distance, ties broken toward the lower node index. Requires 1 <= k <= n-1.
HyperGraph build_knn_hypergraph(const Matrix& features, int k);

/// Debug text format: one `edge_id: member,member,...` line per hyperedge.
void write_incidence(const HyperGraph& graph, std::ostream& out);
std::string incidence_text(const HyperGraph& graph);

}  // namespace dahgnn
