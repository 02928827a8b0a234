#pragma once

#include "dahgnn/hypergraph.hpp"
#include "dahgnn/types.hpp"

namespace dahgnn {

/// Cosine similarity in [-1, 1]; defined as 0 when either vector is all-zero.
double cosine_similarity(const Eigen::Ref<const Vector>& u,
                         const Eigen::Ref<const Vector>& v);

/// Per-node density: the sum of cosine similarities to co-membership
/// neighbors that strictly exceed the threshold. Rows of `projected` are the
/// node feature vectors the similarities are measured on.
Vector node_densities(const Matrix& projected, const HyperGraph& graph,
                      double threshold);

/// Per-hyperedge density: the sum of its members' node densities.
Vector hyperedge_densities(const Vector& node_density, const HyperGraph& graph);

/// Min-max rescaling of a nonnegative density vector onto [0, U] with
/// U = max(max(attention_values), 0). All-equal densities map to all zeros.
Vector normalize_density(const Vector& density, const Matrix& attention_values);

}  // namespace dahgnn
