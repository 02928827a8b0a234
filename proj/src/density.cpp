#include "dahgnn/density.hpp"

#include <cmath>

namespace dahgnn {

double cosine_similarity(const Eigen::Ref<const Vector>& u,
                         const Eigen::Ref<const Vector>& v) {
  require(u.size() == v.size(), "cosine_similarity: dimensions differ");
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return u.dot(v) / (nu * nv);
}

Vector node_densities(const Matrix& projected, const HyperGraph& graph,
                      double threshold) {
  const Index n = graph.node_count();
  require(projected.rows() == n,
          "node_densities: feature rows do not match node count");
  Vector norms(n);
  for (Index i = 0; i < n; ++i) norms(i) = projected.row(i).norm();

  Vector rho = Vector::Zero(n);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j : graph.neighbors(static_cast<int>(i))) {
      double sim = 0.0;
      if (norms(i) != 0.0 && norms(j) != 0.0)
        sim = projected.row(i).dot(projected.row(j)) / (norms(i) * norms(j));
      if (sim > threshold) acc += sim;
    }
    rho(i) = acc;
  }
  return rho;
}

Vector hyperedge_densities(const Vector& node_density,
                           const HyperGraph& graph) {
  require(node_density.size() == graph.node_count(),
          "hyperedge_densities: density length does not match node count");
  Vector rho = Vector::Zero(graph.edge_count());
  for (Index e = 0; e < graph.edge_count(); ++e) {
    double acc = 0.0;
    for (int i : graph.members(static_cast<int>(e))) acc += node_density(i);
    rho(e) = acc;
  }
  return rho;
}

Vector normalize_density(const Vector& density,
                         const Matrix& attention_values) {
  const double upper =
      attention_values.size() == 0
          ? 0.0
          : std::max(attention_values.maxCoeff(), 0.0);
  if (density.size() == 0) return density;
  const double lo = density.minCoeff();
  const double hi = density.maxCoeff();
  if (hi == lo || upper == 0.0) return Vector::Zero(density.size());
  return (density.array() - lo) / (hi - lo) * upper;
}

}  // namespace dahgnn
