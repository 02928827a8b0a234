#include "dahgnn/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

namespace dahgnn {

HyperGraph HyperGraph::from_edges(Index node_count,
                                  std::vector<std::vector<int>> members,
                                  std::vector<int> seed_of_edge) {
  require(node_count >= 1, "hypergraph: node count must be >= 1");
  for (auto& m : members) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    for (int i : m)
      require(i >= 0 && i < node_count, "hypergraph: member index out of range");
  }
  require(seed_of_edge.empty() || seed_of_edge.size() == members.size(),
          "hypergraph: seed list size mismatch");
  HyperGraph g;
  g.node_count_ = node_count;
  g.members_ = std::move(members);
  g.seed_of_edge_ = seed_of_edge.empty()
                        ? std::vector<int>(g.members_.size(), -1)
                        : std::move(seed_of_edge);
  g.finalize();
  return g;
}

void HyperGraph::finalize() {
  const Index n = node_count_;
  const Index m = edge_count();

  edges_of_.assign(n, {});
  hyperedge_degrees_.resize(m);
  for (Index e = 0; e < m; ++e) {
    hyperedge_degrees_[e] = static_cast<int>(members_[e].size());
    for (int i : members_[e]) edges_of_[i].push_back(static_cast<int>(e));
  }
  vertex_degrees_.resize(n);
  for (Index i = 0; i < n; ++i)
    vertex_degrees_[i] = static_cast<int>(edges_of_[i].size());

  // Co-membership neighborhoods.
  neighbors_.assign(n, {});
  for (Index i = 0; i < n; ++i) {
    auto& nb = neighbors_[i];
    for (int e : edges_of_[i])
      for (int j : members_[e])
        if (j != i) nb.push_back(j);
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  // Incidence pair lists in both traversal orders.
  auto em_nodes = std::make_shared<IndexList>();
  auto em_edges = std::make_shared<IndexList>();
  auto em_off = std::make_shared<IndexList>();
  em_off->reserve(m + 1);
  em_off->push_back(0);
  for (Index e = 0; e < m; ++e) {
    for (int i : members_[e]) {
      em_nodes->push_back(i);
      em_edges->push_back(static_cast<int>(e));
    }
    em_off->push_back(static_cast<int>(em_nodes->size()));
  }
  auto nm_nodes = std::make_shared<IndexList>();
  auto nm_edges = std::make_shared<IndexList>();
  auto nm_off = std::make_shared<IndexList>();
  nm_off->reserve(n + 1);
  nm_off->push_back(0);
  for (Index i = 0; i < n; ++i) {
    for (int e : edges_of_[i]) {
      nm_nodes->push_back(static_cast<int>(i));
      nm_edges->push_back(e);
    }
    nm_off->push_back(static_cast<int>(nm_nodes->size()));
  }
  plan_.pair_count = static_cast<Index>(em_nodes->size());
  plan_.edge_major_nodes = std::move(em_nodes);
  plan_.edge_major_edges = std::move(em_edges);
  plan_.edge_major_offsets = std::move(em_off);
  plan_.node_major_nodes = std::move(nm_nodes);
  plan_.node_major_edges = std::move(nm_edges);
  plan_.node_major_offsets = std::move(nm_off);

  // Normalized propagation operators; left undefined if any degree is zero.
  const bool degrees_ok =
      std::all_of(vertex_degrees_.begin(), vertex_degrees_.end(),
                  [](int d) { return d > 0; }) &&
      std::all_of(hyperedge_degrees_.begin(), hyperedge_degrees_.end(),
                  [](int d) { return d > 0; });
  if (degrees_ok) {
    std::vector<double> dv_inv(n), de_inv(m);
    for (Index i = 0; i < n; ++i)
      dv_inv[i] = 1.0 / std::sqrt(static_cast<double>(vertex_degrees_[i]));
    for (Index e = 0; e < m; ++e)
      de_inv[e] = 1.0 / std::sqrt(static_cast<double>(hyperedge_degrees_[e]));

    std::vector<Eigen::Triplet<double>> conv, embed;
    conv.reserve(plan_.pair_count);
    embed.reserve(plan_.pair_count);
    for (Index e = 0; e < m; ++e) {
      for (int i : members_[e]) {
        conv.emplace_back(static_cast<int>(e), i, de_inv[e] * dv_inv[i]);
        embed.emplace_back(i, static_cast<int>(e), dv_inv[i] * de_inv[e]);
      }
    }
    auto cp = std::make_shared<SparseMatrix>(m, n);
    cp->setFromTriplets(conv.begin(), conv.end());
    cp->makeCompressed();
    auto ep = std::make_shared<SparseMatrix>(n, m);
    ep->setFromTriplets(embed.begin(), embed.end());
    ep->makeCompressed();
    conv_propagation_ = std::move(cp);
    edge_embed_propagation_ = std::move(ep);
  }
}

const std::vector<int>& HyperGraph::members(int edge) const {
  if (edge < 0 || edge >= edge_count())
    throw std::out_of_range("hypergraph: edge index out of range");
  return members_[edge];
}

const std::vector<int>& HyperGraph::edges_of(int node) const {
  if (node < 0 || node >= node_count())
    throw std::out_of_range("hypergraph: node index out of range");
  return edges_of_[node];
}

const std::vector<int>& HyperGraph::neighbors(int node) const {
  if (node < 0 || node >= node_count())
    throw std::out_of_range("hypergraph: node index out of range");
  return neighbors_[node];
}

int HyperGraph::seed_of(int edge) const {
  if (edge < 0 || edge >= edge_count())
    throw std::out_of_range("hypergraph: edge index out of range");
  return seed_of_edge_[edge];
}

Matrix HyperGraph::dense_incidence() const {
  Matrix h = Matrix::Zero(node_count_, edge_count());
  for (Index e = 0; e < edge_count(); ++e)
    for (int i : members_[e]) h(i, e) = 1.0;
  return h;
}

const SparsePtr& HyperGraph::conv_propagation() const {
  require(conv_propagation_ != nullptr,
          "hypergraph: propagation undefined (a degree is zero)");
  return conv_propagation_;
}

const SparsePtr& HyperGraph::edge_embed_propagation() const {
  require(edge_embed_propagation_ != nullptr,
          "hypergraph: propagation undefined (a degree is zero)");
  return edge_embed_propagation_;
}

DistanceMatrix pairwise_euclidean(const Matrix& features) {
  const Index n = features.rows();
  require(n >= 2, "pairwise_euclidean: needs at least two rows");
  Matrix d = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double dist = (features.row(i) - features.row(j)).norm();
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  return d;
}

HyperGraph build_knn_hypergraph(const Matrix& features, int k) {
  const Index n = features.rows();
  require(n >= 2, "build_knn_hypergraph: needs at least two nodes");
  require(k >= 1 && k <= n - 1,
          "build_knn_hypergraph: k must satisfy 1 <= k <= n-1, got " +
              std::to_string(k));

  std::vector<std::vector<int>> members(n);
  std::vector<int> seeds(n);

#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    // Squared distances rank identically to distances.
    std::vector<std::pair<double, int>> cand;
    cand.reserve(n - 1);
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      cand.emplace_back((features.row(i) - features.row(j)).squaredNorm(),
                        static_cast<int>(j));
    }
    std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end());
    cand.resize(k);
    std::sort(cand.begin(), cand.end());
    auto& m = members[i];
    m.reserve(k + 1);
    m.push_back(static_cast<int>(i));
    for (const auto& [dist, j] : cand) m.push_back(j);
    std::sort(m.begin(), m.end());
    seeds[i] = static_cast<int>(i);
  }
  return HyperGraph::from_edges(n, std::move(members), std::move(seeds));
}

void write_incidence(const HyperGraph& graph, std::ostream& out) {
  for (Index e = 0; e < graph.edge_count(); ++e) {
    out << e << ':';
    const auto& m = graph.members(static_cast<int>(e));
    for (std::size_t t = 0; t < m.size(); ++t)
      out << (t == 0 ? " " : ",") << m[t];
    out << '\n';
  }
}

std::string incidence_text(const HyperGraph& graph) {
  std::ostringstream os;
  write_incidence(graph, os);
  return os.str();
}

}  // namespace dahgnn
