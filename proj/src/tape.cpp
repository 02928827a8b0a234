#include "dahgnn/tape.hpp"

#include <algorithm>
#include <cmath>

#include "dahgnn/numerics.hpp"

namespace dahgnn {

NodeId Tape::check(NodeId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size())
    throw std::out_of_range("tape: invalid node id " + std::to_string(id));
  return id;
}

NodeId Tape::push(Node node) {
  eval(node);
  nodes_.push_back(std::move(node));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Tape::constant(Matrix value) {
  Node n;
  n.op = Op::Constant;
  n.value = std::move(value);
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Tape::parameter(const Matrix& value, std::string name) {
  Node n;
  n.op = Op::Parameter;
  n.value = value;
  n.name = std::move(name);
  nodes_.push_back(std::move(n));
  const NodeId id = static_cast<NodeId>(nodes_.size() - 1);
  param_nodes_.push_back(id);
  return id;
}

NodeId Tape::matmul(NodeId a, NodeId b) {
  require(value(a).cols() == value(b).rows(), "matmul: inner dimensions differ");
  Node n;
  n.op = Op::MatMul;
  n.a = a;
  n.b = b;
  return push(std::move(n));
}

NodeId Tape::add(NodeId a, NodeId b) {
  require(value(a).rows() == value(b).rows() &&
              value(a).cols() == value(b).cols(),
          "add: shapes differ");
  Node n;
  n.op = Op::Add;
  n.a = a;
  n.b = b;
  return push(std::move(n));
}

NodeId Tape::leaky_relu(NodeId a, double slope) {
  Node n;
  n.op = Op::LeakyRelu;
  n.a = check(a);
  n.scalar = slope;
  return push(std::move(n));
}

NodeId Tape::elu(NodeId a, double alpha) {
  Node n;
  n.op = Op::Elu;
  n.a = check(a);
  n.scalar = alpha;
  return push(std::move(n));
}

NodeId Tape::sum(NodeId a) {
  Node n;
  n.op = Op::Sum;
  n.a = check(a);
  return push(std::move(n));
}

NodeId Tape::gather_rows(NodeId a, IndexListPtr idx) {
  const Index rows = value(a).rows();
  for (int i : *idx)
    require(i >= 0 && i < rows, "gather_rows: index out of range");
  Node n;
  n.op = Op::GatherRows;
  n.a = a;
  n.idx_a = std::move(idx);
  return push(std::move(n));
}

NodeId Tape::group_softmax(NodeId a, IndexListPtr offsets) {
  require(value(a).cols() == 1, "group_softmax: expects a column vector");
  require(!offsets->empty() &&
              offsets->back() == static_cast<int>(value(a).rows()),
          "group_softmax: offsets do not cover the input");
  Node n;
  n.op = Op::GroupSoftmax;
  n.a = a;
  n.offsets = std::move(offsets);
  return push(std::move(n));
}

NodeId Tape::incidence_aggregate(NodeId coeff, NodeId features,
                                 IndexListPtr src, IndexListPtr dst,
                                 Index out_rows) {
  require(value(coeff).cols() == 1 &&
              value(coeff).rows() == static_cast<Index>(src->size()) &&
              src->size() == dst->size(),
          "incidence_aggregate: coefficient/index sizes disagree");
  const Index feat_rows = value(features).rows();
  for (std::size_t t = 0; t < src->size(); ++t) {
    require((*src)[t] >= 0 && (*src)[t] < feat_rows,
            "incidence_aggregate: source index out of range");
    require((*dst)[t] >= 0 && (*dst)[t] < out_rows,
            "incidence_aggregate: destination index out of range");
  }
  Node n;
  n.op = Op::IncidenceAggregate;
  n.a = coeff;
  n.b = features;
  n.idx_a = std::move(src);
  n.idx_b = std::move(dst);
  n.out_rows = out_rows;
  return push(std::move(n));
}

NodeId Tape::concat_cols(const std::vector<NodeId>& parts) {
  require(!parts.empty(), "concat_cols: needs at least one part");
  const Index rows = value(parts.front()).rows();
  for (NodeId p : parts)
    require(value(p).rows() == rows, "concat_cols: row counts differ");
  Node n;
  n.op = Op::ConcatCols;
  n.parts = parts;
  return push(std::move(n));
}

NodeId Tape::sparse_left_product(SparsePtr sparse, NodeId a) {
  require(sparse->cols() == value(a).rows(),
          "sparse_left_product: inner dimensions differ");
  Node n;
  n.op = Op::SparseLeftProduct;
  n.a = a;
  n.sparse = std::move(sparse);
  return push(std::move(n));
}

NodeId Tape::row_softmax(NodeId a) {
  Node n;
  n.op = Op::RowSoftmax;
  n.a = check(a);
  return push(std::move(n));
}

NodeId Tape::cross_entropy(NodeId z, NodeId y_onehot, IndexListPtr labeled) {
  require(value(z).rows() == value(y_onehot).rows() &&
              value(z).cols() == value(y_onehot).cols(),
          "cross_entropy: prediction/label shapes differ");
  require(!labeled->empty(), "cross_entropy: empty labeled set");
  const Index rows = value(z).rows();
  for (int i : *labeled)
    require(i >= 0 && i < rows, "cross_entropy: labeled index out of range");
  Node n;
  n.op = Op::CrossEntropy;
  n.a = z;
  n.b = y_onehot;
  n.idx_a = std::move(labeled);
  return push(std::move(n));
}

namespace {

void softmax_segment(const double* x, double* y, Index count) {
  double mx = x[0];
  for (Index t = 1; t < count; ++t) mx = std::max(mx, x[t]);
  double sum = 0.0;
  for (Index t = 0; t < count; ++t) {
    y[t] = std::exp(x[t] - mx);
    sum += y[t];
  }
  for (Index t = 0; t < count; ++t) y[t] /= sum;
}

}  // namespace

void Tape::eval(Node& n) const {
  switch (n.op) {
    case Op::Constant:
    case Op::Parameter:
      break;
    case Op::MatMul:
      n.value.noalias() = value(n.a) * value(n.b);
      break;
    case Op::Add:
      n.value = value(n.a) + value(n.b);
      break;
    case Op::LeakyRelu:
      n.value = dahgnn::leaky_relu(value(n.a), n.scalar);
      break;
    case Op::Elu:
      n.value = dahgnn::elu(value(n.a), n.scalar);
      break;
    case Op::Sum:
      n.value = Matrix::Constant(1, 1, value(n.a).sum());
      break;
    case Op::GatherRows: {
      const Matrix& in = value(n.a);
      const IndexList& idx = *n.idx_a;
      n.value.resize(static_cast<Index>(idx.size()), in.cols());
      for (std::size_t t = 0; t < idx.size(); ++t)
        n.value.row(static_cast<Index>(t)) = in.row(idx[t]);
      break;
    }
    case Op::GroupSoftmax: {
      const Matrix& in = value(n.a);
      const IndexList& off = *n.offsets;
      n.value.resize(in.rows(), 1);
      for (std::size_t g = 0; g + 1 < off.size(); ++g) {
        const Index lo = off[g], hi = off[g + 1];
        if (hi == lo)
          throw DegenerateGroupError("group_softmax: empty group " +
                                     std::to_string(g));
        softmax_segment(in.data() + lo, n.value.data() + lo, hi - lo);
      }
      break;
    }
    case Op::IncidenceAggregate: {
      const Matrix& c = value(n.a);
      const Matrix& f = value(n.b);
      const IndexList& src = *n.idx_a;
      const IndexList& dst = *n.idx_b;
      n.value = Matrix::Zero(n.out_rows, f.cols());
      for (std::size_t t = 0; t < src.size(); ++t)
        n.value.row(dst[t]) += c(static_cast<Index>(t), 0) * f.row(src[t]);
      break;
    }
    case Op::ConcatCols: {
      Index cols = 0;
      for (NodeId p : n.parts) cols += value(p).cols();
      n.value.resize(value(n.parts.front()).rows(), cols);
      Index at = 0;
      for (NodeId p : n.parts) {
        n.value.middleCols(at, value(p).cols()) = value(p);
        at += value(p).cols();
      }
      break;
    }
    case Op::SparseLeftProduct:
      n.value = *n.sparse * value(n.a);
      break;
    case Op::RowSoftmax: {
      const Matrix& in = value(n.a);
      n.value.resize(in.rows(), in.cols());
      // Row-major traversal over a column-major store; rows are short here.
      Matrix row(1, in.cols());
      for (Index i = 0; i < in.rows(); ++i) {
        row = in.row(i);
        Matrix out_row(1, in.cols());
        softmax_segment(row.data(), out_row.data(), in.cols());
        n.value.row(i) = out_row;
      }
      break;
    }
    case Op::CrossEntropy: {
      const Matrix& z = value(n.a);
      const Matrix& y = value(n.b);
      double loss = 0.0;
      for (int i : *n.idx_a)
        for (Index j = 0; j < z.cols(); ++j)
          if (y(i, j) != 0.0)
            loss -= y(i, j) * std::log(std::max(z(i, j), kLogClamp));
      n.value = Matrix::Constant(1, 1, loss);
      break;
    }
  }
}

void Tape::replay() {
  for (Node& n : nodes_)
    if (n.op != Op::Constant && n.op != Op::Parameter) eval(n);
}

Gradients Tape::backward(NodeId loss) const {
  check(loss);
  require(value(loss).rows() == 1 && value(loss).cols() == 1,
          "backward: loss must be scalar");

  std::vector<Matrix> adj(nodes_.size());
  std::vector<char> live(nodes_.size(), 0);
  adj[loss] = Matrix::Constant(1, 1, 1.0);
  live[loss] = 1;

  auto bump = [&](NodeId id) -> Matrix& {
    if (!live[id]) {
      adj[id] = Matrix::Zero(nodes_[id].value.rows(), nodes_[id].value.cols());
      live[id] = 1;
    }
    return adj[id];
  };

  for (NodeId id = loss; id >= 0; --id) {
    if (!live[id]) continue;
    const Node& n = nodes_[id];
    const Matrix& g = adj[id];
    switch (n.op) {
      case Op::Constant:
      case Op::Parameter:
        break;
      case Op::MatMul:
        bump(n.a).noalias() += g * value(n.b).transpose();
        bump(n.b).noalias() += value(n.a).transpose() * g;
        break;
      case Op::Add:
        bump(n.a) += g;
        bump(n.b) += g;
        break;
      case Op::LeakyRelu: {
        const double slope = n.scalar;
        bump(n.a).array() += g.array() * value(n.a).unaryExpr([slope](double v) {
          return leaky_relu_grad(v, slope);
        }).array();
        break;
      }
      case Op::Elu: {
        const double alpha = n.scalar;
        bump(n.a).array() += g.array() * value(n.a).unaryExpr([alpha](double v) {
          return elu_grad(v, alpha);
        }).array();
        break;
      }
      case Op::Sum:
        bump(n.a).array() += g(0, 0);
        break;
      case Op::GatherRows: {
        Matrix& da = bump(n.a);
        const IndexList& idx = *n.idx_a;
        for (std::size_t t = 0; t < idx.size(); ++t)
          da.row(idx[t]) += g.row(static_cast<Index>(t));
        break;
      }
      case Op::GroupSoftmax: {
        Matrix& da = bump(n.a);
        const Matrix& y = n.value;
        const IndexList& off = *n.offsets;
        for (std::size_t grp = 0; grp + 1 < off.size(); ++grp) {
          const Index lo = off[grp], hi = off[grp + 1];
          double dot = 0.0;
          for (Index t = lo; t < hi; ++t) dot += y(t, 0) * g(t, 0);
          for (Index t = lo; t < hi; ++t)
            da(t, 0) += y(t, 0) * (g(t, 0) - dot);
        }
        break;
      }
      case Op::IncidenceAggregate: {
        Matrix& dc = bump(n.a);
        Matrix& df = bump(n.b);
        const Matrix& c = value(n.a);
        const Matrix& f = value(n.b);
        const IndexList& src = *n.idx_a;
        const IndexList& dst = *n.idx_b;
        for (std::size_t t = 0; t < src.size(); ++t) {
          const Index tt = static_cast<Index>(t);
          dc(tt, 0) += g.row(dst[t]).dot(f.row(src[t]));
          df.row(src[t]) += c(tt, 0) * g.row(dst[t]);
        }
        break;
      }
      case Op::ConcatCols: {
        Index at = 0;
        for (NodeId p : n.parts) {
          const Index w = value(p).cols();
          bump(p) += g.middleCols(at, w);
          at += w;
        }
        break;
      }
      case Op::SparseLeftProduct:
        bump(n.a).noalias() += n.sparse->transpose() * g;
        break;
      case Op::RowSoftmax: {
        Matrix& da = bump(n.a);
        const Matrix& y = n.value;
        for (Index i = 0; i < y.rows(); ++i) {
          const double dot = y.row(i).dot(g.row(i));
          da.row(i).array() +=
              y.row(i).array() * (g.row(i).array() - dot);
        }
        break;
      }
      case Op::CrossEntropy: {
        Matrix& dz = bump(n.a);
        Matrix& dy = bump(n.b);
        const Matrix& z = value(n.a);
        const Matrix& y = value(n.b);
        const double g0 = g(0, 0);
        for (int i : *n.idx_a) {
          for (Index j = 0; j < z.cols(); ++j) {
            const double zc = std::max(z(i, j), kLogClamp);
            if (z(i, j) > kLogClamp) dz(i, j) -= g0 * y(i, j) / zc;
            dy(i, j) -= g0 * std::log(zc);
          }
        }
        break;
      }
    }
  }

  Gradients out;
  out.by_param.reserve(param_nodes_.size());
  out.names.reserve(param_nodes_.size());
  for (NodeId p : param_nodes_) {
    out.names.push_back(nodes_[p].name);
    if (live[p])
      out.by_param.push_back(std::move(adj[p]));
    else
      out.by_param.push_back(
          Matrix::Zero(nodes_[p].value.rows(), nodes_[p].value.cols()));
  }
  return out;
}

}  // namespace dahgnn
