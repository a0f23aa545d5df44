// Copyright 2026 The SSMT Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ssmt/numerics/autodiff.h"

#include <memory>
#include <random>
#include <string>

#include "ssmt/common/errors.h"

namespace ssmt {

const Tensor& Var::value() const { return graph->value(id); }

Var Graph::Constant(Tensor value) {
  Node node;
  node.value = std::move(value);
  nodes_.push_back(std::move(node));
  return {this, size() - 1};
}

Var Graph::Param(const Parameter& param) {
  if (param.index < static_cast<int>(param_nodes_.size()) &&
      param_nodes_[param.index] >= 0) {
    return {this, param_nodes_[param.index]};
  }
  if (param.index >= static_cast<int>(param_nodes_.size())) {
    param_nodes_.resize(param.index + 1, -1);
  }
  param_nodes_[param.index] = size();
  Node node;
  node.value = param.value;
  node.needs_grad = record_;
  node.param_index = param.index;
  nodes_.push_back(std::move(node));
  return {this, size() - 1};
}

Var Graph::AddNode(Tensor value, std::initializer_list<Var> inputs,
                   BackwardFn backward) {
  return AddNode(std::move(value),
                 std::span<const Var>(inputs.begin(), inputs.size()),
                 std::move(backward));
}

Var Graph::AddNode(Tensor value, std::span<const Var> inputs,
                   BackwardFn backward) {
  Node node;
  node.value = std::move(value);
  if (record_) {
    for (const Var& in : inputs) {
      if (in.graph != this) throw UsageError("Var from a different graph");
      node.needs_grad = node.needs_grad || nodes_[in.id].needs_grad;
    }
    if (node.needs_grad) node.backward = std::move(backward);
  }
  nodes_.push_back(std::move(node));
  return {this, size() - 1};
}

Tensor& Graph::GradRef(int id) {
  Node& node = nodes_[id];
  if (node.grad.size() == 0) {
    node.grad = Tensor::Zero(node.value.rows(), node.value.cols());
  }
  return node.grad;
}

void Graph::SetDropout(double rate, uint64_t seed) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw UsageError("dropout rate must be in [0, 1)");
  }
  dropout_rate_ = rate;
  dropout_rng_.seed(seed);
}

void Graph::Backward(Var root, Gradients& grads) {
  if (root.graph != this) throw UsageError("Var from a different graph");
  const Tensor& out = value(root.id);
  if (out.rows() != 1 || out.cols() != 1) {
    throw UsageError("Backward needs a scalar output, got " +
                     std::to_string(out.rows()) + "x" +
                     std::to_string(out.cols()));
  }
  if (!record_) throw UsageError("Backward on a non-recording graph");
  GradRef(root.id)(0, 0) += 1.0;
  for (int id = root.id; id >= 0; --id) {
    Node& node = nodes_[id];
    if (!node.needs_grad || node.grad.size() == 0) continue;
    if (node.backward) node.backward(*this, id);
    if (node.param_index >= 0) grads[node.param_index] += node.grad;
  }
}

namespace ad {
namespace {

void Accumulate(Graph& g, Var v, const Tensor& delta) {
  if (g.needs_grad(v.id)) g.GradRef(v.id) += delta;
}

template <typename Expr>
void AccumulateExpr(Graph& g, Var v, const Expr& delta) {
  if (g.needs_grad(v.id)) g.GradRef(v.id) += delta;
}

void CheckSameShape(Var a, Var b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw UsageError(std::string(op) + ": shape mismatch " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " vs " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
  }
}

}  // namespace

Var MatMul(Var a, Var b) {
  if (a.cols() != b.rows()) throw UsageError("MatMul: inner dims differ");
  Graph& g = *a.graph;
  return g.AddNode(a.value() * b.value(), {a, b}, [a, b](Graph& g, int self) {
    const Tensor& dy = g.grad(self);
    if (g.needs_grad(a.id)) g.GradRef(a.id).noalias() += dy * b.value().transpose();
    if (g.needs_grad(b.id)) g.GradRef(b.id).noalias() += a.value().transpose() * dy;
  });
}

Var MatMulTransB(Var a, Var b) {
  if (a.cols() != b.cols()) throw UsageError("MatMulTransB: dims differ");
  Graph& g = *a.graph;
  return g.AddNode(a.value() * b.value().transpose(), {a, b},
                   [a, b](Graph& g, int self) {
                     const Tensor& dy = g.grad(self);
                     if (g.needs_grad(a.id)) g.GradRef(a.id).noalias() += dy * b.value();
                     if (g.needs_grad(b.id)) {
                       g.GradRef(b.id).noalias() += dy.transpose() * a.value();
                     }
                   });
}

Var Add(Var a, Var b) {
  CheckSameShape(a, b, "Add");
  Graph& g = *a.graph;
  return g.AddNode(a.value() + b.value(), {a, b}, [a, b](Graph& g, int self) {
    Accumulate(g, a, g.grad(self));
    Accumulate(g, b, g.grad(self));
  });
}

Var Sub(Var a, Var b) {
  CheckSameShape(a, b, "Sub");
  Graph& g = *a.graph;
  return g.AddNode(a.value() - b.value(), {a, b}, [a, b](Graph& g, int self) {
    Accumulate(g, a, g.grad(self));
    AccumulateExpr(g, b, -g.grad(self));
  });
}

Var Mul(Var a, Var b) {
  CheckSameShape(a, b, "Mul");
  Graph& g = *a.graph;
  Tensor out = a.value().cwiseProduct(b.value());
  return g.AddNode(std::move(out), {a, b}, [a, b](Graph& g, int self) {
    AccumulateExpr(g, a, g.grad(self).cwiseProduct(b.value()));
    AccumulateExpr(g, b, g.grad(self).cwiseProduct(a.value()));
  });
}

Var Dropout(Var a) {
  Graph& g = *a.graph;
  const double rate = g.dropout_rate();
  if (rate <= 0.0) return a;
  std::bernoulli_distribution keep(1.0 - rate);
  Tensor mask(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    mask.data()[i] = keep(g.dropout_rng()) ? 1.0 / (1.0 - rate) : 0.0;
  }
  return Mul(a, g.Constant(std::move(mask)));
}

Var AddRow(Var a, Var row) {
  if (row.rows() != 1 || row.cols() != a.cols()) {
    throw UsageError("AddRow: bias must be 1 x cols");
  }
  Graph& g = *a.graph;
  Tensor out = a.value().rowwise() + row.value().row(0);
  return g.AddNode(std::move(out), {a, row}, [a, row](Graph& g, int self) {
    Accumulate(g, a, g.grad(self));
    AccumulateExpr(g, row, g.grad(self).colwise().sum());
  });
}

Var Scale(Var a, double factor) {
  Graph& g = *a.graph;
  return g.AddNode(a.value() * factor, {a}, [a, factor](Graph& g, int self) {
    AccumulateExpr(g, a, g.grad(self) * factor);
  });
}

Var Neg(Var a) { return Scale(a, -1.0); }

Var Sigmoid(Var a) {
  Graph& g = *a.graph;
  Tensor out = a.value().unaryExpr([](double x) { return kernels::Sigmoid(x); });
  return g.AddNode(std::move(out), {a}, [a](Graph& g, int self) {
    const Tensor& y = g.value(self);
    AccumulateExpr(g, a, g.grad(self).cwiseProduct(
                             (y.array() * (1.0 - y.array())).matrix()));
  });
}

Var Tanh(Var a) {
  Graph& g = *a.graph;
  Tensor out = a.value().array().tanh().matrix();
  return g.AddNode(std::move(out), {a}, [a](Graph& g, int self) {
    const Tensor& y = g.value(self);
    AccumulateExpr(g, a, g.grad(self).cwiseProduct(
                             (1.0 - y.array().square()).matrix()));
  });
}

Var Relu(Var a) {
  Graph& g = *a.graph;
  Tensor out = a.value().cwiseMax(0.0);
  return g.AddNode(std::move(out), {a}, [a](Graph& g, int self) {
    const Tensor& x = a.value();
    AccumulateExpr(g, a, g.grad(self).cwiseProduct(
                             (x.array() > 0.0).cast<double>().matrix()));
  });
}

Var LogSigmoid(Var a) {
  Graph& g = *a.graph;
  Tensor out =
      a.value().unaryExpr([](double x) { return kernels::LogSigmoid(x); });
  return g.AddNode(std::move(out), {a}, [a](Graph& g, int self) {
    // d/dx log(sigmoid(x)) = sigmoid(-x)
    Tensor d = a.value().unaryExpr([](double x) { return kernels::Sigmoid(-x); });
    AccumulateExpr(g, a, g.grad(self).cwiseProduct(d));
  });
}

Var LogSoftmaxRows(Var a, const ColumnMask& mask) {
  if (!mask.empty() && static_cast<Eigen::Index>(mask.size()) != a.cols()) {
    throw UsageError("LogSoftmaxRows: mask width mismatch");
  }
  Graph& g = *a.graph;
  return g.AddNode(kernels::LogSoftmaxRows(a.value(), mask), {a},
                   [a, mask](Graph& g, int self) {
                     const Tensor& y = g.value(self);
                     const Tensor& dy = g.grad(self);
                     if (!g.needs_grad(a.id)) return;
                     Tensor& dx = g.GradRef(a.id);
                     for (Eigen::Index r = 0; r < y.rows(); ++r) {
                       double total = 0.0;
                       for (Eigen::Index c = 0; c < y.cols(); ++c) {
                         if (mask.empty() || !mask[c]) total += dy(r, c);
                       }
                       for (Eigen::Index c = 0; c < y.cols(); ++c) {
                         if (!mask.empty() && mask[c]) continue;
                         dx(r, c) += dy(r, c) - std::exp(y(r, c)) * total;
                       }
                     }
                   });
}

Var SoftmaxRows(Var a, const ColumnMask& key_mask, bool causal) {
  if (!key_mask.empty() &&
      static_cast<Eigen::Index>(key_mask.size()) != a.cols()) {
    throw UsageError("SoftmaxRows: mask width mismatch");
  }
  Graph& g = *a.graph;
  return g.AddNode(kernels::SoftmaxRows(a.value(), key_mask, causal), {a},
                   [a](Graph& g, int self) {
                     const Tensor& p = g.value(self);
                     const Tensor& dy = g.grad(self);
                     Tensor inner = dy.cwiseProduct(p).rowwise().sum();
                     Tensor dx = p.cwiseProduct(
                         (dy.colwise() - inner.col(0)));
                     AccumulateExpr(g, a, dx);
                   });
}

Var LayerNorm(Var a, Var gain, Var bias, double eps) {
  if (gain.rows() != 1 || gain.cols() != a.cols() || bias.rows() != 1 ||
      bias.cols() != a.cols()) {
    throw UsageError("LayerNorm: gain/bias must be 1 x cols");
  }
  Graph& g = *a.graph;
  auto xhat = std::make_shared<Tensor>();
  auto inv_std = std::make_shared<Tensor>();
  Tensor out = kernels::LayerNorm(a.value(), gain.value(), bias.value(), eps,
                                  xhat.get(), inv_std.get());
  return g.AddNode(
      std::move(out), {a, gain, bias},
      [a, gain, bias, xhat, inv_std](Graph& g, int self) {
        const Tensor& dy = g.grad(self);
        AccumulateExpr(g, gain, dy.cwiseProduct(*xhat).colwise().sum());
        AccumulateExpr(g, bias, dy.colwise().sum());
        if (!g.needs_grad(a.id)) return;
        const Eigen::Index n = dy.cols();
        Tensor dxhat = dy.array().rowwise() * gain.value().row(0).array();
        Tensor& dx = g.GradRef(a.id);
        for (Eigen::Index r = 0; r < dy.rows(); ++r) {
          const double mean_d = dxhat.row(r).sum() / n;
          const double mean_dx = dxhat.row(r).dot(xhat->row(r)) / n;
          dx.row(r).array() += (*inv_std)(r, 0) *
                               (dxhat.row(r).array() - mean_d -
                                xhat->row(r).array() * mean_dx);
        }
      });
}

Var Embedding(Var table, std::span<const int> ids) {
  Graph& g = *table.graph;
  const Tensor& t = table.value();
  Tensor out(static_cast<Eigen::Index>(ids.size()), t.cols());
  for (size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || ids[i] >= t.rows()) {
      throw UsageError("Embedding: id " + std::to_string(ids[i]) +
                       " out of range");
    }
    out.row(i) = t.row(ids[i]);
  }
  std::vector<int> rows(ids.begin(), ids.end());
  return g.AddNode(std::move(out), {table},
                   [table, rows = std::move(rows)](Graph& g, int self) {
                     const Tensor& dy = g.grad(self);
                     Tensor& dt = g.GradRef(table.id);
                     for (size_t i = 0; i < rows.size(); ++i) {
                       dt.row(rows[i]) += dy.row(i);
                     }
                   });
}

Var ConcatCols(std::span<const Var> parts) {
  if (parts.empty()) throw UsageError("ConcatCols: no inputs");
  Graph& g = *parts[0].graph;
  Eigen::Index cols = 0;
  for (const Var& v : parts) {
    if (v.rows() != parts[0].rows()) throw UsageError("ConcatCols: rows differ");
    cols += v.cols();
  }
  Tensor out(parts[0].rows(), cols);
  Eigen::Index offset = 0;
  for (const Var& v : parts) {
    out.middleCols(offset, v.cols()) = v.value();
    offset += v.cols();
  }
  std::vector<Var> inputs(parts.begin(), parts.end());
  return g.AddNode(std::move(out), parts, [inputs](Graph& g, int self) {
    const Tensor& dy = g.grad(self);
    Eigen::Index offset = 0;
    for (const Var& v : inputs) {
      AccumulateExpr(g, v, dy.middleCols(offset, v.cols()));
      offset += v.cols();
    }
  });
}

Var ConcatRows(std::span<const Var> parts) {
  if (parts.empty()) throw UsageError("ConcatRows: no inputs");
  Graph& g = *parts[0].graph;
  Eigen::Index rows = 0;
  for (const Var& v : parts) {
    if (v.cols() != parts[0].cols()) throw UsageError("ConcatRows: cols differ");
    rows += v.rows();
  }
  Tensor out(rows, parts[0].cols());
  Eigen::Index offset = 0;
  for (const Var& v : parts) {
    out.middleRows(offset, v.rows()) = v.value();
    offset += v.rows();
  }
  std::vector<Var> inputs(parts.begin(), parts.end());
  return g.AddNode(std::move(out), parts, [inputs](Graph& g, int self) {
    const Tensor& dy = g.grad(self);
    Eigen::Index offset = 0;
    for (const Var& v : inputs) {
      AccumulateExpr(g, v, dy.middleRows(offset, v.rows()));
      offset += v.rows();
    }
  });
}

Var SliceCols(Var a, int start, int count) {
  if (start < 0 || count < 0 || start + count > a.cols()) {
    throw UsageError("SliceCols: range out of bounds");
  }
  Graph& g = *a.graph;
  Tensor out = a.value().middleCols(start, count);
  return g.AddNode(std::move(out), {a}, [a, start, count](Graph& g, int self) {
    if (g.needs_grad(a.id)) {
      g.GradRef(a.id).middleCols(start, count) += g.grad(self);
    }
  });
}

Var SliceRows(Var a, int start, int count) {
  if (start < 0 || count < 0 || start + count > a.rows()) {
    throw UsageError("SliceRows: range out of bounds");
  }
  Graph& g = *a.graph;
  Tensor out = a.value().middleRows(start, count);
  return g.AddNode(std::move(out), {a}, [a, start, count](Graph& g, int self) {
    if (g.needs_grad(a.id)) {
      g.GradRef(a.id).middleRows(start, count) += g.grad(self);
    }
  });
}

Var Gather(Var a, std::span<const std::pair<int, int>> cells) {
  Graph& g = *a.graph;
  const Tensor& x = a.value();
  Tensor out(static_cast<Eigen::Index>(cells.size()), 1);
  for (size_t i = 0; i < cells.size(); ++i) {
    const auto [r, c] = cells[i];
    if (r < 0) {
      out(i, 0) = kNegInf;
      continue;
    }
    if (r >= x.rows() || c < 0 || c >= x.cols()) {
      throw UsageError("Gather: cell out of range");
    }
    out(i, 0) = x(r, c);
  }
  std::vector<std::pair<int, int>> where(cells.begin(), cells.end());
  return g.AddNode(std::move(out), {a},
                   [a, where = std::move(where)](Graph& g, int self) {
                     const Tensor& dy = g.grad(self);
                     Tensor& dx = g.GradRef(a.id);
                     for (size_t i = 0; i < where.size(); ++i) {
                       if (where[i].first >= 0) {
                         dx(where[i].first, where[i].second) += dy(i, 0);
                       }
                     }
                   });
}

Var SegmentSum(Var v, const std::vector<std::vector<int>>& groups) {
  if (v.cols() != 1) throw UsageError("SegmentSum: expects a column vector");
  Graph& g = *v.graph;
  Tensor out(static_cast<Eigen::Index>(groups.size()), 1);
  for (size_t i = 0; i < groups.size(); ++i) {
    double total = 0.0;
    for (int k : groups[i]) {
      if (k < 0 || k >= v.rows()) throw UsageError("SegmentSum: bad index");
      total += v.value()(k, 0);
    }
    out(i, 0) = total;
  }
  return g.AddNode(std::move(out), {v}, [v, groups](Graph& g, int self) {
    const Tensor& dy = g.grad(self);
    Tensor& dv = g.GradRef(v.id);
    for (size_t i = 0; i < groups.size(); ++i) {
      for (int k : groups[i]) dv(k, 0) += dy(i, 0);
    }
  });
}

Var LogAddExp(Var a, Var b) {
  CheckSameShape(a, b, "LogAddExp");
  Graph& g = *a.graph;
  Tensor out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out.data()[i] = kernels::LogAddExp(a.value().data()[i], b.value().data()[i]);
  }
  return g.AddNode(std::move(out), {a, b}, [a, b](Graph& g, int self) {
    const Tensor& y = g.value(self);
    const Tensor& dy = g.grad(self);
    for (Var in : {a, b}) {
      if (!g.needs_grad(in.id)) continue;
      Tensor& dx = g.GradRef(in.id);
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y.data()[i] == kNegInf) continue;
        dx.data()[i] += dy.data()[i] * std::exp(in.value().data()[i] - y.data()[i]);
      }
    }
  });
}

Var Sum(Var a) {
  Graph& g = *a.graph;
  Tensor out(1, 1);
  out(0, 0) = a.value().sum();
  return g.AddNode(std::move(out), {a}, [a](Graph& g, int self) {
    if (g.needs_grad(a.id)) g.GradRef(a.id).array() += g.grad(self)(0, 0);
  });
}

}  // namespace ad
}  // namespace ssmt
