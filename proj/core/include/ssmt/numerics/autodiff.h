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

#ifndef SSMT_NUMERICS_AUTODIFF_H_
#define SSMT_NUMERICS_AUTODIFF_H_

#include <functional>
#include <initializer_list>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "ssmt/numerics/param_store.h"
#include "ssmt/numerics/tensor.h"

namespace ssmt {

class Graph;

// Handle to a node of a Graph.
struct Var {
  Graph* graph = nullptr;
  int id = -1;

  const Tensor& value() const;
  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }
};

// A reverse-mode tape. Nodes are appended in evaluation order, so the tape
// is always topologically sorted and Backward() simply walks it in reverse.
//
// A non-recording graph keeps values only; it is used for inference with
// the same op code as training.
class Graph {
 public:
  using BackwardFn = std::function<void(Graph&, int self)>;

  explicit Graph(bool record = true) : record_(record) {}
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  bool recording() const { return record_; }
  int size() const { return static_cast<int>(nodes_.size()); }

  Var Constant(Tensor value);
  // Leaf bound to a parameter; Backward() routes its gradient into the
  // Gradients slot with the parameter's index.
  Var Param(const Parameter& param);

  // Appends a node computed from inputs. The backward closure is kept only
  // when recording and some input needs a gradient.
  Var AddNode(Tensor value, std::initializer_list<Var> inputs,
              BackwardFn backward);
  Var AddNode(Tensor value, std::span<const Var> inputs, BackwardFn backward);

  const Tensor& value(int id) const { return nodes_[id].value; }
  bool needs_grad(int id) const { return nodes_[id].needs_grad; }
  bool has_grad(int id) const { return nodes_[id].grad.size() > 0; }
  const Tensor& grad(int id) const { return nodes_[id].grad; }
  // Zero-initialized on first access.
  Tensor& GradRef(int id);

  // Seeds d(root)/d(root) = 1 and accumulates parameter gradients into
  // grads. Throws UsageError unless root is 1 x 1.
  void Backward(Var root, Gradients& grads);

  // Inverted dropout used by ad::Dropout. The default rate of 0 makes
  // ad::Dropout the identity. Throws UsageError unless 0 <= rate < 1.
  void SetDropout(double rate, uint64_t seed);
  double dropout_rate() const { return dropout_rate_; }
  std::mt19937_64& dropout_rng() { return dropout_rng_; }

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    bool needs_grad = false;
    int param_index = -1;
    BackwardFn backward;
  };

  bool record_;
  std::vector<Node> nodes_;
  // Parameter index -> node id, so each parameter is bound once per graph.
  std::vector<int> param_nodes_;
  double dropout_rate_ = 0.0;
  std::mt19937_64 dropout_rng_;
};

namespace ad {

Var MatMul(Var a, Var b);
// a * b^T
Var MatMulTransB(Var a, Var b);
Var Add(Var a, Var b);
Var Sub(Var a, Var b);
Var Mul(Var a, Var b);
// Adds a 1 x c row to every row of a.
Var AddRow(Var a, Var row);
Var Scale(Var a, double factor);
// Zeroes entries with the graph's dropout rate and rescales the rest.
Var Dropout(Var a);
Var Neg(Var a);
Var Sigmoid(Var a);
Var Tanh(Var a);
Var Relu(Var a);
Var LogSigmoid(Var a);
Var LogSoftmaxRows(Var a, const ColumnMask& mask = {});
Var SoftmaxRows(Var a, const ColumnMask& key_mask, bool causal);
Var LayerNorm(Var a, Var gain, Var bias, double eps = 1e-5);
// Rows of table selected by ids.
Var Embedding(Var table, std::span<const int> ids);
Var ConcatCols(std::span<const Var> parts);
Var ConcatRows(std::span<const Var> parts);
Var SliceCols(Var a, int start, int count);
Var SliceRows(Var a, int start, int count);
// Column vector of a(r, c) for each (r, c); r < 0 yields a constant -inf.
Var Gather(Var a, std::span<const std::pair<int, int>> cells);
// out[i] = sum of v[k] over k in groups[i]; v is a column vector.
Var SegmentSum(Var v, const std::vector<std::vector<int>>& groups);
Var LogAddExp(Var a, Var b);
Var Sum(Var a);

}  // namespace ad
}  // namespace ssmt

#endif  // SSMT_NUMERICS_AUTODIFF_H_
