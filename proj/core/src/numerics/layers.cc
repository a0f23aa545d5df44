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

#include "ssmt/numerics/layers.h"

#include <cmath>
#include <vector>

#include "ssmt/common/errors.h"

namespace ssmt {

double InitRng::Uniform(double limit) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return (2.0 * unit - 1.0) * limit;
}

Tensor InitRng::UniformTensor(int rows, int cols, double limit) {
  Tensor t(rows, cols);
  for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] = Uniform(limit);
  return t;
}

Affine::Affine(ParamStore& store, const std::string& name, int in, int out,
               InitRng& rng) {
  weight_ = &store.Add(name + ".w",
                       rng.UniformTensor(in, out, 1.0 / std::sqrt(in)));
  bias_ = &store.Add(name + ".b", Tensor::Zero(1, out));
}

Var Affine::operator()(Graph& g, Var x) const {
  return ad::AddRow(ad::MatMul(x, g.Param(*weight_)), g.Param(*bias_));
}

Tensor Affine::Apply(const Tensor& x) const {
  Tensor y = x * weight_->value;
  y.rowwise() += bias_->value.row(0);
  return y;
}

LayerNormBlock::LayerNormBlock(ParamStore& store, const std::string& name,
                               int dim) {
  gain_ = &store.Add(name + ".gain", Tensor::Ones(1, dim));
  bias_ = &store.Add(name + ".bias", Tensor::Zero(1, dim));
}

Var LayerNormBlock::operator()(Graph& g, Var x) const {
  return ad::LayerNorm(x, g.Param(*gain_), g.Param(*bias_));
}

Tensor LayerNormBlock::Apply(const Tensor& x) const {
  return kernels::LayerNorm(x, gain_->value, bias_->value, 1e-5);
}

EmbeddingTable::EmbeddingTable(ParamStore& store, const std::string& name,
                               int rows, int dim, InitRng& rng) {
  table_ = &store.Add(name, rng.UniformTensor(rows, dim, std::sqrt(3.0 / dim)));
}

Var EmbeddingTable::operator()(Graph& g, std::span<const int> ids) const {
  return ad::Embedding(g.Param(*table_), ids);
}

Tensor EmbeddingTable::Row(int id) const {
  if (id < 0 || id >= rows()) throw UsageError("embedding id out of range");
  return table_->value.row(id);
}

Tensor EmbeddingTable::Rows(std::span<const int> ids) const {
  Tensor out(static_cast<Eigen::Index>(ids.size()), dim());
  for (size_t i = 0; i < ids.size(); ++i) out.row(i) = Row(ids[i]);
  return out;
}

MultiHeadAttention::MultiHeadAttention(ParamStore& store,
                                       const std::string& name, int dim,
                                       int heads, InitRng& rng)
    : heads_(heads), dim_(dim) {
  if (heads < 1 || dim % heads != 0) {
    throw UsageError("attention dim must be divisible by the head count");
  }
  query_ = Affine(store, name + ".q", dim, dim, rng);
  key_ = Affine(store, name + ".k", dim, dim, rng);
  value_ = Affine(store, name + ".v", dim, dim, rng);
  output_ = Affine(store, name + ".o", dim, dim, rng);
}

Var MultiHeadAttention::operator()(Graph& g, Var queries, Var memory,
                                   const ColumnMask& key_mask,
                                   bool causal) const {
  const Var q = query_(g, queries);
  const Var k = key_(g, memory);
  const Var v = value_(g, memory);
  const int head_dim = dim_ / heads_;
  const double scale = 1.0 / std::sqrt(static_cast<double>(head_dim));
  std::vector<Var> outputs;
  outputs.reserve(heads_);
  for (int h = 0; h < heads_; ++h) {
    const Var qh = ad::SliceCols(q, h * head_dim, head_dim);
    const Var kh = ad::SliceCols(k, h * head_dim, head_dim);
    const Var vh = ad::SliceCols(v, h * head_dim, head_dim);
    const Var scores = ad::Scale(ad::MatMulTransB(qh, kh), scale);
    const Var weights = ad::SoftmaxRows(scores, key_mask, causal);
    outputs.push_back(ad::MatMul(weights, vh));
  }
  const Var joined = heads_ == 1 ? outputs[0] : ad::ConcatCols(outputs);
  return output_(g, joined);
}

Tensor MultiHeadAttention::Attend(const Tensor& query_input,
                                  const Tensor& keys, const Tensor& values,
                                  const ColumnMask& key_mask) const {
  const Tensor q = query_.Apply(query_input);
  const int head_dim = dim_ / heads_;
  const double scale = 1.0 / std::sqrt(static_cast<double>(head_dim));
  Tensor joined(q.rows(), dim_);
  for (int h = 0; h < heads_; ++h) {
    const Tensor scores =
        (q.middleCols(h * head_dim, head_dim) *
         keys.middleCols(h * head_dim, head_dim).transpose()) *
        scale;
    const Tensor weights = kernels::SoftmaxRows(scores, key_mask, false);
    joined.middleCols(h * head_dim, head_dim) =
        weights * values.middleCols(h * head_dim, head_dim);
  }
  return output_.Apply(joined);
}

LstmCell::LstmCell(ParamStore& store, const std::string& name, int input_dim,
                   int hidden_dim, InitRng& rng)
    : hidden_(hidden_dim) {
  input_ = Affine(store, name + ".x", input_dim, 4 * hidden_dim, rng);
  recurrent_ = &store.Add(
      name + ".h",
      rng.UniformTensor(hidden_dim, 4 * hidden_dim, 1.0 / std::sqrt(hidden_dim)));
}

LstmCell::VarState LstmCell::operator()(Graph& g, Var x,
                                        const VarState& state) const {
  const Var gates =
      ad::Add(input_(g, x), ad::MatMul(state.h, g.Param(*recurrent_)));
  const Var i = ad::Sigmoid(ad::SliceCols(gates, 0, hidden_));
  const Var f = ad::Sigmoid(ad::SliceCols(gates, hidden_, hidden_));
  const Var cand = ad::Tanh(ad::SliceCols(gates, 2 * hidden_, hidden_));
  const Var o = ad::Sigmoid(ad::SliceCols(gates, 3 * hidden_, hidden_));
  const Var c = ad::Add(ad::Mul(f, state.c), ad::Mul(i, cand));
  const Var h = ad::Mul(o, ad::Tanh(c));
  return {h, c};
}

LstmCell::State LstmCell::Step(const Tensor& x, const State& state) const {
  Tensor gates = input_.Apply(x);
  gates.noalias() += state.h * recurrent_->value;
  auto sigmoid = [](double v) { return kernels::Sigmoid(v); };
  const Tensor i = gates.middleCols(0, hidden_).unaryExpr(sigmoid);
  const Tensor f = gates.middleCols(hidden_, hidden_).unaryExpr(sigmoid);
  const Tensor cand = gates.middleCols(2 * hidden_, hidden_).array().tanh();
  const Tensor o = gates.middleCols(3 * hidden_, hidden_).unaryExpr(sigmoid);
  State next;
  next.c = f.cwiseProduct(state.c) + i.cwiseProduct(cand);
  next.h = o.cwiseProduct(Tensor(next.c.array().tanh()));
  return next;
}

}  // namespace ssmt
