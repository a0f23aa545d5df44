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

#ifndef SSMT_NUMERICS_LAYERS_H_
#define SSMT_NUMERICS_LAYERS_H_

#include <cstdint>
#include <random>
#include <string>

#include "ssmt/numerics/autodiff.h"
#include "ssmt/numerics/param_store.h"
#include "ssmt/numerics/tensor.h"

namespace ssmt {

// Seeded generator for parameter initialization. Draws are derived from raw
// 64-bit outputs so values do not depend on the standard library's
// distribution implementations.
class InitRng {
 public:
  explicit InitRng(uint64_t seed) : engine_(seed) {}
  // Uniform in [-limit, limit).
  double Uniform(double limit);
  Tensor UniformTensor(int rows, int cols, double limit);

 private:
  std::mt19937_64 engine_;
};

// Every block below has a graph path (training, full sequences) and a plain
// tensor path (incremental decoding). Both run the same arithmetic.

// y = x W + b, W uniform in +-1/sqrt(fan_in), b = 0.
class Affine {
 public:
  Affine() = default;
  Affine(ParamStore& store, const std::string& name, int in, int out,
         InitRng& rng);

  Var operator()(Graph& g, Var x) const;
  Tensor Apply(const Tensor& x) const;
  int in() const { return static_cast<int>(weight_->value.rows()); }
  int out() const { return static_cast<int>(weight_->value.cols()); }
  Parameter& weight() const { return *weight_; }
  Parameter& bias() const { return *bias_; }

 private:
  Parameter* weight_ = nullptr;
  Parameter* bias_ = nullptr;
};

class LayerNormBlock {
 public:
  LayerNormBlock() = default;
  LayerNormBlock(ParamStore& store, const std::string& name, int dim);

  Var operator()(Graph& g, Var x) const;
  Tensor Apply(const Tensor& x) const;

 private:
  Parameter* gain_ = nullptr;
  Parameter* bias_ = nullptr;
};

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(ParamStore& store, const std::string& name, int rows,
                 int dim, InitRng& rng);

  Var operator()(Graph& g, std::span<const int> ids) const;
  Tensor Row(int id) const;
  Tensor Rows(std::span<const int> ids) const;
  int dim() const { return static_cast<int>(table_->value.cols()); }
  int rows() const { return static_cast<int>(table_->value.rows()); }

 private:
  Parameter* table_ = nullptr;
};

// Multi-head scaled dot-product attention with separate query and key/value
// inputs (self-attention passes the same sequence twice).
class MultiHeadAttention {
 public:
  MultiHeadAttention() = default;
  MultiHeadAttention(ParamStore& store, const std::string& name, int dim,
                     int heads, InitRng& rng);

  // key_mask excludes key columns; causal limits query i to keys <= i.
  Var operator()(Graph& g, Var queries, Var memory, const ColumnMask& key_mask,
                 bool causal) const;

  // Incremental path: keys/values are the projected memory rows (one row
  // per position); attends from a single query row over all of them.
  Tensor ProjectKeys(const Tensor& memory) const { return key_.Apply(memory); }
  Tensor ProjectValues(const Tensor& memory) const {
    return value_.Apply(memory);
  }
  Tensor Attend(const Tensor& query_input, const Tensor& keys,
                const Tensor& values, const ColumnMask& key_mask) const;

  int heads() const { return heads_; }

 private:
  int heads_ = 1;
  int dim_ = 0;
  Affine query_;
  Affine key_;
  Affine value_;
  Affine output_;
};

// Standard LSTM cell, gate order (input, forget, candidate, output).
class LstmCell {
 public:
  LstmCell() = default;
  LstmCell(ParamStore& store, const std::string& name, int input_dim,
           int hidden_dim, InitRng& rng);

  struct VarState {
    Var h;
    Var c;
  };
  struct State {
    Tensor h;
    Tensor c;
  };

  VarState operator()(Graph& g, Var x, const VarState& state) const;
  State Step(const Tensor& x, const State& state) const;
  int hidden_dim() const { return hidden_; }

 private:
  int hidden_ = 0;
  Affine input_;
  Parameter* recurrent_ = nullptr;
};

}  // namespace ssmt

#endif  // SSMT_NUMERICS_LAYERS_H_
