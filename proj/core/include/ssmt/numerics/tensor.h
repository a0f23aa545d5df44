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

#ifndef SSMT_NUMERICS_TENSOR_H_
#define SSMT_NUMERICS_TENSOR_H_

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace ssmt {

// Dense row-major matrix of doubles. Vectors are 1 x n (rows) or n x 1.
using Tensor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Column mask: a nonzero entry excludes that column.
using ColumnMask = std::vector<uint8_t>;

namespace kernels {

inline double LogAddExp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  return a > b ? a + std::log1p(std::exp(b - a))
               : b + std::log1p(std::exp(a - b));
}

// Left-to-right pairwise fold.
inline double LogSumExp(std::span<const double> values) {
  double acc = kNegInf;
  for (double v : values) acc = LogAddExp(acc, v);
  return acc;
}

inline double Sigmoid(double x) {
  return x >= 0 ? 1.0 / (1.0 + std::exp(-x))
                : std::exp(x) / (1.0 + std::exp(x));
}

// log(sigmoid(x)) without overflow.
inline double LogSigmoid(double x) {
  return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

// Row-wise log-softmax; masked columns come out as -inf.
Tensor LogSoftmaxRows(const Tensor& x, const ColumnMask& mask = {});

// Row-wise softmax with optional excluded key columns and a causal mask
// (row i attends to columns <= i + causal_offset).
Tensor SoftmaxRows(const Tensor& x, const ColumnMask& key_mask, bool causal,
                   int causal_offset = 0);

// Row-wise layer normalization. xhat and inv_std receive intermediates when
// non-null.
Tensor LayerNorm(const Tensor& x, const Tensor& gain, const Tensor& bias,
                 double eps, Tensor* xhat = nullptr, Tensor* inv_std = nullptr);

Tensor SinusoidalPositions(int first, int count, int dim);

}  // namespace kernels
}  // namespace ssmt

#endif  // SSMT_NUMERICS_TENSOR_H_
