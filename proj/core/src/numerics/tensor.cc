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

#include "ssmt/numerics/tensor.h"

namespace ssmt::kernels {

Tensor LogSoftmaxRows(const Tensor& x, const ColumnMask& mask) {
  Tensor out(x.rows(), x.cols());
  const bool masked = !mask.empty();
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    double max = kNegInf;
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      if (masked && mask[c]) continue;
      max = std::max(max, x(r, c));
    }
    double sum = 0.0;
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      if (masked && mask[c]) continue;
      sum += std::exp(x(r, c) - max);
    }
    const double log_norm = max + std::log(sum);
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      out(r, c) = (masked && mask[c]) ? kNegInf : x(r, c) - log_norm;
    }
  }
  return out;
}

Tensor SoftmaxRows(const Tensor& x, const ColumnMask& key_mask, bool causal,
                   int causal_offset) {
  Tensor out = Tensor::Zero(x.rows(), x.cols());
  const bool masked = !key_mask.empty();
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const Eigen::Index limit =
        causal ? std::min<Eigen::Index>(x.cols(), r + causal_offset + 1)
               : x.cols();
    double max = kNegInf;
    for (Eigen::Index c = 0; c < limit; ++c) {
      if (masked && key_mask[c]) continue;
      max = std::max(max, x(r, c));
    }
    if (max == kNegInf) continue;  // nothing to attend to
    double sum = 0.0;
    for (Eigen::Index c = 0; c < limit; ++c) {
      if (masked && key_mask[c]) continue;
      const double e = std::exp(x(r, c) - max);
      out(r, c) = e;
      sum += e;
    }
    out.row(r) /= sum;
  }
  return out;
}

Tensor LayerNorm(const Tensor& x, const Tensor& gain, const Tensor& bias,
                 double eps, Tensor* xhat, Tensor* inv_std) {
  const Eigen::Index n = x.cols();
  Tensor normalized(x.rows(), n);
  Tensor istd(x.rows(), 1);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double mean = x.row(r).mean();
    const double var = (x.row(r).array() - mean).square().sum() / n;
    istd(r, 0) = 1.0 / std::sqrt(var + eps);
    normalized.row(r) = (x.row(r).array() - mean) * istd(r, 0);
  }
  Tensor out = (normalized.array().rowwise() * gain.row(0).array())
                   .rowwise() +
               bias.row(0).array();
  if (xhat != nullptr) *xhat = std::move(normalized);
  if (inv_std != nullptr) *inv_std = std::move(istd);
  return out;
}

Tensor SinusoidalPositions(int first, int count, int dim) {
  Tensor out(count, dim);
  for (int p = 0; p < count; ++p) {
    const double pos = first + p;
    for (int i = 0; i < dim; ++i) {
      const double freq = std::pow(10000.0, -2.0 * (i / 2) / dim);
      out(p, i) = (i % 2 == 0) ? std::sin(pos * freq) : std::cos(pos * freq);
    }
  }
  return out;
}

}  // namespace ssmt::kernels
