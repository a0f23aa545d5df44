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

#include "ssmt/numerics/adam.h"

#include <cmath>

#include "ssmt/common/errors.h"

namespace ssmt {

void AdamStep(ParamStore& store, const Gradients& grads,
              const AdamOptions& options) {
  if (grads.size() != store.size()) {
    throw UsageError("gradient buffer does not match parameter store");
  }
  for (int i = 0; i < store.size(); ++i) {
    const Tensor& g = grads[i];
    const Tensor& v = store.at(i).value;
    if (g.rows() != v.rows() || g.cols() != v.cols()) {
      throw UsageError("gradient shape mismatch for " + store.at(i).name);
    }
    if (!g.allFinite()) {
      throw NumericError("non-finite gradient in parameter " +
                         store.at(i).name);
    }
  }
  const int64_t step = store.adam_step() + 1;
  store.set_adam_step(step);
  const double correction1 = 1.0 - std::pow(options.beta1, step);
  const double correction2 = 1.0 - std::pow(options.beta2, step);
  for (int i = 0; i < store.size(); ++i) {
    Parameter& p = store.at(i);
    const Tensor& g = grads[i];
    p.adam_m = options.beta1 * p.adam_m + (1.0 - options.beta1) * g;
    p.adam_v = options.beta2 * p.adam_v +
               (1.0 - options.beta2) * g.cwiseProduct(g);
    p.value.array() -=
        options.lr * (p.adam_m.array() / correction1) /
        ((p.adam_v.array() / correction2).sqrt() + options.eps);
  }
}

}  // namespace ssmt
