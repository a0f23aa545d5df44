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

#ifndef SSMT_NUMERICS_ADAM_H_
#define SSMT_NUMERICS_ADAM_H_

#include "ssmt/numerics/param_store.h"

namespace ssmt {

struct AdamOptions {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// One bias-corrected Adam update using the moments stored in the params.
// Throws NumericError naming the first parameter with a non-finite gradient;
// the store is left untouched in that case.
void AdamStep(ParamStore& store, const Gradients& grads,
              const AdamOptions& options);

}  // namespace ssmt

#endif  // SSMT_NUMERICS_ADAM_H_
