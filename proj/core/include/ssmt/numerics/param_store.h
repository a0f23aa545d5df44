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

#ifndef SSMT_NUMERICS_PARAM_STORE_H_
#define SSMT_NUMERICS_PARAM_STORE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ssmt/numerics/tensor.h"

namespace ssmt {

struct Parameter {
  std::string name;
  int index = 0;
  Tensor value;
  // Adam moments, shape-matched to value.
  Tensor adam_m;
  Tensor adam_v;
};

// Named trainable tensors plus optimizer state. Parameter addresses are
// stable for the lifetime of the store.
class ParamStore {
 public:
  ParamStore() = default;
  ParamStore(const ParamStore&) = delete;
  ParamStore& operator=(const ParamStore&) = delete;

  // Throws UsageError on a duplicate name.
  Parameter& Add(const std::string& name, Tensor init);
  Parameter& Get(const std::string& name);
  const Parameter& Get(const std::string& name) const;
  Parameter* Find(const std::string& name);

  int size() const { return static_cast<int>(params_.size()); }
  Parameter& at(int index) { return *params_[index]; }
  const Parameter& at(int index) const { return *params_[index]; }
  int64_t num_scalars() const;

  int64_t adam_step() const { return adam_step_; }
  void set_adam_step(int64_t step) { adam_step_ = step; }

  // Copies values (and optimizer state) from a store with the same layout.
  void CopyFrom(const ParamStore& other);

 private:
  std::vector<std::unique_ptr<Parameter>> params_;
  std::map<std::string, int> by_name_;
  int64_t adam_step_ = 0;
};

// Per-parameter gradient buffers aligned with a ParamStore's indices.
class Gradients {
 public:
  Gradients() = default;
  explicit Gradients(const ParamStore& store);

  int size() const { return static_cast<int>(grads_.size()); }
  Tensor& operator[](int index) { return grads_[index]; }
  const Tensor& operator[](int index) const { return grads_[index]; }

  void SetZero();
  void Add(const Gradients& other);
  void Scale(double factor);
  double Norm() const;

 private:
  std::vector<Tensor> grads_;
};

}  // namespace ssmt

#endif  // SSMT_NUMERICS_PARAM_STORE_H_
