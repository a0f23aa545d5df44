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

#include "ssmt/numerics/param_store.h"

#include "ssmt/common/errors.h"

namespace ssmt {

Parameter& ParamStore::Add(const std::string& name, Tensor init) {
  if (by_name_.contains(name)) {
    throw UsageError("duplicate parameter name: " + name);
  }
  auto param = std::make_unique<Parameter>();
  param->name = name;
  param->index = size();
  param->adam_m = Tensor::Zero(init.rows(), init.cols());
  param->adam_v = Tensor::Zero(init.rows(), init.cols());
  param->value = std::move(init);
  by_name_.emplace(name, param->index);
  params_.push_back(std::move(param));
  return *params_.back();
}

Parameter& ParamStore::Get(const std::string& name) {
  Parameter* p = Find(name);
  if (p == nullptr) throw UsageError("unknown parameter: " + name);
  return *p;
}

const Parameter& ParamStore::Get(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw UsageError("unknown parameter: " + name);
  return *params_[it->second];
}

Parameter* ParamStore::Find(const std::string& name) {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : params_[it->second].get();
}

int64_t ParamStore::num_scalars() const {
  int64_t total = 0;
  for (const auto& p : params_) total += p->value.size();
  return total;
}

void ParamStore::CopyFrom(const ParamStore& other) {
  if (other.size() != size()) throw UsageError("parameter layout mismatch");
  for (int i = 0; i < size(); ++i) {
    Parameter& dst = *params_[i];
    const Parameter& src = other.at(i);
    if (dst.name != src.name || dst.value.rows() != src.value.rows() ||
        dst.value.cols() != src.value.cols()) {
      throw UsageError("parameter layout mismatch at " + dst.name);
    }
    dst.value = src.value;
    dst.adam_m = src.adam_m;
    dst.adam_v = src.adam_v;
  }
  adam_step_ = other.adam_step_;
}

Gradients::Gradients(const ParamStore& store) {
  grads_.reserve(store.size());
  for (int i = 0; i < store.size(); ++i) {
    const Tensor& v = store.at(i).value;
    grads_.push_back(Tensor::Zero(v.rows(), v.cols()));
  }
}

void Gradients::SetZero() {
  for (auto& g : grads_) g.setZero();
}

void Gradients::Add(const Gradients& other) {
  for (int i = 0; i < size(); ++i) grads_[i] += other.grads_[i];
}

void Gradients::Scale(double factor) {
  for (auto& g : grads_) g *= factor;
}

double Gradients::Norm() const {
  double sq = 0.0;
  for (const auto& g : grads_) sq += g.squaredNorm();
  return std::sqrt(sq);
}

}  // namespace ssmt
