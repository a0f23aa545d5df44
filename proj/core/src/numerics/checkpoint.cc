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

#include "ssmt/numerics/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "ssmt/common/errors.h"

namespace ssmt {
namespace {

constexpr char kMagic[8] = {'S', 'S', 'M', 'T', 'C', 'K', 'P', 'T'};

template <typename UInt>
void PutLe(std::ostream& out, UInt v) {
  char buf[sizeof(UInt)];
  for (size_t i = 0; i < sizeof(UInt); ++i) {
    buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  }
  out.write(buf, sizeof(UInt));
}

template <typename UInt>
UInt GetLe(std::istream& in) {
  unsigned char buf[sizeof(UInt)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(UInt))) {
    throw DataError("truncated checkpoint");
  }
  UInt v = 0;
  for (size_t i = 0; i < sizeof(UInt); ++i) {
    v |= static_cast<UInt>(buf[i]) << (8 * i);
  }
  return v;
}

std::string GetBytes(std::istream& in, uint64_t n) {
  if (n > (uint64_t{1} << 32)) throw DataError("implausible checkpoint field");
  std::string s(n, '\0');
  if (n > 0 && !in.read(s.data(), static_cast<std::streamsize>(n))) {
    throw DataError("truncated checkpoint");
  }
  return s;
}

}  // namespace

const NamedArray* CheckpointData::Find(const std::string& name) const {
  for (const auto& a : arrays) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

void WriteCheckpoint(std::ostream& out, const CheckpointData& data) {
  out.write(kMagic, sizeof(kMagic));
  PutLe<uint32_t>(out, data.version);
  PutLe<uint64_t>(out, data.header.size());
  out.write(data.header.data(), static_cast<std::streamsize>(data.header.size()));
  PutLe<uint32_t>(out, static_cast<uint32_t>(data.arrays.size()));
  for (const auto& a : data.arrays) {
    PutLe<uint32_t>(out, static_cast<uint32_t>(a.name.size()));
    out.write(a.name.data(), static_cast<std::streamsize>(a.name.size()));
    out.put(static_cast<char>(a.type));
    PutLe<uint32_t>(out, static_cast<uint32_t>(a.values.rows()));
    PutLe<uint32_t>(out, static_cast<uint32_t>(a.values.cols()));
    for (Eigen::Index i = 0; i < a.values.size(); ++i) {
      const double v = a.values.data()[i];
      if (a.type == ArrayType::kFloat32) {
        PutLe<uint32_t>(out, std::bit_cast<uint32_t>(static_cast<float>(v)));
      } else {
        PutLe<uint64_t>(out, std::bit_cast<uint64_t>(v));
      }
    }
  }
  if (!out) throw DataError("checkpoint write failed");
}

CheckpointData ReadCheckpoint(std::istream& in) {
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw DataError("not a checkpoint file (bad magic)");
  }
  CheckpointData data;
  data.version = GetLe<uint32_t>(in);
  if (data.version != CheckpointData::kVersion) {
    throw DataError("unsupported checkpoint version " +
                    std::to_string(data.version));
  }
  data.header = GetBytes(in, GetLe<uint64_t>(in));
  const uint32_t count = GetLe<uint32_t>(in);
  for (uint32_t k = 0; k < count; ++k) {
    NamedArray a;
    a.name = GetBytes(in, GetLe<uint32_t>(in));
    const int type = in.get();
    if (type != 1 && type != 2) throw DataError("bad array type in " + a.name);
    a.type = static_cast<ArrayType>(type);
    const uint32_t rows = GetLe<uint32_t>(in);
    const uint32_t cols = GetLe<uint32_t>(in);
    a.values.resize(rows, cols);
    for (Eigen::Index i = 0; i < a.values.size(); ++i) {
      a.values.data()[i] =
          a.type == ArrayType::kFloat32
              ? static_cast<double>(std::bit_cast<float>(GetLe<uint32_t>(in)))
              : std::bit_cast<double>(GetLe<uint64_t>(in));
    }
    data.arrays.push_back(std::move(a));
  }
  return data;
}

void WriteCheckpointFile(const std::string& path, const CheckpointData& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  WriteCheckpoint(out, data);
}

CheckpointData ReadCheckpointFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  return ReadCheckpoint(in);
}

CheckpointData SnapshotParams(const ParamStore& store, std::string header,
                              ArrayType type, bool with_optimizer_state) {
  CheckpointData data;
  data.header = std::move(header);
  auto add = [&](const std::string& name, const Tensor& values) {
    NamedArray a{name, type, values};
    if (type == ArrayType::kFloat32) {
      a.values = values.cast<float>().cast<double>();
    }
    data.arrays.push_back(std::move(a));
  };
  for (int i = 0; i < store.size(); ++i) {
    const Parameter& p = store.at(i);
    add(p.name, p.value);
    if (with_optimizer_state) {
      add(p.name + "@adam_m", p.adam_m);
      add(p.name + "@adam_v", p.adam_v);
    }
  }
  return data;
}

void RestoreParams(const CheckpointData& data, ParamStore& store,
                   bool with_optimizer_state) {
  auto fetch = [&](const std::string& name, Tensor& dst) {
    const NamedArray* a = data.Find(name);
    if (a == nullptr) throw DataError("checkpoint lacks array " + name);
    if (a->values.rows() != dst.rows() || a->values.cols() != dst.cols()) {
      throw DataError("shape mismatch for array " + name);
    }
    dst = a->values;
  };
  for (int i = 0; i < store.size(); ++i) {
    Parameter& p = store.at(i);
    fetch(p.name, p.value);
    if (with_optimizer_state) {
      fetch(p.name + "@adam_m", p.adam_m);
      fetch(p.name + "@adam_v", p.adam_v);
    }
  }
}

}  // namespace ssmt
