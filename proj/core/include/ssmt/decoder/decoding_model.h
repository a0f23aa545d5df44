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

#ifndef SSMT_DECODER_DECODING_MODEL_H_
#define SSMT_DECODER_DECODING_MODEL_H_

#include <memory>
#include <span>
#include <vector>

namespace ssmt {

// Opaque per-hypothesis state owned by a DecodingModel. A node sits either
// at a subword boundary or inside an open subword u = y[k, j).
class DecodeNode {
 public:
  virtual ~DecodeNode() = default;
  // |u|; 0 at a boundary.
  virtual int open_length() const = 0;
  // True after EOT; terminal nodes are never expanded.
  virtual bool finished() const = 0;
};

// Joint log masses for appending each candidate character y to a node,
// aligned with DecodingModel::candidates().
//
// At a boundary with history y_<j:
//   ends[y]      = log p(s = y)                         (end-end)
//   continues[y] = log sum over s = y..., |s| > 1 of p(s)   (end-con)
// Inside an open subword u started at k:
//   ends[y]      = log p(s = u y)                       (con-end)
//   continues[y] = log sum over s = u y..., |s| > |u y| of p(s)  (con-con)
// All masses are conditioned on y_<k and x. Forbidden cases (separators
// inside a longer subword, continuing past the maximum length) are -inf.
struct NextCharScores {
  std::vector<double> ends;
  std::vector<double> continues;
};

// What the decoders need from a subword-segmental model. The neural model
// and hand-specified score tables both implement it.
class DecodingModel {
 public:
  virtual ~DecodingModel() = default;

  // Character ids that may be generated, in a fixed order.
  virtual std::span<const int> candidates() const = 0;
  virtual int end_of_translation() const = 0;
  virtual int max_len() const = 0;

  // Boundary node before any output.
  virtual std::shared_ptr<const DecodeNode> Root() const = 0;
  virtual NextCharScores Expand(const DecodeNode& node) const = 0;
  // Node after appending char_id; `ends` closes the subword with it.
  virtual std::shared_ptr<const DecodeNode> Child(const DecodeNode& node,
                                                  int char_id,
                                                  bool ends) const = 0;
};

}  // namespace ssmt

#endif  // SSMT_DECODER_DECODING_MODEL_H_
