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

#ifndef SSMT_LATTICE_SEGMENT_LATTICE_H_
#define SSMT_LATTICE_SEGMENT_LATTICE_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ssmt/numerics/autodiff.h"
#include "ssmt/textproc/word_spans.h"

namespace ssmt {

// A candidate segment y[start, start + len).
struct Cell {
  int start = 0;
  int len = 0;
  int end() const { return start + len; }
  bool operator==(const Cell&) const = default;
};

// Semi-Markov segmentation lattice over a sequence of length n. A cell is
// valid when it has length <= max_len and lies inside one span; separators
// only admit their one-character cell. Cells are ordered by end position,
// then by start ascending (longest first), which is also the fixed
// summation order of the forward recursion.
class SegmentLattice {
 public:
  SegmentLattice() = default;
  SegmentLattice(const WordSpanMap& spans, int max_len);

  int length() const { return n_; }
  int max_len() const { return max_len_; }
  const std::vector<Cell>& cells() const { return cells_; }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  // Cells ending at exclusive end position e (1..n) occupy the contiguous
  // index range [first, last).
  int FirstCellEndingAt(int e) const { return end_offsets_[e - 1]; }
  int LastCellEndingAt(int e) const { return end_offsets_[e]; }
  // Cell indices starting at position s (0..n-1).
  std::span<const int> CellsStartingAt(int s) const {
    return by_start_[s];
  }
  // -1 if (start, len) is not a valid cell.
  int CellIndex(int start, int len) const;

  // Log-scores aligned with cells(); default -inf.
  std::vector<double>& scores() { return scores_; }
  const std::vector<double>& scores() const { return scores_; }

 private:
  int n_ = 0;
  int max_len_ = 1;
  std::vector<Cell> cells_;
  std::vector<int> end_offsets_;
  std::vector<std::vector<int>> by_start_;
  std::vector<double> scores_;
};

// alpha[0] = 0, alpha[e] = logsumexp over cells ending at e of
// alpha[start] + score. Throws NumericError if some alpha is -inf.
std::vector<double> ForwardTable(const SegmentLattice& lattice);
// log p(y | x) = alpha[n].
double ForwardMarginal(const SegmentLattice& lattice);

// Posterior probability of each cell, via forward-backward.
std::vector<double> CellPosteriors(const SegmentLattice& lattice);

struct ViterbiResult {
  // Exclusive end positions of the chosen segments, ascending; the last
  // equals n.
  std::vector<int> ends;
  double log_prob = 0.0;
};

// Max-product recursion with backpointers; ties go to the longer final
// segment.
ViterbiResult Viterbi(const SegmentLattice& lattice);

// Differentiable log marginal: scores is a column vector aligned with
// lattice.cells(); the backward pass propagates cell posteriors.
Var LogMarginal(Var scores, const SegmentLattice& lattice);

struct ScoredSegmentation {
  std::vector<int> ends;
  double log_prob = 0.0;
};

// Number of valid segmentations (as a double; may be large).
double CountSegmentations(const SegmentLattice& lattice);

// Every valid segmentation, each scored by the chain rule
// sum(score_segment(start, len)). Throws UsageError when more than limit
// segmentations exist.
std::vector<ScoredSegmentation> EnumerateAll(
    const SegmentLattice& lattice,
    const std::function<double(int start, int len)>& score_segment,
    size_t limit = 100000);

}  // namespace ssmt

#endif  // SSMT_LATTICE_SEGMENT_LATTICE_H_
