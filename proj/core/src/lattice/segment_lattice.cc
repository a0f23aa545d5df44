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

#include "ssmt/lattice/segment_lattice.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ssmt/common/errors.h"

namespace ssmt {

SegmentLattice::SegmentLattice(const WordSpanMap& spans, int max_len)
    : n_(spans.length()), max_len_(max_len) {
  if (max_len < 1) throw UsageError("max segment length must be >= 1");
  end_offsets_.assign(n_ + 1, 0);
  by_start_.resize(n_);
  for (int k = 0; k < n_; ++k) {
    const int first = LongestSegmentStart(spans, k, max_len);
    for (int j = first; j <= k; ++j) {
      by_start_[j].push_back(static_cast<int>(cells_.size()));
      cells_.push_back({j, k - j + 1});
    }
    end_offsets_[k + 1] = static_cast<int>(cells_.size());
  }
  scores_.assign(cells_.size(), kNegInf);
}

int SegmentLattice::CellIndex(int start, int len) const {
  if (start < 0 || start >= n_ || len < 1) return -1;
  for (int id : by_start_[start]) {
    if (cells_[id].len == len) return id;
  }
  return -1;
}

std::vector<double> ForwardTable(const SegmentLattice& lattice) {
  const int n = lattice.length();
  const auto& cells = lattice.cells();
  const auto& scores = lattice.scores();
  std::vector<double> alpha(n + 1, kNegInf);
  alpha[0] = 0.0;
  for (int e = 1; e <= n; ++e) {
    double acc = kNegInf;
    for (int id = lattice.FirstCellEndingAt(e); id < lattice.LastCellEndingAt(e);
         ++id) {
      acc = kernels::LogAddExp(acc, alpha[cells[id].start] + scores[id]);
    }
    if (acc == kNegInf || std::isnan(acc)) {
      throw NumericError("no valid segmentation reaches position " +
                         std::to_string(e));
    }
    alpha[e] = acc;
  }
  return alpha;
}

double ForwardMarginal(const SegmentLattice& lattice) {
  if (lattice.length() == 0) return 0.0;
  return ForwardTable(lattice).back();
}

namespace {

std::vector<double> BackwardTable(const SegmentLattice& lattice) {
  const int n = lattice.length();
  const auto& cells = lattice.cells();
  const auto& scores = lattice.scores();
  std::vector<double> beta(n + 1, kNegInf);
  beta[n] = 0.0;
  for (int s = n - 1; s >= 0; --s) {
    double acc = kNegInf;
    for (int id : lattice.CellsStartingAt(s)) {
      acc = kernels::LogAddExp(acc, scores[id] + beta[cells[id].end()]);
    }
    beta[s] = acc;
  }
  return beta;
}

}  // namespace

std::vector<double> CellPosteriors(const SegmentLattice& lattice) {
  const std::vector<double> alpha = ForwardTable(lattice);
  const std::vector<double> beta = BackwardTable(lattice);
  const double log_z = alpha.back();
  const auto& cells = lattice.cells();
  const auto& scores = lattice.scores();
  std::vector<double> post(cells.size(), 0.0);
  for (size_t id = 0; id < cells.size(); ++id) {
    const double a = alpha[cells[id].start];
    const double b = beta[cells[id].end()];
    if (a == kNegInf || b == kNegInf || scores[id] == kNegInf) continue;
    post[id] = std::exp(a + scores[id] + b - log_z);
  }
  return post;
}

ViterbiResult Viterbi(const SegmentLattice& lattice) {
  const int n = lattice.length();
  const auto& cells = lattice.cells();
  const auto& scores = lattice.scores();
  std::vector<double> best(n + 1, kNegInf);
  std::vector<int> back(n + 1, -1);
  best[0] = 0.0;
  for (int e = 1; e <= n; ++e) {
    // Cells come longest first, so a strict comparison keeps the longer
    // final segment on ties.
    for (int id = lattice.FirstCellEndingAt(e); id < lattice.LastCellEndingAt(e);
         ++id) {
      const double v = best[cells[id].start] + scores[id];
      if (v > best[e]) {
        best[e] = v;
        back[e] = id;
      }
    }
    if (back[e] < 0) {
      throw NumericError("no valid segmentation reaches position " +
                         std::to_string(e));
    }
  }
  ViterbiResult result;
  result.log_prob = best[n];
  for (int e = n; e > 0; e = cells[back[e]].start) result.ends.push_back(e);
  std::reverse(result.ends.begin(), result.ends.end());
  return result;
}

Var LogMarginal(Var scores, const SegmentLattice& lattice) {
  if (scores.cols() != 1 || scores.rows() != lattice.num_cells()) {
    throw UsageError("LogMarginal: score vector does not match lattice");
  }
  auto structure = std::make_shared<SegmentLattice>(lattice);
  const Tensor& s = scores.value();
  for (int i = 0; i < lattice.num_cells(); ++i) {
    structure->scores()[i] = s(i, 0);
  }
  Tensor out(1, 1);
  out(0, 0) = ForwardMarginal(*structure);
  return scores.graph->AddNode(
      std::move(out), {scores}, [scores, structure](Graph& g, int self) {
        const double upstream = g.grad(self)(0, 0);
        const std::vector<double> post = CellPosteriors(*structure);
        Tensor& ds = g.GradRef(scores.id);
        for (size_t i = 0; i < post.size(); ++i) ds(i, 0) += upstream * post[i];
      });
}

double CountSegmentations(const SegmentLattice& lattice) {
  const int n = lattice.length();
  std::vector<double> count(n + 1, 0.0);
  count[0] = 1.0;
  const auto& cells = lattice.cells();
  for (int e = 1; e <= n; ++e) {
    for (int id = lattice.FirstCellEndingAt(e); id < lattice.LastCellEndingAt(e);
         ++id) {
      count[e] += count[cells[id].start];
    }
  }
  return count[n];
}

std::vector<ScoredSegmentation> EnumerateAll(
    const SegmentLattice& lattice,
    const std::function<double(int start, int len)>& score_segment,
    size_t limit) {
  const double total = CountSegmentations(lattice);
  if (total > static_cast<double>(limit)) {
    throw UsageError("segmentation count " + std::to_string(total) +
                     " exceeds the enumeration limit " + std::to_string(limit));
  }
  std::vector<ScoredSegmentation> out;
  out.reserve(static_cast<size_t>(total));
  std::vector<int> ends;
  const auto& cells = lattice.cells();
  std::function<void(int, double)> recurse = [&](int pos, double logp) {
    if (pos == lattice.length()) {
      out.push_back({ends, logp});
      return;
    }
    for (int id : lattice.CellsStartingAt(pos)) {
      const Cell& c = cells[id];
      ends.push_back(c.end());
      recurse(c.end(), logp + score_segment(c.start, c.len));
      ends.pop_back();
    }
  };
  recurse(0, 0.0);
  return out;
}

}  // namespace ssmt
