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

#include "ssmt/metrics/segmentation_metrics.h"

#include <algorithm>
#include <set>

#include "ssmt/common/errors.h"
#include "ssmt/textproc/unicode.h"

namespace ssmt {

std::vector<std::pair<int, int>> SegmentedWord::Spans() const {
  std::vector<std::pair<int, int>> spans;
  int start = 0;
  for (int b : boundaries) {
    spans.emplace_back(start, b);
    start = b;
  }
  spans.emplace_back(start, static_cast<int>(word.size()));
  return spans;
}

std::string SegmentedWord::ToString(std::string_view delimiter) const {
  std::string out;
  size_t next = 0;
  for (size_t i = 0; i < word.size(); ++i) {
    if (next < boundaries.size() && boundaries[next] == static_cast<int>(i)) {
      out += delimiter;
      ++next;
    }
    out += EncodeUtf8(word[i]);
  }
  return out;
}

SegmentedWord ParseSegmentedWord(std::string_view text,
                                 std::string_view delimiter) {
  if (delimiter.empty()) throw UsageError("empty segmentation delimiter");
  SegmentedWord out;
  size_t pos = 0;
  while (true) {
    const size_t cut = text.find(delimiter, pos);
    const std::string_view piece =
        text.substr(pos, cut == std::string_view::npos ? cut : cut - pos);
    if (piece.empty()) {
      throw DataError("empty morpheme in \"" + std::string(text) + "\"");
    }
    out.word += DecodeUtf8(piece);
    if (cut == std::string_view::npos) break;
    out.boundaries.push_back(static_cast<int>(out.word.size()));
    pos = cut + delimiter.size();
  }
  return out;
}

std::vector<SegmentedWord> ParseGoldLines(const std::vector<std::string>& lines,
                                          std::string_view delimiter) {
  std::vector<SegmentedWord> out;
  for (const std::string& line : lines) {
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      out.push_back(ParseSegmentedWord(line, delimiter));
      continue;
    }
    SegmentedWord word =
        ParseSegmentedWord(std::string_view(line).substr(tab + 1), delimiter);
    if (word.word != DecodeUtf8(std::string_view(line).substr(0, tab))) {
      throw DataError("segmentation does not spell its surface form: " + line);
    }
    out.push_back(std::move(word));
  }
  return out;
}

ScoreReport ScoreReport::FromCounts(long tp, long fp, long fn) {
  ScoreReport r;
  r.true_positives = tp;
  r.false_positives = fp;
  r.false_negatives = fn;
  r.precision = tp + fp > 0 ? 100.0 * tp / (tp + fp) : 0.0;
  r.recall = tp + fn > 0 ? 100.0 * tp / (tp + fn) : 0.0;
  r.f1 = r.precision + r.recall > 0
             ? 2 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  return r;
}

namespace {

void CheckAligned(const std::vector<SegmentedWord>& pred,
                  const std::vector<SegmentedWord>& gold) {
  if (pred.size() != gold.size()) {
    throw DataError("predicted and gold word counts differ: " +
                    std::to_string(pred.size()) + " vs " +
                    std::to_string(gold.size()));
  }
  for (size_t i = 0; i < pred.size(); ++i) {
    if (pred[i].word != gold[i].word) {
      throw DataError("word mismatch at line " + std::to_string(i + 1) +
                      ": " + EncodeUtf8(pred[i].word) + " vs " +
                      EncodeUtf8(gold[i].word));
    }
  }
}

}  // namespace

ScoreReport BoundaryPrf(const std::vector<SegmentedWord>& pred,
                        const std::vector<SegmentedWord>& gold) {
  CheckAligned(pred, gold);
  long tp = 0, fp = 0, fn = 0;
  for (size_t i = 0; i < pred.size(); ++i) {
    const std::set<int> p(pred[i].boundaries.begin(), pred[i].boundaries.end());
    const std::set<int> g(gold[i].boundaries.begin(), gold[i].boundaries.end());
    for (int b : p) (g.count(b) ? tp : fp) += 1;
    for (int b : g) fn += p.count(b) ? 0 : 1;
  }
  return ScoreReport::FromCounts(tp, fp, fn);
}

ScoreReport MorphemePrf(const std::vector<SegmentedWord>& pred,
                        const std::vector<SegmentedWord>& gold) {
  CheckAligned(pred, gold);
  long tp = 0, fp = 0, fn = 0;
  for (size_t i = 0; i < pred.size(); ++i) {
    const auto ps = pred[i].Spans();
    const auto gs = gold[i].Spans();
    const std::set<std::pair<int, int>> g(gs.begin(), gs.end());
    const std::set<std::pair<int, int>> p(ps.begin(), ps.end());
    for (const auto& s : p) (g.count(s) ? tp : fp) += 1;
    for (const auto& s : g) fn += p.count(s) ? 0 : 1;
  }
  return ScoreReport::FromCounts(tp, fp, fn);
}

}  // namespace ssmt
