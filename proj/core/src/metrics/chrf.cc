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

#include "ssmt/metrics/chrf.h"

#include <algorithm>
#include <map>
#include <string>

#include "ssmt/common/errors.h"
#include "ssmt/textproc/unicode.h"

namespace ssmt {
namespace {

std::u32string StripWhitespace(std::string_view text) {
  std::u32string out;
  for (char32_t c : DecodeUtf8(text)) {
    if (!IsWhitespaceCodepoint(c)) out.push_back(c);
  }
  return out;
}

std::map<std::u32string_view, long> Ngrams(const std::u32string& s, int n) {
  std::map<std::u32string_view, long> counts;
  const std::u32string_view view(s);
  for (size_t i = 0; i + n <= s.size(); ++i) ++counts[view.substr(i, n)];
  return counts;
}

}  // namespace

ChrfStats& ChrfStats::operator+=(const ChrfStats& other) {
  if (other.max_order() != max_order()) {
    throw UsageError("chrF statistics with different orders");
  }
  for (int i = 0; i < max_order(); ++i) {
    hyp[i] += other.hyp[i];
    ref[i] += other.ref[i];
    match[i] += other.match[i];
  }
  return *this;
}

ChrfStats ChrfSentenceStats(std::string_view hyp, std::string_view ref,
                            int max_order) {
  if (max_order < 1) throw UsageError("chrF order must be >= 1");
  const std::u32string h = StripWhitespace(hyp);
  const std::u32string r = StripWhitespace(ref);
  ChrfStats stats(max_order);
  for (int n = 1; n <= max_order; ++n) {
    const auto hc = Ngrams(h, n);
    const auto rc = Ngrams(r, n);
    long hyp_total = 0;
    long match = 0;
    for (const auto& [gram, count] : hc) {
      hyp_total += count;
      auto it = rc.find(gram);
      if (it != rc.end()) match += std::min(count, it->second);
    }
    long ref_total = 0;
    for (const auto& entry : rc) ref_total += entry.second;
    stats.hyp[n - 1] = hyp_total;
    stats.ref[n - 1] = ref_total;
    stats.match[n - 1] = match;
  }
  return stats;
}

double ChrfFromStats(const ChrfStats& stats, double beta) {
  double precision = 0.0;
  double recall = 0.0;
  int effective = 0;
  for (int i = 0; i < stats.max_order(); ++i) {
    if (stats.hyp[i] > 0 && stats.ref[i] > 0) {
      precision += static_cast<double>(stats.match[i]) / stats.hyp[i];
      recall += static_cast<double>(stats.match[i]) / stats.ref[i];
      ++effective;
    }
  }
  if (effective == 0) return 0.0;
  precision /= effective;
  recall /= effective;
  if (precision + recall == 0.0) return 0.0;
  const double b2 = beta * beta;
  return 100.0 * (1 + b2) * precision * recall / (b2 * precision + recall);
}

double Chrf(std::string_view hyp, std::string_view ref, int max_order,
            double beta) {
  return ChrfFromStats(ChrfSentenceStats(hyp, ref, max_order), beta);
}

double CorpusChrf(const std::vector<std::string>& hyps,
                  const std::vector<std::string>& refs, int max_order,
                  double beta) {
  if (hyps.size() != refs.size()) {
    throw DataError("hypothesis and reference counts differ: " +
                    std::to_string(hyps.size()) + " vs " +
                    std::to_string(refs.size()));
  }
  ChrfStats total(max_order);
  for (size_t i = 0; i < hyps.size(); ++i) {
    total += ChrfSentenceStats(hyps[i], refs[i], max_order);
  }
  return ChrfFromStats(total, beta);
}

}  // namespace ssmt
