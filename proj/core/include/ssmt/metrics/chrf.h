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

#ifndef SSMT_METRICS_CHRF_H_
#define SSMT_METRICS_CHRF_H_

#include <string_view>
#include <vector>

namespace ssmt {

// Character n-gram statistics of one or more sentence pairs, per order.
struct ChrfStats {
  explicit ChrfStats(int max_order = 6)
      : hyp(max_order, 0), ref(max_order, 0), match(max_order, 0) {}

  int max_order() const { return static_cast<int>(hyp.size()); }
  ChrfStats& operator+=(const ChrfStats& other);

  std::vector<long> hyp;
  std::vector<long> ref;
  std::vector<long> match;
};

// N-gram counts over the code points of hyp and ref with all whitespace
// removed.
ChrfStats ChrfSentenceStats(std::string_view hyp, std::string_view ref,
                            int max_order = 6);

// chrF in [0, 100]: precision and recall are averaged over the orders for
// which both sides have n-grams, then combined as an F-beta score.
double ChrfFromStats(const ChrfStats& stats, double beta = 2.0);

double Chrf(std::string_view hyp, std::string_view ref, int max_order = 6,
            double beta = 2.0);

// Corpus chrF: statistics are summed over sentences before scoring. Throws
// DataError when the lists differ in length.
double CorpusChrf(const std::vector<std::string>& hyps,
                  const std::vector<std::string>& refs, int max_order = 6,
                  double beta = 2.0);

}  // namespace ssmt

#endif  // SSMT_METRICS_CHRF_H_
