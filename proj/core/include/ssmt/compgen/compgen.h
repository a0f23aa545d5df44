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

#ifndef SSMT_COMPGEN_COMPGEN_H_
#define SSMT_COMPGEN_COMPGEN_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ssmt {

// A sentence as words, each word as its morphemes.
struct SegmentedSentence {
  std::vector<std::vector<std::string>> words;
};

// Splits on whitespace into words and each word on the delimiter into
// morphemes. Empty pieces are dropped.
SegmentedSentence ParseSegmentedSentence(std::string_view line,
                                         std::string_view delimiter = "-");

// Relative frequencies, keyed by unit.
using FreqDistribution = std::map<std::string, double>;

// Raw unit counts; the basis for every distribution.
struct UnitCounts {
  std::map<std::string, long> counts;
  long total = 0;

  void Add(const std::string& unit, long n = 1);
  FreqDistribution ToDistribution() const;
};

// Morphemes are atoms and words (concatenated morphemes) are compounds.
struct CorpusCounts {
  UnitCounts atoms;
  UnitCounts compounds;

  void Add(const SegmentedSentence& sentence);
};

struct Distributions {
  FreqDistribution atoms;
  FreqDistribution compounds;
};

// Throws DataError when the corpus has no words.
Distributions ComputeDistributions(
    const std::vector<SegmentedSentence>& corpus);

// Sum over the shared support of p^alpha * q^(1 - alpha). Throws UsageError
// unless 0 < alpha < 1.
double Chernoff(const FreqDistribution& p, const FreqDistribution& q,
                double alpha);

inline constexpr double kCompoundAlpha = 0.1;
inline constexpr double kAtomAlpha = 0.5;

// 1 - Chernoff(F(train), F(test)) with alpha 0.1 over compounds and 0.5 over
// atoms.
double CompoundDivergence(const std::vector<SegmentedSentence>& train,
                          const std::vector<SegmentedSentence>& test);
double AtomDivergence(const std::vector<SegmentedSentence>& train,
                      const std::vector<SegmentedSentence>& test);

struct SplitSpec {
  double target_compound_divergence = 0.2;
  int size = 300;
  int sample_size = 100;
  uint64_t seed = 1;

  // Throws UsageError on a non-positive size or sample size, or a target
  // outside [0, 1].
  void Validate() const;
};

// One greedy iteration: the sampled test indices, their objective values and
// the position of the chosen one.
struct SubsetStep {
  std::vector<int> candidates;
  std::vector<double> objectives;
  int chosen = 0;
};

struct SubsetResult {
  std::vector<int> indices;
  double compound_divergence = 0.0;
  double atom_divergence = 0.0;
  std::vector<SubsetStep> trace;
};

// Greedily grows a subset of test. Each iteration samples sample_size
// candidates without replacement from the unselected sentences and adds the
// one minimizing |D_C - target| + D_A of subset-plus-candidate against train.
// Ties go to the lowest test index. Throws DataError when test has fewer than
// spec.size sentences.
SubsetResult ExtractSubset(const std::vector<SegmentedSentence>& train,
                           const std::vector<SegmentedSentence>& test,
                           const SplitSpec& spec, bool record_trace = false);

struct GenbenchReport {
  SplitSpec spec;
  long train_size = 0;
  long test_size = 0;
  std::vector<int> indices;
  double compound_divergence = 0.0;
  double atom_divergence = 0.0;

  std::string ToJson() const;
  // Throws DataError on malformed input.
  static GenbenchReport FromJson(std::string_view json);
};

GenbenchReport MakeGenbenchReport(const SplitSpec& spec, long train_size,
                                  long test_size, const SubsetResult& result);

}  // namespace ssmt

#endif  // SSMT_COMPGEN_COMPGEN_H_
