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

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "ssmt/common/errors.h"
#include "ssmt/compgen/compgen.h"

namespace ssmt {
namespace {

SegmentedSentence S(const std::string& line) {
  return ParseSegmentedSentence(line);
}

std::vector<SegmentedSentence> RandomCorpus(int sentences, uint32_t seed,
                                            int morpheme_pool = 8) {
  static const char* kMorphemes[] = {"ndi", "ya", "qonda", "uku", "hamba",
                                     "si",  "ba", "nga",   "lo",  "ka"};
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> m(0, morpheme_pool - 1), parts(1, 3),
      words(1, 4);
  std::vector<SegmentedSentence> out;
  for (int s = 0; s < sentences; ++s) {
    std::string line;
    for (int w = words(rng); w > 0; --w) {
      for (int p = parts(rng); p > 0; --p) {
        line += kMorphemes[m(rng)];
        if (p > 1) line += "-";
      }
      line += " ";
    }
    out.push_back(S(line));
  }
  return out;
}

TEST(CompgenTest, ParseSentence) {
  const SegmentedSentence s = S("ndi-ya-qonda  uku-hamba x");
  ASSERT_EQ(s.words.size(), 3u);
  EXPECT_EQ(s.words[0], (std::vector<std::string>{"ndi", "ya", "qonda"}));
  EXPECT_EQ(s.words[2], std::vector<std::string>{"x"});
  EXPECT_TRUE(S("   ").words.empty());
}

TEST(CompgenTest, Distributions) {
  const Distributions d = ComputeDistributions({S("ndi-ya ndi-ya")});
  EXPECT_EQ(d.compounds, (FreqDistribution{{"ndiya", 1.0}}));
  EXPECT_EQ(d.atoms, (FreqDistribution{{"ndi", 0.5}, {"ya", 0.5}}));
  const Distributions point = ComputeDistributions({S("hamba")});
  EXPECT_EQ(point.atoms, (FreqDistribution{{"hamba", 1.0}}));
  EXPECT_EQ(point.compounds, (FreqDistribution{{"hamba", 1.0}}));
  EXPECT_THROW(ComputeDistributions({}), DataError);
  EXPECT_THROW(ComputeDistributions({S("")}), DataError);
}

TEST(CompgenTest, DistributionsSumToOneAndIgnoreOrder) {
  auto corpus = RandomCorpus(50, 4);
  const Distributions d = ComputeDistributions(corpus);
  for (const auto* dist : {&d.atoms, &d.compounds}) {
    double sum = 0;
    for (const auto& [unit, p] : *dist) {
      EXPECT_GE(p, 0.0);
      sum += p;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
  std::reverse(corpus.begin(), corpus.end());
  const Distributions r = ComputeDistributions(corpus);
  EXPECT_EQ(r.atoms, d.atoms);
  EXPECT_EQ(r.compounds, d.compounds);
}

TEST(CompgenTest, ChernoffDirectEvaluation) {
  const FreqDistribution p = {{"x", 0.9}, {"y", 0.1}};
  const FreqDistribution q = {{"x", 0.5}, {"y", 0.5}};
  const double direct = std::pow(0.9, 0.1) * std::pow(0.5, 0.9) +
                        std::pow(0.1, 0.1) * std::pow(0.5, 0.9);
  EXPECT_NEAR(Chernoff(p, q, 0.1), direct, 1e-12);
  EXPECT_NEAR(Chernoff(p, q, 0.1), 0.956, 5e-4);
  for (double a = 0.05; a < 1.0; a += 0.05) {
    EXPECT_EQ(Chernoff(p, p, a), 1.0);
    const double d = std::pow(0.9, a) * std::pow(0.5, 1 - a) +
                     std::pow(0.1, a) * std::pow(0.5, 1 - a);
    EXPECT_NEAR(Chernoff(p, q, a), d, 1e-12) << a;
  }
  EXPECT_EQ(Chernoff(p, {{"z", 1.0}}, 0.5), 0.0);
  EXPECT_THROW(Chernoff(p, q, 0.0), UsageError);
  EXPECT_THROW(Chernoff(p, q, 1.0), UsageError);
}

TEST(CompgenTest, Divergences) {
  const auto a = RandomCorpus(40, 1);
  EXPECT_EQ(CompoundDivergence(a, a), 0.0);
  EXPECT_EQ(AtomDivergence(a, a), 0.0);
  const std::vector<SegmentedSentence> v = {S("ndi-ya uku-hamba")};
  const std::vector<SegmentedSentence> w = {S("ya-ndi hamba-uku")};
  EXPECT_DOUBLE_EQ(CompoundDivergence(v, w), 1.0);
  EXPECT_LT(AtomDivergence(v, w), 1.0);
  const auto b = RandomCorpus(40, 2, 10);
  for (double d : {CompoundDivergence(a, b), AtomDivergence(a, b)}) {
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 1.0);
  }
}

TEST(CompgenTest, SpecValidation) {
  SplitSpec spec;
  spec.size = 0;
  EXPECT_THROW(spec.Validate(), UsageError);
  spec = SplitSpec();
  spec.sample_size = 0;
  EXPECT_THROW(spec.Validate(), UsageError);
  spec = SplitSpec();
  spec.target_compound_divergence = 1.5;
  EXPECT_THROW(spec.Validate(), UsageError);
  spec = SplitSpec();
  spec.size = 11;
  EXPECT_THROW(ExtractSubset(RandomCorpus(5, 1), RandomCorpus(10, 2), spec),
               DataError);
}

SplitSpec SmallSpec(double target, int size, uint64_t seed = 5) {
  SplitSpec spec;
  spec.target_compound_divergence = target;
  spec.size = size;
  spec.sample_size = 10;
  spec.seed = seed;
  return spec;
}

std::vector<SegmentedSentence> Select(const std::vector<SegmentedSentence>& c,
                                      const std::vector<int>& idx) {
  std::vector<SegmentedSentence> out;
  for (int i : idx) out.push_back(c[i]);
  return out;
}

TEST(CompgenTest, SubsetReportMatchesRecomputation) {
  const auto train = RandomCorpus(80, 11);
  const auto test = RandomCorpus(120, 12, 10);
  const SubsetResult r = ExtractSubset(train, test, SmallSpec(0.3, 40));
  ASSERT_EQ(r.indices.size(), 40u);
  std::vector<int> sorted = r.indices;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const auto subset = Select(test, r.indices);
  EXPECT_NEAR(r.compound_divergence, CompoundDivergence(train, subset), 1e-12);
  EXPECT_NEAR(r.atom_divergence, AtomDivergence(train, subset), 1e-12);
}

TEST(CompgenTest, SubsetIsDeterministicAndIgnoresTrainOrder) {
  auto train = RandomCorpus(80, 21);
  const auto test = RandomCorpus(100, 22, 10);
  const SplitSpec spec = SmallSpec(0.2, 30, 9);
  const SubsetResult a = ExtractSubset(train, test, spec);
  const SubsetResult b = ExtractSubset(train, test, spec);
  EXPECT_EQ(a.indices, b.indices);
  std::mt19937 rng(3);
  std::shuffle(train.begin(), train.end(), rng);
  const SubsetResult c = ExtractSubset(train, test, spec);
  EXPECT_EQ(a.indices, c.indices);
  EXPECT_DOUBLE_EQ(a.compound_divergence, c.compound_divergence);
  EXPECT_NE(ExtractSubset(train, test, SmallSpec(0.2, 30, 10)).indices,
            a.indices);
}

TEST(CompgenTest, ReplayedStepsAreLocallyOptimal) {
  const auto train = RandomCorpus(60, 31);
  const auto test = RandomCorpus(80, 32, 10);
  const SplitSpec spec = SmallSpec(0.25, 20);
  const SubsetResult r = ExtractSubset(train, test, spec, true);
  ASSERT_EQ(r.trace.size(), 20u);
  std::vector<int> prefix;
  for (const SubsetStep& step : r.trace) {
    ASSERT_EQ(step.candidates.size(), 10u);
    double best = 1e9;
    for (size_t i = 0; i < step.candidates.size(); ++i) {
      std::vector<int> trial = prefix;
      trial.push_back(step.candidates[i]);
      const auto subset = Select(test, trial);
      const double value = std::abs(CompoundDivergence(train, subset) -
                                    spec.target_compound_divergence) +
                           AtomDivergence(train, subset);
      EXPECT_NEAR(step.objectives[i], value, 1e-9);
      best = std::min(best, value);
    }
    EXPECT_NEAR(step.objectives[step.chosen], best, 1e-9);
    prefix.push_back(step.candidates[step.chosen]);
  }
  EXPECT_EQ(prefix, r.indices);
}

TEST(CompgenTest, ZeroTargetOnCopiedTrainSample) {
  const auto train = RandomCorpus(200, 41, 6);
  const std::vector<SegmentedSentence> test(train.begin(), train.begin() + 150);
  SplitSpec spec = SmallSpec(0.0, 100);
  spec.sample_size = 30;
  const SubsetResult r = ExtractSubset(train, test, spec);
  EXPECT_LT(r.compound_divergence, 0.1);
  EXPECT_LT(r.atom_divergence, 0.05);
}

TEST(CompgenTest, ReportRoundTrip) {
  const auto train = RandomCorpus(30, 51);
  const auto test = RandomCorpus(30, 52);
  const SplitSpec spec = SmallSpec(0.3, 10, 77);
  const SubsetResult r = ExtractSubset(train, test, spec);
  const GenbenchReport report = MakeGenbenchReport(spec, 30, 30, r);
  EXPECT_EQ(report.spec.seed, 77u);
  EXPECT_EQ(report.spec.size, 10);
  EXPECT_DOUBLE_EQ(report.spec.target_compound_divergence, 0.3);
  const GenbenchReport back = GenbenchReport::FromJson(report.ToJson());
  EXPECT_EQ(back.indices, report.indices);
  EXPECT_EQ(back.spec.sample_size, 10);
  EXPECT_DOUBLE_EQ(back.compound_divergence, report.compound_divergence);
  EXPECT_DOUBLE_EQ(back.atom_divergence, report.atom_divergence);
  EXPECT_EQ(back.ToJson(), report.ToJson());
  EXPECT_NEAR(back.compound_divergence,
              CompoundDivergence(train, Select(test, back.indices)), 1e-12);
  EXPECT_THROW(GenbenchReport::FromJson("{\"spec\": 1}"), DataError);
  EXPECT_THROW(GenbenchReport::FromJson("not json"), DataError);
}

}  // namespace
}  // namespace ssmt
