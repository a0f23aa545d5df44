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

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "ssmt/common/errors.h"
#include "ssmt/lattice/segment_lattice.h"
#include "ssmt/model/segmental_model.h"
#include "ssmt/numerics/autodiff.h"
#include "tiny_model.h"

namespace ssmt {
namespace {

constexpr int kA = CharVocab::kNumSpecials + 1;
constexpr int kB = CharVocab::kNumSpecials + 2;
constexpr int kSpace = CharVocab::kNumSpecials;
constexpr int kEot = CharVocab::kEot;

const std::vector<int> kSource = {2, 5, 3};

TEST(SegmentalModelTest, EncodeSourceShapes) {
  const auto model = MakeTinyModel();
  EXPECT_EQ(model->Encode(std::vector<int>{3}).length(), 1);
  EXPECT_EQ(model->Encode(kSource).length(), 3);
  EXPECT_THROW(model->Encode(std::vector<int>{}), UsageError);
}

TEST(SegmentalModelTest, EncodingIsDeterministic) {
  const auto model = MakeTinyModel();
  EXPECT_EQ(model->Encode(kSource).memory, model->Encode(kSource).memory);
}

TEST(SegmentalModelTest, PaddingSuffixDoesNotLeak) {
  const auto model = MakeTinyModel();
  const SourceEncoding plain = model->Encode(std::vector<int>{2, 5, 3, 0});
  const SourceEncoding padded = model->Encode(std::vector<int>{2, 5, 3, 0, 0});
  EXPECT_TRUE(plain.memory.topRows(3).isApprox(padded.memory.topRows(3),
                                               1e-12));
}

TEST(SegmentalModelTest, EmptyPrefixGivesStartState) {
  const auto model = MakeTinyModel();
  const SourceEncoding enc = model->Encode(kSource);
  const DecoderState state = model->Start(enc);
  EXPECT_EQ(state.length(), 0);
  EXPECT_EQ(state.keys[0].rows(), 1);
}

TEST(SegmentalModelTest, IncrementalMatchesFullHistory) {
  const auto model = MakeTinyModel();
  const std::vector<int> prefix = {kA, kB, kSpace, kB, kA};
  const SourceEncoding enc = model->Encode(kSource);
  Graph g(false);
  const Var memory = model->EncodeSource(g, kSource);
  const Tensor full =
      model->DecodeHistory(g, prefix, memory, enc.pad_mask).value();
  DecoderState state = model->Start(enc);
  for (size_t i = 0; i <= prefix.size(); ++i) {
    EXPECT_TRUE(state.hidden.isApprox(full.row(i), 1e-9)) << "row " << i;
    if (i < prefix.size()) state = model->Extend(enc, state, prefix[i]);
  }
}

TEST(SegmentalModelTest, HistoryIsCausal) {
  const auto model = MakeTinyModel();
  const SourceEncoding enc = model->Encode(kSource);
  const DecoderState a = model->DecodePrefix(enc, std::vector<int>{kA, kB});
  const DecoderState b = model->DecodePrefix(enc, std::vector<int>{kA, kB, kA});
  const DecoderState c = model->DecodePrefix(enc, std::vector<int>{kA, kA});
  const DecoderState ab = model->DecodePrefix(enc, std::vector<int>{kA});
  EXPECT_TRUE(b.keys[0].topRows(3).isApprox(a.keys[0], 1e-12));
  EXPECT_TRUE(ab.hidden.isApprox(
      model->DecodePrefix(enc, std::vector<int>{kA}).hidden, 0));
  EXPECT_FALSE(a.hidden.isApprox(c.hidden, 1e-6));
}

TEST(SegmentalModelTest, GateInOpenInterval) {
  const auto model = MakeTinyModel(2, 5);
  std::mt19937 rng(3);
  const SourceEncoding enc = model->Encode(kSource);
  DecoderState state = model->Start(enc);
  for (int i = 0; i < 20; ++i) {
    const double g = model->Gate(state);
    EXPECT_GT(g, 0.0);
    EXPECT_LT(g, 1.0);
    state = model->Extend(enc, state, kEot + 1 + rng() % 3);
  }
}

TEST(SegmentalModelTest, ZeroGateHeadGivesHalf) {
  auto model = MakeTinyModel();
  model->params().Get("gate.w").value.setZero();
  const DecoderState state = model->Start(model->Encode(kSource));
  EXPECT_DOUBLE_EQ(model->Gate(state), 0.5);
}

TEST(SegmentalModelTest, CharPathNormalizes) {
  for (int m = 1; m <= 3; ++m) {
    const auto model = MakeTinyModel(m, 7);
    const SourceEncoding enc = model->Encode(kSource);
    const SegmentContext ctx =
        model->Context(model->DecodePrefix(enc, std::vector<int>{kB}));
    double total = 0.0;
    for (const auto& seg : AllSegments(*model)) {
      const double lp = model->CharSegmentLogProb(ctx, seg);
      EXPECT_LE(lp, 0.0);
      total += std::exp(lp);
    }
    EXPECT_NEAR(total, 1.0, 1e-9) << "m=" << m;
  }
}

TEST(SegmentalModelTest, LengthOneIsSingleSoftmax) {
  const auto model = MakeTinyModel(1);
  const SegmentContext ctx = model->Context(model->Start(model->Encode(kSource)));
  for (int c = kEot; c <= kB; ++c) {
    EXPECT_DOUBLE_EQ(model->CharSegmentLogProb(ctx, std::vector<int>{c}),
                     ctx.char_start.next_logp(0, SegmentalModel::OutputIndex(c)));
  }
}

TEST(SegmentalModelTest, SegmentLengthIsChecked) {
  const auto model = MakeTinyModel(2);
  const SegmentContext ctx = model->Context(model->Start(model->Encode(kSource)));
  EXPECT_THROW(model->CharSegmentLogProb(ctx, std::vector<int>{kA, kA, kA}),
               UsageError);
  EXPECT_THROW(model->CharSegmentLogProb(ctx, std::vector<int>{}), UsageError);
}

TEST(SegmentalModelTest, LexiconPathNormalizes) {
  const auto model = MakeTinyModel(2, 3);
  const SegmentContext ctx = model->Context(model->Start(model->Encode(kSource)));
  double total = 0.0;
  for (const auto& seg : AllSegments(*model)) {
    total += std::exp(model->LexSegmentLogProb(ctx, seg));
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
  EXPECT_EQ(model->LexSegmentLogProb(ctx, std::vector<int>{kB, kB}), kNegInf);
  EXPECT_EQ(model->LexSegmentLogProb(ctx, std::vector<int>{kSpace}), kNegInf);
}

TEST(SegmentalModelTest, MixtureNormalizesPerContext) {
  const auto model = MakeTinyModel(3, 11);
  const SourceEncoding enc = model->Encode(kSource);
  for (const std::vector<int>& prefix :
       {std::vector<int>{}, {kA}, {kA, kB, kSpace}}) {
    const SegmentContext ctx = model->Context(model->DecodePrefix(enc, prefix));
    double total = 0.0;
    for (const auto& seg : AllSegments(*model)) {
      const SegmentScore score = model->SegmentLogProb(ctx, seg);
      EXPECT_NEAR(score.total,
                  std::log(score.gate * std::exp(score.char_term) +
                           (1 - score.gate) * std::exp(score.lex_term)),
                  1e-12);
      total += std::exp(score.total);
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(SegmentalModelTest, GateLimits) {
  auto model = MakeTinyModel(2, 13);
  Parameter& bias = model->params().Get("gate.b");
  model->params().Get("gate.w").value.setZero();
  const SourceEncoding enc = model->Encode(kSource);
  const std::vector<int> seg = {kA, kB};
  bias.value(0, 0) = 60.0;
  SegmentScore score = model->SegmentLogProb(model->Start(enc), seg);
  EXPECT_NEAR(score.total, score.char_term, 1e-12);
  bias.value(0, 0) = -60.0;
  score = model->SegmentLogProb(model->Start(enc), seg);
  EXPECT_NEAR(score.total, score.lex_term, 1e-12);
}

TEST(ScoreGridTest, MatchesIncrementalScores) {
  const auto model = MakeTinyModel(3, 17);
  const std::vector<int> target = {kA, kB, kA, kSpace, kB, kB, kEot};
  Graph g(false);
  const ScoredGrid grid = model->ScoreGrid(g, kSource, target);
  const SourceEncoding enc = model->Encode(kSource);
  for (int c = 0; c < grid.lattice.num_cells(); ++c) {
    const Cell& cell = grid.lattice.cells()[c];
    const DecoderState state = model->DecodePrefix(
        enc, std::span<const int>(target).first(cell.start));
    const SegmentScore score = model->SegmentLogProb(
        state, std::span<const int>(target).subspan(cell.start, cell.len));
    EXPECT_NEAR(grid.lattice.scores()[c], score.total, 1e-9);
    EXPECT_LE(grid.lattice.scores()[c], 0.0);
  }
}

TEST(ScoreGridTest, CellCounts) {
  const auto model = MakeTinyModel(2);
  Graph g(false);
  const ScoredGrid grid =
      model->ScoreGrid(g, kSource, std::vector<int>{kA, kSpace, kB});
  EXPECT_EQ(grid.lattice.num_cells(), 3);
}

TEST(ScoreGridTest, ForwardEqualsEnumeration) {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 15; ++trial) {
    const int m = 1 + rng() % 3;
    const auto model = MakeTinyModel(m, 100 + trial);
    std::vector<int> target;
    const int n = 1 + rng() % 8;
    for (int i = 0; i < n; ++i) target.push_back(kSpace + rng() % 3);
    target.push_back(kEot);
    const SourceEncoding enc = model->Encode(kSource);
    Graph g(false);
    const ScoredGrid grid = model->ScoreGrid(g, kSource, target);
    const auto all = EnumerateAll(grid.lattice, [&](int start, int len) {
      const DecoderState state = model->DecodePrefix(
          enc, std::span<const int>(target).first(start));
      return model
          ->SegmentLogProb(state,
                           std::span<const int>(target).subspan(start, len))
          .total;
    });
    double total = kNegInf;
    for (const auto& s : all) total = kernels::LogAddExp(total, s.log_prob);
    EXPECT_NEAR(total, ForwardMarginal(grid.lattice), 1e-9);
    EXPECT_LE(total, 0.0);
  }
}

TEST(ScoreGridTest, ChangingTheFutureKeepsEarlierScores) {
  const auto model = MakeTinyModel(2, 23);
  const std::vector<int> a = {kA, kB, kA, kA, kEot};
  const std::vector<int> b = {kA, kB, kB, kSpace, kA, kEot};
  Graph g(false);
  const ScoredGrid ga = model->ScoreGrid(g, kSource, a);
  const ScoredGrid gb = model->ScoreGrid(g, kSource, b);
  // Cells ending at or before position 2 share their history.
  for (int c = 0; c < ga.lattice.num_cells(); ++c) {
    const Cell& cell = ga.lattice.cells()[c];
    if (cell.end() > 2) continue;
    const int other = gb.lattice.CellIndex(cell.start, cell.len);
    ASSERT_GE(other, 0);
    EXPECT_NEAR(ga.lattice.scores()[c], gb.lattice.scores()[other], 1e-12);
  }
}

TEST(ScoreGridTest, MarginalGradientMatchesFiniteDifferences) {
  const auto model = MakeTinyModel(2, 29, 4);
  ParamStore& store = model->params();
  ASSERT_LE(store.num_scalars(), 2000);
  const std::vector<int> target = {kA, kB, kA, kSpace, kB, kEot};
  Gradients grads(store);
  {
    Graph g;
    g.Backward(model->LogMarginal(g, kSource, target), grads);
  }
  const double h = 1e-5;
  double worst = 0.0;
  for (int p = 0; p < store.size(); ++p) {
    Tensor& value = store.at(p).value;
    for (Eigen::Index i = 0; i < value.size(); ++i) {
      const double saved = value.data()[i];
      value.data()[i] = saved + h;
      Graph up(false);
      const double fu = model->LogMarginal(up, kSource, target).value()(0, 0);
      value.data()[i] = saved - h;
      Graph down(false);
      const double fd = model->LogMarginal(down, kSource, target).value()(0, 0);
      value.data()[i] = saved;
      const double numeric = (fu - fd) / (2 * h);
      const double analytic = grads[p].data()[i];
      worst = std::max(worst, std::abs(numeric - analytic) /
                                  std::max(1e-3, std::abs(numeric) +
                                                     std::abs(analytic)));
    }
  }
  EXPECT_LT(worst, 1e-4);
}

}  // namespace
}  // namespace ssmt
