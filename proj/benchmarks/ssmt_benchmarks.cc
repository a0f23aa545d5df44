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

#include <random>
#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "ssmt/decoder/dynamic_decoder.h"
#include "ssmt/decoder/neural_decoding_model.h"
#include "ssmt/lattice/segment_lattice.h"
#include "ssmt/metrics/chrf.h"
#include "ssmt/model/segmental_model.h"
#include "ssmt/numerics/autodiff.h"
#include "ssmt/textproc/word_spans.h"
#include "tiny_model.h"

namespace ssmt {
namespace {

std::u32string RandomText(int n, uint64_t seed) {
  const std::u32string alphabet = U"abcdefgh ";
  std::mt19937_64 rng(seed);
  std::u32string text;
  for (int i = 0; i < n; ++i) text.push_back(alphabet[rng() % alphabet.size()]);
  return text;
}

SegmentLattice RandomLattice(int n, int m) {
  SegmentLattice lattice(WordSpanMap::Build(RandomText(n, 1)), m);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> dist(-4.0, 0.0);
  for (double& s : lattice.scores()) s = dist(rng);
  return lattice;
}

std::vector<int> RandomTarget(int n) {
  std::mt19937_64 rng(3);
  std::vector<int> target;
  for (int i = 0; i < n; ++i) {
    target.push_back(CharVocab::kNumSpecials + rng() % 3);
  }
  target.push_back(CharVocab::kEot);
  return target;
}

void BM_ForwardMarginal(benchmark::State& state) {
  const SegmentLattice lattice = RandomLattice(state.range(0), 5);
  for (auto _ : state) benchmark::DoNotOptimize(ForwardMarginal(lattice));
  state.SetItemsProcessed(state.iterations() * lattice.num_cells());
}
BENCHMARK(BM_ForwardMarginal)->Arg(50)->Arg(200)->Arg(800);

void BM_Viterbi(benchmark::State& state) {
  const SegmentLattice lattice = RandomLattice(state.range(0), 5);
  for (auto _ : state) benchmark::DoNotOptimize(Viterbi(lattice));
  state.SetItemsProcessed(state.iterations() * lattice.num_cells());
}
BENCHMARK(BM_Viterbi)->Arg(50)->Arg(200)->Arg(800);

void BM_ScoreGrid(benchmark::State& state) {
  const auto model = MakeTinyModel(4, 1, 16);
  const std::vector<int> source = {2, 5, 3, 4, 2};
  const std::vector<int> target = RandomTarget(state.range(0));
  for (auto _ : state) {
    Graph g(false);
    benchmark::DoNotOptimize(model->ScoreGrid(g, source, target));
  }
}
BENCHMARK(BM_ScoreGrid)->Arg(20)->Arg(80);

void BM_LogMarginalWithGradient(benchmark::State& state) {
  const auto model = MakeTinyModel(4, 1, 16);
  const std::vector<int> source = {2, 5, 3, 4, 2};
  const std::vector<int> target = RandomTarget(state.range(0));
  Gradients grads(model->params());
  for (auto _ : state) {
    Graph g;
    g.Backward(model->LogMarginal(g, source, target), grads);
  }
}
BENCHMARK(BM_LogMarginalWithGradient)->Arg(20)->Arg(80);

void BM_DynamicDecode(benchmark::State& state) {
  const auto model = MakeTinyModel(4, 1, 16);
  const std::vector<int> source = {2, 5, 3, 4, 2};
  const NeuralDecodingModel decoding(*model, source);
  BeamConfig config;
  config.beam_size = static_cast<int>(state.range(0));
  config.max_chars = 40;
  int64_t chars = 0;
  for (auto _ : state) {
    const DecodeResult r = DynamicDecode(decoding, config);
    chars += static_cast<int64_t>(r.chars.size());
  }
  state.SetItemsProcessed(chars);
}
BENCHMARK(BM_DynamicDecode)->Arg(1)->Arg(5);

void BM_MixtureBeamSearch(benchmark::State& state) {
  const auto model = MakeTinyModel(4, 1, 16);
  const std::vector<int> source = {2, 5, 3, 4, 2};
  const NeuralDecodingModel decoding(*model, source);
  BeamConfig config;
  config.beam_size = static_cast<int>(state.range(0));
  config.max_chars = 40;
  for (auto _ : state) {
    benchmark::DoNotOptimize(MixtureBeamSearch(decoding, config));
  }
}
BENCHMARK(BM_MixtureBeamSearch)->Arg(1)->Arg(5);

void BM_SentenceChrf(benchmark::State& state) {
  const std::string hyp = "ngiyabonga kakhulu ngosizo lwakho namhlanje";
  const std::string ref = "ngiyabonga kakhulu ngosizo lwenu izolo";
  for (auto _ : state) benchmark::DoNotOptimize(Chrf(hyp, ref));
}
BENCHMARK(BM_SentenceChrf);

}  // namespace
}  // namespace ssmt

BENCHMARK_MAIN();
