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

#include "ssmt/metrics/bootstrap.h"

#include <numeric>
#include <random>

#include "ssmt/common/errors.h"
#include "ssmt/metrics/chrf.h"

namespace ssmt {
namespace {

void CheckInputs(size_t a, size_t b, size_t refs, int resamples) {
  if (a != b || a != refs) {
    throw DataError("bootstrap inputs differ in length");
  }
  if (a < 2) throw DataError("bootstrap needs at least 2 sentences");
  if (resamples < 1) throw UsageError("bootstrap needs at least 1 resample");
}

template <typename Score>
BootstrapResult Run(size_t n, int resamples, uint64_t seed,
                    const Score& score) {
  std::vector<size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  BootstrapResult result;
  result.score_a = score(0, all);
  result.score_b = score(1, all);
  result.resamples = resamples;
  const int better = result.score_a >= result.score_b ? 0 : 1;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, n - 1);
  std::vector<size_t> sample(n);
  int worse_wins = 0;
  for (int r = 0; r < resamples; ++r) {
    for (size_t& s : sample) s = pick(rng);
    if (score(1 - better, sample) >= score(better, sample)) ++worse_wins;
  }
  result.p_value = static_cast<double>(worse_wins) / resamples;
  return result;
}

}  // namespace

BootstrapResult PairedBootstrap(const std::vector<std::string>& hyps_a,
                                const std::vector<std::string>& hyps_b,
                                const std::vector<std::string>& refs,
                                const ResampledMetric& metric, int resamples,
                                uint64_t seed) {
  CheckInputs(hyps_a.size(), hyps_b.size(), refs.size(), resamples);
  return Run(refs.size(), resamples, seed,
             [&](int system, const std::vector<size_t>& idx) {
               return metric(system == 0 ? hyps_a : hyps_b, refs, idx);
             });
}

BootstrapResult PairedBootstrapChrf(const std::vector<std::string>& hyps_a,
                                    const std::vector<std::string>& hyps_b,
                                    const std::vector<std::string>& refs,
                                    int resamples, uint64_t seed) {
  CheckInputs(hyps_a.size(), hyps_b.size(), refs.size(), resamples);
  std::vector<ChrfStats> stats[2];
  for (size_t i = 0; i < refs.size(); ++i) {
    stats[0].push_back(ChrfSentenceStats(hyps_a[i], refs[i]));
    stats[1].push_back(ChrfSentenceStats(hyps_b[i], refs[i]));
  }
  return Run(refs.size(), resamples, seed,
             [&](int system, const std::vector<size_t>& idx) {
               ChrfStats total;
               for (size_t i : idx) total += stats[system][i];
               return ChrfFromStats(total);
             });
}

}  // namespace ssmt
