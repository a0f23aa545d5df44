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

#ifndef SSMT_METRICS_BOOTSTRAP_H_
#define SSMT_METRICS_BOOTSTRAP_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ssmt {

struct BootstrapResult {
  double score_a = 0.0;
  double score_b = 0.0;
  // Fraction of resamples in which the system that is worse on the full set
  // scores at least as well as the better one.
  double p_value = 1.0;
  int resamples = 0;
};

// Corpus-level metric over the sentences selected by indices (repeats
// allowed).
using ResampledMetric = std::function<double(
    const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
    const std::vector<size_t>& indices)>;

// Paired bootstrap resampling of sentence indices with replacement. Throws
// DataError on length mismatch or fewer than 2 sentences.
BootstrapResult PairedBootstrap(const std::vector<std::string>& hyps_a,
                                const std::vector<std::string>& hyps_b,
                                const std::vector<std::string>& refs,
                                const ResampledMetric& metric,
                                int resamples = 1000, uint64_t seed = 12345);

// The same with corpus chrF, reusing per-sentence n-gram statistics.
BootstrapResult PairedBootstrapChrf(const std::vector<std::string>& hyps_a,
                                    const std::vector<std::string>& hyps_b,
                                    const std::vector<std::string>& refs,
                                    int resamples = 1000,
                                    uint64_t seed = 12345);

}  // namespace ssmt

#endif  // SSMT_METRICS_BOOTSTRAP_H_
