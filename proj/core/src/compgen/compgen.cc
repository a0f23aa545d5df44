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

#include "ssmt/compgen/compgen.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ssmt/common/errors.h"

namespace ssmt {

SegmentedSentence ParseSegmentedSentence(std::string_view line,
                                         std::string_view delimiter) {
  if (delimiter.empty()) throw UsageError("empty segmentation delimiter");
  SegmentedSentence out;
  std::istringstream in{std::string(line)};
  std::string token;
  while (in >> token) {
    std::vector<std::string> morphemes;
    size_t pos = 0;
    while (pos <= token.size()) {
      size_t cut = token.find(delimiter, pos);
      if (cut == std::string::npos) cut = token.size();
      if (cut > pos) morphemes.push_back(token.substr(pos, cut - pos));
      pos = cut + delimiter.size();
    }
    if (!morphemes.empty()) out.words.push_back(std::move(morphemes));
  }
  return out;
}

void UnitCounts::Add(const std::string& unit, long n) {
  counts[unit] += n;
  total += n;
}

FreqDistribution UnitCounts::ToDistribution() const {
  FreqDistribution out;
  for (const auto& [unit, n] : counts) {
    out[unit] = static_cast<double>(n) / total;
  }
  return out;
}

void CorpusCounts::Add(const SegmentedSentence& sentence) {
  for (const auto& word : sentence.words) {
    std::string compound;
    for (const auto& m : word) {
      atoms.Add(m);
      compound += m;
    }
    compounds.Add(compound);
  }
}

Distributions ComputeDistributions(
    const std::vector<SegmentedSentence>& corpus) {
  CorpusCounts counts;
  for (const auto& s : corpus) counts.Add(s);
  if (counts.compounds.total == 0) throw DataError("corpus has no words");
  return {counts.atoms.ToDistribution(), counts.compounds.ToDistribution()};
}

namespace {

void CheckAlpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw UsageError("Chernoff alpha must lie in (0, 1)");
  }
}

}  // namespace

double Chernoff(const FreqDistribution& p, const FreqDistribution& q,
                double alpha) {
  CheckAlpha(alpha);
  if (p == q && !p.empty()) return 1.0;
  double sum = 0.0;
  for (const auto& [unit, pk] : p) {
    auto it = q.find(unit);
    if (it == q.end() || pk <= 0.0 || it->second <= 0.0) continue;
    sum += std::pow(pk, alpha) * std::pow(it->second, 1.0 - alpha);
  }
  return std::clamp(sum, 0.0, 1.0);
}

double CompoundDivergence(const std::vector<SegmentedSentence>& train,
                          const std::vector<SegmentedSentence>& test) {
  return 1.0 - Chernoff(ComputeDistributions(train).compounds,
                        ComputeDistributions(test).compounds, kCompoundAlpha);
}

double AtomDivergence(const std::vector<SegmentedSentence>& train,
                      const std::vector<SegmentedSentence>& test) {
  return 1.0 - Chernoff(ComputeDistributions(train).atoms,
                        ComputeDistributions(test).atoms, kAtomAlpha);
}

void SplitSpec::Validate() const {
  if (size < 1) throw UsageError("subset size must be >= 1");
  if (sample_size < 1) throw UsageError("sample size k must be >= 1");
  if (!(target_compound_divergence >= 0.0 &&
        target_compound_divergence <= 1.0)) {
    throw UsageError("target compound divergence must lie in [0, 1]");
  }
}

namespace {

// Chernoff coefficient of a fixed reference distribution P against the
// growing subset counts c, kept as T = sum_k p_k^alpha c_k^(1 - alpha) so
// that C = N^(alpha - 1) T.
class IncrementalChernoff {
 public:
  IncrementalChernoff(const FreqDistribution& p, double alpha)
      : alpha_(alpha) {
    for (const auto& [unit, pk] : p) weight_[unit] = std::pow(pk, alpha);
  }

  double Coefficient(double t, long n) const {
    if (n == 0) return 0.0;
    return std::clamp(std::pow(static_cast<double>(n), alpha_ - 1.0) * t, 0.0,
                      1.0);
  }

  // Coefficient after adding the candidate counts to the subset.
  double WithCandidate(const UnitCounts& subset, const UnitCounts& candidate)
      const {
    double t = t_;
    for (const auto& [unit, d] : candidate.counts) {
      auto w = weight_.find(unit);
      if (w == weight_.end()) continue;
      auto it = subset.counts.find(unit);
      const double c = it == subset.counts.end() ? 0.0 : it->second;
      t += w->second * (std::pow(c + d, 1.0 - alpha_) - std::pow(c, 1.0 - alpha_));
    }
    return Coefficient(t, subset.total + candidate.total);
  }

  void Recompute(const UnitCounts& subset) {
    t_ = 0.0;
    for (const auto& [unit, c] : subset.counts) {
      auto w = weight_.find(unit);
      if (w != weight_.end()) t_ += w->second * std::pow(c, 1.0 - alpha_);
    }
  }

 private:
  double alpha_;
  std::map<std::string, double> weight_;
  double t_ = 0.0;
};

}  // namespace

SubsetResult ExtractSubset(const std::vector<SegmentedSentence>& train,
                           const std::vector<SegmentedSentence>& test,
                           const SplitSpec& spec, bool record_trace) {
  spec.Validate();
  if (static_cast<long>(test.size()) < spec.size) {
    throw DataError("test set has " + std::to_string(test.size()) +
                    " sentences, fewer than the requested subset size " +
                    std::to_string(spec.size));
  }
  const Distributions reference = ComputeDistributions(train);
  IncrementalChernoff compound(reference.compounds, kCompoundAlpha);
  IncrementalChernoff atom(reference.atoms, kAtomAlpha);

  std::vector<CorpusCounts> sentence_counts(test.size());
  for (size_t i = 0; i < test.size(); ++i) sentence_counts[i].Add(test[i]);

  std::vector<int> pool(test.size());
  std::iota(pool.begin(), pool.end(), 0);
  std::mt19937_64 rng(spec.seed);
  CorpusCounts subset;
  SubsetResult result;

  for (int step = 0; step < spec.size; ++step) {
    const int k = std::min<int>(spec.sample_size, pool.size());
    std::vector<int> shuffled = pool;
    for (int i = 0; i < k; ++i) {
      std::uniform_int_distribution<size_t> pick(i, shuffled.size() - 1);
      std::swap(shuffled[i], shuffled[pick(rng)]);
    }
    std::vector<int> candidates(shuffled.begin(), shuffled.begin() + k);

    SubsetStep trace;
    int best = -1;
    double best_value = std::numeric_limits<double>::infinity();
    for (int pos = 0; pos < k; ++pos) {
      const CorpusCounts& cand = sentence_counts[candidates[pos]];
      const double d_c =
          1.0 - compound.WithCandidate(subset.compounds, cand.compounds);
      const double d_a = 1.0 - atom.WithCandidate(subset.atoms, cand.atoms);
      const double value =
          std::abs(d_c - spec.target_compound_divergence) + d_a;
      if (record_trace) trace.objectives.push_back(value);
      if (value < best_value ||
          (value == best_value && candidates[pos] < candidates[best])) {
        best = pos;
        best_value = value;
      }
    }
    const int chosen = candidates[best];
    if (record_trace) {
      trace.candidates = candidates;
      trace.chosen = best;
      result.trace.push_back(std::move(trace));
    }
    result.indices.push_back(chosen);
    subset.Add(test[chosen]);
    compound.Recompute(subset.compounds);
    atom.Recompute(subset.atoms);
    pool.erase(std::find(pool.begin(), pool.end(), chosen));
  }

  const FreqDistribution c_dist = subset.compounds.total > 0
                                      ? subset.compounds.ToDistribution()
                                      : FreqDistribution{};
  const FreqDistribution a_dist = subset.atoms.total > 0
                                      ? subset.atoms.ToDistribution()
                                      : FreqDistribution{};
  result.compound_divergence =
      1.0 - Chernoff(reference.compounds, c_dist, kCompoundAlpha);
  result.atom_divergence = 1.0 - Chernoff(reference.atoms, a_dist, kAtomAlpha);
  return result;
}

std::string GenbenchReport::ToJson() const {
  nlohmann::ordered_json j;
  j["spec"] = {{"target_compound_divergence", spec.target_compound_divergence},
               {"size", spec.size},
               {"sample_size", spec.sample_size},
               {"seed", spec.seed}};
  j["train_size"] = train_size;
  j["test_size"] = test_size;
  j["compound_divergence"] = compound_divergence;
  j["atom_divergence"] = atom_divergence;
  j["indices"] = indices;
  return j.dump(2);
}

GenbenchReport GenbenchReport::FromJson(std::string_view json) {
  try {
    const auto j = nlohmann::json::parse(json);
    GenbenchReport r;
    const auto& s = j.at("spec");
    r.spec.target_compound_divergence =
        s.at("target_compound_divergence").get<double>();
    r.spec.size = s.at("size").get<int>();
    r.spec.sample_size = s.at("sample_size").get<int>();
    r.spec.seed = s.at("seed").get<uint64_t>();
    r.train_size = j.at("train_size").get<long>();
    r.test_size = j.at("test_size").get<long>();
    r.compound_divergence = j.at("compound_divergence").get<double>();
    r.atom_divergence = j.at("atom_divergence").get<double>();
    r.indices = j.at("indices").get<std::vector<int>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed subset report: ") + e.what());
  }
}

GenbenchReport MakeGenbenchReport(const SplitSpec& spec, long train_size,
                                  long test_size, const SubsetResult& result) {
  GenbenchReport r;
  r.spec = spec;
  r.train_size = train_size;
  r.test_size = test_size;
  r.indices = result.indices;
  r.compound_divergence = result.compound_divergence;
  r.atom_divergence = result.atom_divergence;
  return r;
}

}  // namespace ssmt
