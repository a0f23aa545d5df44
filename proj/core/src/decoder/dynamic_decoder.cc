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

#include "ssmt/decoder/dynamic_decoder.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ssmt/common/errors.h"
#include "ssmt/numerics/tensor.h"

namespace ssmt {
namespace {

double Rank(double log_prob, size_t length, const BeamConfig& config) {
  if (!config.length_normalize || length == 0) return log_prob;
  return log_prob / static_cast<double>(length);
}

void CheckConfig(const BeamConfig& config) {
  if (config.beam_size < 1) throw UsageError("beam size must be >= 1");
  if (config.max_chars < 1) throw UsageError("max_chars must be >= 1");
}

struct Proposal {
  const Hypothesis* parent = nullptr;
  int char_id = -1;  // -1: parent carried over unchanged
  bool ends = true;
  double closed = 0.0;
  double open = 0.0;
  double rank = 0.0;
};

// Stable so that earlier proposals (end-flavored parents) win ties.
std::vector<Proposal> SelectTop(std::vector<Proposal> pool, int k) {
  std::stable_sort(pool.begin(), pool.end(),
                   [](const Proposal& a, const Proposal& b) {
                     return a.rank > b.rank;
                   });
  if (static_cast<int>(pool.size()) > k) pool.resize(k);
  return pool;
}

Hypothesis Materialize(const DecodingModel& model, const Proposal& p) {
  const Hypothesis& parent = *p.parent;
  if (p.char_id < 0) return parent;
  Hypothesis h;
  h.chars = parent.chars;
  h.chars.push_back(p.char_id);
  h.boundaries = parent.boundaries;
  h.closed_logprob = p.closed;
  h.open_logmass = p.open;
  const int length = static_cast<int>(h.chars.size());
  if (p.ends) {
    h.flavor = Flavor::kEnd;
    h.boundaries.push_back(length);
    h.cur_start = length;
  } else {
    h.flavor = Flavor::kCon;
    h.cur_start = parent.flavor == Flavor::kEnd ? length - 1 : parent.cur_start;
  }
  h.node = model.Child(*parent.node, p.char_id, p.ends);
  return h;
}

DecodeResult ToResult(const Hypothesis& h, bool truncated) {
  DecodeResult r;
  r.chars = h.chars;
  r.boundaries = h.boundaries;
  r.log_prob = h.closed_logprob;
  r.truncated = truncated;
  return r;
}

}  // namespace

DecodeResult DynamicDecode(const DecodingModel& model,
                           const BeamConfig& config) {
  CheckConfig(config);
  const std::span<const int> chars = model.candidates();
  Hypothesis root;
  root.node = model.Root();
  std::vector<Hypothesis> end_beam = {root};
  std::vector<Hypothesis> con_beam;

  while (true) {
    std::vector<Proposal> end_pool;
    std::vector<Proposal> con_pool;
    for (const Hypothesis& h : end_beam) {
      if (h.finished()) {
        end_pool.push_back({&h, -1, true, h.closed_logprob, 0.0,
                            Rank(h.closed_logprob, h.chars.size(), config)});
      }
    }
    // End-flavored parents first, then con-flavored ones.
    for (const std::vector<Hypothesis>* beam : {&end_beam, &con_beam}) {
      for (const Hypothesis& h : *beam) {
        if (h.finished()) continue;
        const NextCharScores scores = model.Expand(*h.node);
        const size_t length = h.chars.size() + 1;
        for (size_t i = 0; i < chars.size(); ++i) {
          if (scores.ends[i] != kNegInf) {
            const double closed = h.closed_logprob + scores.ends[i];
            end_pool.push_back(
                {&h, chars[i], true, closed, 0.0, Rank(closed, length, config)});
          }
          if (scores.continues[i] != kNegInf) {
            const double total = h.closed_logprob + scores.continues[i];
            con_pool.push_back({&h, chars[i], false, h.closed_logprob,
                                scores.continues[i],
                                Rank(total, length, config)});
          }
        }
      }
    }
    std::vector<Hypothesis> next_end;
    std::vector<Hypothesis> next_con;
    for (const Proposal& p : SelectTop(std::move(end_pool), config.beam_size)) {
      next_end.push_back(Materialize(model, p));
    }
    for (const Proposal& p : SelectTop(std::move(con_pool), config.beam_size)) {
      next_con.push_back(Materialize(model, p));
    }
    end_beam = std::move(next_end);
    con_beam = std::move(next_con);
    if (end_beam.empty() && con_beam.empty()) {
      throw NumericError("decoding found no subword with nonzero probability");
    }
    if (!end_beam.empty() && end_beam.front().finished()) {
      const Hypothesis& best = end_beam.front();
      if (config.stop_rule == StopRule::kBestEndFinished || con_beam.empty() ||
          Rank(best.closed_logprob, best.chars.size(), config) >=
              Rank(con_beam.front().cum_logprob(),
                   con_beam.front().chars.size(), config)) {
        return ToResult(best, false);
      }
    }
    const int length = static_cast<int>(
        (end_beam.empty() ? con_beam : end_beam).front().chars.size());
    if (length >= config.max_chars) {
      if (end_beam.empty()) {
        throw NumericError("no complete subword sequence within max_chars");
      }
      return ToResult(end_beam.front(), true);
    }
  }
}

std::vector<SubwordCandidate> TopSubwords(const DecodingModel& model,
                                          const DecodeNode& boundary, int k) {
  if (boundary.open_length() != 0) {
    throw UsageError("subword proposals start at a boundary");
  }
  const std::span<const int> chars = model.candidates();
  struct Prefix {
    std::shared_ptr<const DecodeNode> node;
    std::vector<int> chars;
    double mass = 0.0;
  };
  std::vector<SubwordCandidate> complete;
  std::vector<Prefix> frontier;
  frontier.push_back({nullptr, {}, 0.0});
  for (int depth = 1; depth <= model.max_len() && !frontier.empty(); ++depth) {
    struct Extension {
      size_t parent;
      int char_id;
      double mass;
    };
    std::vector<Extension> extensions;
    for (size_t f = 0; f < frontier.size(); ++f) {
      const DecodeNode& node =
          frontier[f].node ? *frontier[f].node : boundary;
      const NextCharScores scores = model.Expand(node);
      for (size_t i = 0; i < chars.size(); ++i) {
        if (scores.ends[i] != kNegInf) {
          SubwordCandidate c;
          c.chars = frontier[f].chars;
          c.chars.push_back(chars[i]);
          c.log_prob = scores.ends[i];
          complete.push_back(std::move(c));
        }
        if (scores.continues[i] != kNegInf) {
          extensions.push_back({f, chars[i], scores.continues[i]});
        }
      }
    }
    std::stable_sort(complete.begin(), complete.end(),
                     [](const SubwordCandidate& a, const SubwordCandidate& b) {
                       return a.log_prob > b.log_prob;
                     });
    if (static_cast<int>(complete.size()) > k) complete.resize(k);
    std::stable_sort(extensions.begin(), extensions.end(),
                     [](const Extension& a, const Extension& b) {
                       return a.mass > b.mass;
                     });
    // A prefix's mass bounds every completion of it.
    const double floor = static_cast<int>(complete.size()) == k
                             ? complete.back().log_prob
                             : kNegInf;
    std::vector<Prefix> next;
    for (const Extension& e : extensions) {
      if (static_cast<int>(next.size()) == k || e.mass <= floor) break;
      const Prefix& parent = frontier[e.parent];
      const DecodeNode& node = parent.node ? *parent.node : boundary;
      Prefix p;
      p.node = model.Child(node, e.char_id, false);
      p.chars = parent.chars;
      p.chars.push_back(e.char_id);
      p.mass = e.mass;
      next.push_back(std::move(p));
    }
    frontier = std::move(next);
  }
  return complete;
}

DecodeResult MixtureBeamSearch(const DecodingModel& model,
                               const BeamConfig& config) {
  CheckConfig(config);
  Hypothesis root;
  root.node = model.Root();
  std::vector<Hypothesis> beam = {root};
  while (true) {
    struct Option {
      const Hypothesis* parent;
      SubwordCandidate subword;
      double rank;
    };
    std::vector<Option> pool;
    for (const Hypothesis& h : beam) {
      if (h.finished()) {
        pool.push_back({&h, {}, Rank(h.closed_logprob, h.chars.size(), config)});
      }
    }
    for (const Hypothesis& h : beam) {
      if (h.finished()) continue;
      for (SubwordCandidate& s : TopSubwords(model, *h.node, config.beam_size)) {
        const double total = h.closed_logprob + s.log_prob;
        const double rank = Rank(total, h.chars.size() + s.chars.size(), config);
        pool.push_back({&h, std::move(s), rank});
      }
    }
    std::stable_sort(pool.begin(), pool.end(),
                     [](const Option& a, const Option& b) {
                       return a.rank > b.rank;
                     });
    if (static_cast<int>(pool.size()) > config.beam_size) {
      pool.resize(config.beam_size);
    }
    std::vector<Hypothesis> next;
    for (const Option& o : pool) {
      if (o.subword.chars.empty()) {
        next.push_back(*o.parent);
        continue;
      }
      Hypothesis h = *o.parent;
      std::shared_ptr<const DecodeNode> node = h.node;
      for (size_t i = 0; i < o.subword.chars.size(); ++i) {
        const bool ends = i + 1 == o.subword.chars.size();
        node = model.Child(*node, o.subword.chars[i], ends);
        h.chars.push_back(o.subword.chars[i]);
      }
      h.node = std::move(node);
      h.boundaries.push_back(static_cast<int>(h.chars.size()));
      h.cur_start = static_cast<int>(h.chars.size());
      h.closed_logprob += o.subword.log_prob;
      next.push_back(std::move(h));
    }
    beam = std::move(next);
    if (beam.empty()) {
      throw NumericError("decoding found no subword with nonzero probability");
    }
    if (beam.front().finished()) return ToResult(beam.front(), false);
    if (static_cast<int>(beam.front().chars.size()) >= config.max_chars) {
      return ToResult(beam.front(), true);
    }
  }
}

}  // namespace ssmt
