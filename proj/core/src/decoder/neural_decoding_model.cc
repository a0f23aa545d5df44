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

#include "ssmt/decoder/neural_decoding_model.h"

#include <cmath>
#include <utility>

#include "ssmt/common/errors.h"
#include "ssmt/numerics/tensor.h"

namespace ssmt {
namespace {

// Gate and lexicon distribution for one subword start.
struct StartContext {
  SegmentContext context;
  Tensor lex_prob;
};

// log(1 - exp(x)) for x <= 0.
double Log1mExp(double x) {
  if (x == kNegInf) return 0.0;
  return x > -0.693 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

}  // namespace

struct NeuralDecodingModel::Node : DecodeNode {
  DecoderState state;  // after every generated character
  std::shared_ptr<const StartContext> start;
  CharState chars;  // char LSTM after the open subword u
  int trie = Lexicon::kRoot;  // trie node of u, kNone if no entry has prefix u
  int open = 0;
  bool done = false;

  int open_length() const override { return open; }
  bool finished() const override { return done; }
};

NeuralDecodingModel::NeuralDecodingModel(const SegmentalModel& model,
                                         std::span<const int> source,
                                         ContinueReading reading)
    : model_(model), encoding_(model.Encode(source)), reading_(reading) {
  for (int id = CharVocab::kEos + 1; id < model.vocab().size(); ++id) {
    candidates_.push_back(id);
  }
}

std::shared_ptr<const NeuralDecodingModel::Node>
NeuralDecodingModel::AtBoundary(DecoderState state) const {
  auto node = std::make_shared<Node>();
  auto start = std::make_shared<StartContext>();
  start->context = model_.Context(state);
  start->lex_prob = start->context.lex_logp.array().exp();
  node->chars = start->context.char_start;
  node->start = std::move(start);
  node->state = std::move(state);
  return node;
}

std::shared_ptr<const DecodeNode> NeuralDecodingModel::Root() const {
  return AtBoundary(model_.Start(encoding_));
}

NextCharScores NeuralDecodingModel::Expand(const DecodeNode& base) const {
  const Node& node = static_cast<const Node&>(base);
  if (node.done) throw UsageError("cannot expand a finished hypothesis");
  const int m = model_.max_len();
  if (node.open >= m) throw UsageError("open subword already at max length");
  const CharVocab& vocab = model_.vocab();
  const Lexicon& lexicon = model_.lexicon();
  const SegmentContext& ctx = node.start->context;
  const Tensor& lex_prob = node.start->lex_prob;
  const bool last = node.open + 1 == m;

  std::vector<int> allowed;
  for (int y : candidates_) {
    if (node.open == 0 || !vocab.IsSeparator(y)) allowed.push_back(y);
  }
  std::vector<CharState> after;
  if (!last) after = model_.CharAdvanceAll(node.chars, allowed);

  NextCharScores out;
  out.ends.assign(candidates_.size(), kNegInf);
  out.continues.assign(candidates_.size(), kNegInf);
  size_t a = 0;
  for (size_t i = 0; i < candidates_.size(); ++i) {
    const int y = candidates_[i];
    if (a >= allowed.size() || allowed[a] != y) continue;
    const bool separator = vocab.IsSeparator(y);
    const double char_prefix =
        node.chars.prefix_logp +
        node.chars.next_logp(0, SegmentalModel::OutputIndex(y));
    double char_end = char_prefix;
    double char_con = kNegInf;
    if (!last) {
      const double eos = after[a].next_logp(0, 0);
      char_end = char_prefix + eos;
      char_con = reading_ == ContinueReading::kPartition
                     ? char_prefix + Log1mExp(eos)
                     : char_prefix;
    }
    ++a;

    double lex_end = kNegInf;
    double lex_con = kNegInf;
    const int t = separator ? Lexicon::kNone
                            : lexicon.Child(node.trie, vocab.Codepoint(y));
    if (t != Lexicon::kNone) {
      const int exact = lexicon.EntryAt(t);
      if (exact != Lexicon::kNone) lex_end = ctx.lex_logp(0, exact);
      double mass = 0.0;
      for (int id : lexicon.IdsBelow(t)) {
        if (id != exact) mass += lex_prob(0, id);
      }
      if (mass > 0.0) lex_con = std::log(mass);
    }
    if (separator || last) {
      char_con = kNegInf;
      lex_con = kNegInf;
    }
    out.ends[i] = kernels::LogAddExp(ctx.log_gate + char_end,
                                     ctx.log_one_minus_gate + lex_end);
    out.continues[i] = kernels::LogAddExp(ctx.log_gate + char_con,
                                          ctx.log_one_minus_gate + lex_con);
  }
  return out;
}

std::shared_ptr<const DecodeNode> NeuralDecodingModel::Child(
    const DecodeNode& base, int char_id, bool ends) const {
  const Node& node = static_cast<const Node&>(base);
  if (node.done) throw UsageError("cannot extend a finished hypothesis");
  if (ends && char_id == CharVocab::kEot) {
    auto done = std::make_shared<Node>();
    done->done = true;
    return done;
  }
  DecoderState state = model_.Extend(encoding_, node.state, char_id);
  if (ends) return AtBoundary(std::move(state));
  auto child = std::make_shared<Node>();
  child->state = std::move(state);
  child->start = node.start;
  child->chars = model_.CharAdvance(node.chars, char_id);
  child->trie =
      model_.lexicon().Child(node.trie, model_.vocab().Codepoint(char_id));
  child->open = node.open + 1;
  return child;
}

}  // namespace ssmt
