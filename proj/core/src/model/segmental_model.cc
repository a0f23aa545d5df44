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

#include "ssmt/model/segmental_model.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ssmt/common/errors.h"
#include "ssmt/numerics/tensor.h"
#include "ssmt/textproc/word_spans.h"

namespace ssmt {
namespace {

Tensor TanhOf(const Tensor& x) { return x.array().tanh(); }

}  // namespace

SegmentalModel::SegmentalModel(const ModelConfig& config, CharVocab vocab,
                               Lexicon lexicon)
    : config_(config), vocab_(std::move(vocab)), lexicon_(std::move(lexicon)) {
  config_.Validate();
  if (vocab_.size() != config_.char_vocab_size) {
    throw UsageError("char vocab size does not match the model config");
  }
  if (lexicon_.size() != config_.lexicon_size) {
    throw UsageError("lexicon size does not match the model config");
  }
  if (lexicon_.max_len() > config_.max_segment_length) {
    throw UsageError("lexicon entries longer than the maximum segment length");
  }
  const int d = config_.dim;
  InitRng rng(config_.seed);
  source_embed_ =
      EmbeddingTable(params_, "source_embed", config_.source_vocab_size, d, rng);
  char_embed_ =
      EmbeddingTable(params_, "char_embed", config_.char_vocab_size, d, rng);
  for (int l = 0; l < config_.encoder_layers; ++l) {
    const std::string p = "encoder." + std::to_string(l);
    EncoderLayer layer;
    layer.norm1 = LayerNormBlock(params_, p + ".norm1", d);
    layer.self_attention =
        MultiHeadAttention(params_, p + ".self", d, config_.heads, rng);
    layer.norm2 = LayerNormBlock(params_, p + ".norm2", d);
    layer.ffn.in = Affine(params_, p + ".ffn_in", d, config_.ff_dim, rng);
    layer.ffn.out = Affine(params_, p + ".ffn_out", config_.ff_dim, d, rng);
    encoder_.push_back(std::move(layer));
  }
  encoder_norm_ = LayerNormBlock(params_, "encoder.norm", d);
  for (int l = 0; l < config_.decoder_layers; ++l) {
    const std::string p = "decoder." + std::to_string(l);
    DecoderLayer layer;
    layer.norm1 = LayerNormBlock(params_, p + ".norm1", d);
    layer.self_attention =
        MultiHeadAttention(params_, p + ".self", d, config_.heads, rng);
    layer.norm2 = LayerNormBlock(params_, p + ".norm2", d);
    layer.cross_attention =
        MultiHeadAttention(params_, p + ".cross", d, config_.heads, rng);
    layer.norm3 = LayerNormBlock(params_, p + ".norm3", d);
    layer.ffn.in = Affine(params_, p + ".ffn_in", d, config_.ff_dim, rng);
    layer.ffn.out = Affine(params_, p + ".ffn_out", config_.ff_dim, d, rng);
    decoder_.push_back(std::move(layer));
  }
  decoder_norm_ = LayerNormBlock(params_, "decoder.norm", d);
  gate_ = Affine(params_, "gate", d, 1, rng);
  lex_head_ = Affine(params_, "lex_head", d, config_.lexicon_size, rng);
  const int hd = config_.char_lstm_dim;
  char_init_h_ = Affine(params_, "char_init_h", d, hd, rng);
  char_init_c_ = Affine(params_, "char_init_c", d, hd, rng);
  char_lstm_ = LstmCell(params_, "char_lstm", d, hd, rng);
  char_out_ = Affine(params_, "char_out", hd, num_outputs(), rng);
  first_step_mask_.assign(num_outputs(), 0);
  first_step_mask_[0] = 1;
}

int SegmentalModel::LexiconId(std::span<const int> seg) const {
  if (seg.empty() || static_cast<int>(seg.size()) > lexicon_.max_len()) {
    return Lexicon::kNone;
  }
  std::u32string text;
  text.reserve(seg.size());
  for (int id : seg) {
    if (id < CharVocab::kNumSpecials || id >= vocab_.size() ||
        vocab_.IsSeparator(id)) {
      return Lexicon::kNone;
    }
    text.push_back(vocab_.Codepoint(id));
  }
  return lexicon_.Find(text);
}

ColumnMask SegmentalModel::SourceMask(std::span<const int> source) const {
  if (source.empty()) throw UsageError("empty source sentence");
  ColumnMask mask(source.size(), 0);
  for (size_t i = 0; i < source.size(); ++i) {
    if (source[i] < 0 || source[i] >= config_.source_vocab_size) {
      throw UsageError("source token id out of range");
    }
    mask[i] = source[i] == 0 ? 1 : 0;
  }
  if (std::all_of(mask.begin(), mask.end(), [](uint8_t m) { return m; })) {
    throw UsageError("source sentence contains only padding");
  }
  return mask;
}

Tensor SegmentalModel::CharInput(std::span<const int> ids,
                                 int first_pos) const {
  Tensor x = char_embed_.Rows(ids) * std::sqrt(static_cast<double>(config_.dim));
  x += kernels::SinusoidalPositions(first_pos, static_cast<int>(ids.size()),
                                    config_.dim);
  return x;
}

Var SegmentalModel::FeedForwardGraph(Graph& g, const FeedForward& ffn,
                                     Var x) const {
  return ffn.out(g, ad::Relu(ffn.in(g, x)));
}

Tensor SegmentalModel::FeedForwardApply(const FeedForward& ffn,
                                        const Tensor& x) const {
  return ffn.out.Apply(ffn.in.Apply(x).cwiseMax(0.0));
}

Var SegmentalModel::EncodeSource(Graph& g, std::span<const int> source) const {
  const ColumnMask mask = SourceMask(source);
  const int n = static_cast<int>(source.size());
  Var x = ad::Dropout(ad::Add(
      ad::Scale(source_embed_(g, source),
                std::sqrt(static_cast<double>(config_.dim))),
      g.Constant(kernels::SinusoidalPositions(0, n, config_.dim))));
  for (const EncoderLayer& layer : encoder_) {
    const Var a = layer.norm1(g, x);
    x = ad::Add(x, ad::Dropout(layer.self_attention(g, a, a, mask, false)));
    x = ad::Add(x, ad::Dropout(
                       FeedForwardGraph(g, layer.ffn, layer.norm2(g, x))));
  }
  return encoder_norm_(g, x);
}

Var SegmentalModel::DecodeHistory(Graph& g, std::span<const int> prefix,
                                  Var memory,
                                  const ColumnMask& source_mask) const {
  std::vector<int> ids;
  ids.reserve(prefix.size() + 1);
  ids.push_back(CharVocab::kEos);
  ids.insert(ids.end(), prefix.begin(), prefix.end());
  const int n = static_cast<int>(ids.size());
  Var x = ad::Dropout(
      ad::Add(ad::Scale(char_embed_(g, ids),
                        std::sqrt(static_cast<double>(config_.dim))),
              g.Constant(kernels::SinusoidalPositions(0, n, config_.dim))));
  for (const DecoderLayer& layer : decoder_) {
    const Var a = layer.norm1(g, x);
    x = ad::Add(x, ad::Dropout(layer.self_attention(g, a, a, {}, true)));
    x = ad::Add(x, ad::Dropout(layer.cross_attention(
                       g, layer.norm2(g, x), memory, source_mask, false)));
    x = ad::Add(x, ad::Dropout(
                       FeedForwardGraph(g, layer.ffn, layer.norm3(g, x))));
  }
  return decoder_norm_(g, x);
}

ScoredGrid SegmentalModel::ScoreGrid(Graph& g, std::span<const int> source,
                                     std::span<const int> target) const {
  if (target.empty()) throw UsageError("empty target sentence");
  for (int id : target) {
    if (!IsSegmentChar(id)) throw UsageError("target id not a character");
  }
  const ColumnMask source_mask = SourceMask(source);
  const Var memory = EncodeSource(g, source);
  const int n = static_cast<int>(target.size());
  const int m = max_len();

  ScoredGrid grid{SegmentLattice(WordSpanMap::Build(target, vocab_), m), Var{}};
  const SegmentLattice& lattice = grid.lattice;
  const Var hidden =
      DecodeHistory(g, target.first(n - 1), memory, source_mask);  // n x d

  int longest = 1;
  for (const Cell& cell : lattice.cells()) longest = std::max(longest, cell.len);
  const int steps = std::min(m - 1, longest) + 1;

  // Char LSTM run from every start position at once. Row j of step t holds
  // the distribution over the (t+1)-th output after y[j, j + t).
  LstmCell::VarState state{ad::Tanh(char_init_h_(g, hidden)),
                           char_init_c_(g, hidden)};
  std::vector<Var> step_logp;
  for (int t = 0; t < steps; ++t) {
    std::vector<int> inputs(n, CharVocab::kEos);
    if (t > 0) {
      for (int j = 0; j < n; ++j) {
        if (j + t - 1 < n) inputs[j] = target[j + t - 1];
      }
    }
    state = char_lstm_(g, char_embed_(g, inputs), state);
    step_logp.push_back(ad::LogSoftmaxRows(
        char_out_(g, state.h), t == 0 ? first_step_mask_ : ColumnMask{}));
  }
  const Var all_logp = ad::ConcatRows(step_logp);

  std::vector<std::pair<int, int>> picks;
  std::vector<std::vector<int>> groups;
  std::vector<std::pair<int, int>> lex_cells;
  std::vector<std::pair<int, int>> gate_cells;
  groups.reserve(lattice.num_cells());
  for (const Cell& cell : lattice.cells()) {
    std::vector<int> group;
    for (int t = 0; t < cell.len; ++t) {
      group.push_back(static_cast<int>(picks.size()));
      picks.emplace_back(t * n + cell.start,
                         OutputIndex(target[cell.start + t]));
    }
    if (cell.len < m) {
      group.push_back(static_cast<int>(picks.size()));
      picks.emplace_back(cell.len * n + cell.start, 0);
    }
    groups.push_back(std::move(group));
    const int lex_id = LexiconId(target.subspan(cell.start, cell.len));
    lex_cells.emplace_back(lex_id == Lexicon::kNone ? -1 : cell.start,
                           std::max(lex_id, 0));
    gate_cells.emplace_back(cell.start, 0);
  }
  const Var char_terms = ad::SegmentSum(ad::Gather(all_logp, picks), groups);
  const Var lex_logp = ad::LogSoftmaxRows(lex_head_(g, hidden));
  const Var lex_terms = ad::Gather(lex_logp, lex_cells);
  const Var gate_logit = gate_(g, hidden);
  const Var log_gate = ad::Gather(ad::LogSigmoid(gate_logit), gate_cells);
  const Var log_not_gate =
      ad::Gather(ad::LogSigmoid(ad::Neg(gate_logit)), gate_cells);
  grid.scores = ad::LogAddExp(ad::Add(log_gate, char_terms),
                              ad::Add(log_not_gate, lex_terms));
  const Tensor& values = grid.scores.value();
  for (int c = 0; c < lattice.num_cells(); ++c) {
    grid.lattice.scores()[c] = values(c, 0);
  }
  return grid;
}

Var SegmentalModel::LogMarginal(Graph& g, std::span<const int> source,
                                std::span<const int> target) const {
  ScoredGrid grid = ScoreGrid(g, source, target);
  return ssmt::LogMarginal(grid.scores, grid.lattice);
}

SourceEncoding SegmentalModel::Encode(std::span<const int> source) const {
  Graph g(/*record=*/false);
  SourceEncoding enc;
  enc.pad_mask = SourceMask(source);
  enc.memory = EncodeSource(g, source).value();
  for (const DecoderLayer& layer : decoder_) {
    enc.cross_keys.push_back(layer.cross_attention.ProjectKeys(enc.memory));
    enc.cross_values.push_back(
        layer.cross_attention.ProjectValues(enc.memory));
  }
  return enc;
}

namespace {

void AppendRow(Tensor& t, const Tensor& row) {
  const Eigen::Index r = t.rows();
  t.conservativeResize(r + 1, row.cols());
  t.row(r) = row.row(0);
}

}  // namespace

DecoderState SegmentalModel::Start(const SourceEncoding& enc) const {
  DecoderState state;
  state.keys.assign(decoder_.size(), Tensor(0, config_.dim));
  state.values.assign(decoder_.size(), Tensor(0, config_.dim));
  // The BOS step is an extension of the empty state that is not recorded
  // in the history.
  DecoderState next = Extend(enc, state, CharVocab::kEos);
  next.history.clear();
  return next;
}

DecoderState SegmentalModel::Extend(const SourceEncoding& enc,
                                    const DecoderState& state,
                                    int char_id) const {
  if (!vocab_.IsEmittable(char_id)) {
    throw UsageError("decoder input id not emittable");
  }
  DecoderState next = state;
  const int pos = state.rows;
  const int id = char_id;
  Tensor x = CharInput(std::span<const int>(&id, 1), pos);
  for (size_t l = 0; l < decoder_.size(); ++l) {
    const DecoderLayer& layer = decoder_[l];
    const Tensor a = layer.norm1.Apply(x);
    AppendRow(next.keys[l], layer.self_attention.ProjectKeys(a));
    AppendRow(next.values[l], layer.self_attention.ProjectValues(a));
    x += layer.self_attention.Attend(a, next.keys[l], next.values[l], {});
    x += layer.cross_attention.Attend(layer.norm2.Apply(x), enc.cross_keys[l],
                                      enc.cross_values[l], enc.pad_mask);
    x += FeedForwardApply(layer.ffn, layer.norm3.Apply(x));
  }
  next.hidden = decoder_norm_.Apply(x);
  next.history.push_back(char_id);
  ++next.rows;
  return next;
}

DecoderState SegmentalModel::DecodePrefix(const SourceEncoding& enc,
                                          std::span<const int> prefix) const {
  DecoderState state = Start(enc);
  for (int id : prefix) state = Extend(enc, state, id);
  return state;
}

CharState SegmentalModel::MakeCharState(LstmCell::State lstm,
                                        const Tensor& logits_row,
                                        int consumed,
                                        double prefix_logp) const {
  CharState out;
  out.lstm = std::move(lstm);
  out.consumed = consumed;
  out.prefix_logp = prefix_logp;
  out.next_logp = kernels::LogSoftmaxRows(
      logits_row, consumed == 0 ? first_step_mask_ : ColumnMask{});
  return out;
}

SegmentContext SegmentalModel::Context(const DecoderState& state) const {
  SegmentContext ctx;
  ctx.gate_logit = gate_.Apply(state.hidden)(0, 0);
  ctx.log_gate = kernels::LogSigmoid(ctx.gate_logit);
  ctx.log_one_minus_gate = kernels::LogSigmoid(-ctx.gate_logit);
  ctx.lex_logp = kernels::LogSoftmaxRows(lex_head_.Apply(state.hidden));
  LstmCell::State init{TanhOf(char_init_h_.Apply(state.hidden)),
                       char_init_c_.Apply(state.hidden)};
  LstmCell::State lstm =
      char_lstm_.Step(char_embed_.Row(CharVocab::kEos), init);
  const Tensor logits = char_out_.Apply(lstm.h);
  ctx.char_start = MakeCharState(std::move(lstm), logits, 0, 0.0);
  return ctx;
}

double SegmentalModel::Gate(const DecoderState& state) const {
  return kernels::Sigmoid(gate_.Apply(state.hidden)(0, 0));
}

CharState SegmentalModel::CharAdvance(const CharState& state,
                                      int char_id) const {
  const int id = char_id;
  std::vector<CharState> out =
      CharAdvanceAll(state, std::span<const int>(&id, 1));
  return std::move(out[0]);
}

std::vector<CharState> SegmentalModel::CharAdvanceAll(
    const CharState& state, std::span<const int> candidates) const {
  if (state.consumed >= max_len() || state.next_logp.size() == 0) {
    throw UsageError("segment already at the maximum length");
  }
  for (int id : candidates) {
    if (!IsSegmentChar(id)) throw UsageError("char id not a character");
  }
  std::vector<CharState> out(candidates.size());
  const int consumed = state.consumed + 1;
  if (consumed == max_len()) {
    for (size_t i = 0; i < candidates.size(); ++i) {
      out[i].lstm = state.lstm;
      out[i].consumed = consumed;
      out[i].prefix_logp =
          state.prefix_logp + state.next_logp(0, OutputIndex(candidates[i]));
    }
    return out;
  }
  const Eigen::Index k = static_cast<Eigen::Index>(candidates.size());
  if (k == 0) return out;
  LstmCell::State batch{state.lstm.h.replicate(k, 1),
                        state.lstm.c.replicate(k, 1)};
  const LstmCell::State stepped =
      char_lstm_.Step(char_embed_.Rows(candidates), batch);
  const Tensor logp = kernels::LogSoftmaxRows(char_out_.Apply(stepped.h));
  for (Eigen::Index i = 0; i < k; ++i) {
    CharState& s = out[i];
    s.lstm.h = stepped.h.row(i);
    s.lstm.c = stepped.c.row(i);
    s.next_logp = logp.row(i);
    s.consumed = consumed;
    s.prefix_logp =
        state.prefix_logp + state.next_logp(0, OutputIndex(candidates[i]));
  }
  return out;
}

double SegmentalModel::CharSegmentLogProb(const SegmentContext& ctx,
                                          std::span<const int> seg) const {
  const int len = static_cast<int>(seg.size());
  if (len < 1 || len > max_len()) {
    throw UsageError("segment length must be in [1, " +
                     std::to_string(max_len()) + "]");
  }
  CharState state = ctx.char_start;
  for (int id : seg) state = CharAdvance(state, id);
  return len < max_len() ? state.prefix_logp + state.next_logp(0, 0)
                         : state.prefix_logp;
}

double SegmentalModel::LexSegmentLogProb(const SegmentContext& ctx,
                                         std::span<const int> seg) const {
  const int id = LexiconId(seg);
  return id == Lexicon::kNone ? kNegInf : ctx.lex_logp(0, id);
}

SegmentScore SegmentalModel::SegmentLogProb(const SegmentContext& ctx,
                                            std::span<const int> seg) const {
  SegmentScore score;
  score.gate = ctx.gate();
  score.char_term = CharSegmentLogProb(ctx, seg);
  score.lex_term = LexSegmentLogProb(ctx, seg);
  score.total = kernels::LogAddExp(ctx.log_gate + score.char_term,
                                   ctx.log_one_minus_gate + score.lex_term);
  return score;
}

}  // namespace ssmt
