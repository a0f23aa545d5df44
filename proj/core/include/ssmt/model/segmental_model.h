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

#ifndef SSMT_MODEL_SEGMENTAL_MODEL_H_
#define SSMT_MODEL_SEGMENTAL_MODEL_H_

#include <cmath>
#include <memory>
#include <span>
#include <vector>

#include "ssmt/lattice/segment_lattice.h"
#include "ssmt/model/model_config.h"
#include "ssmt/numerics/autodiff.h"
#include "ssmt/numerics/layers.h"
#include "ssmt/numerics/param_store.h"
#include "ssmt/textproc/char_vocab.h"
#include "ssmt/textproc/lexicon.h"

namespace ssmt {

// Encoder output for one source sentence, with the cross-attention keys and
// values of every decoder layer precomputed for incremental decoding.
struct SourceEncoding {
  Tensor memory;
  ColumnMask pad_mask;
  std::vector<Tensor> cross_keys;
  std::vector<Tensor> cross_values;

  int length() const { return static_cast<int>(memory.rows()); }
};

// Main decoder after consuming BOS plus `length()` target characters.
// hidden is h_{j-1}, the context for a segment starting at j = length().
struct DecoderState {
  std::vector<Tensor> keys;    // per layer, (length + 1) x dim
  std::vector<Tensor> values;  // per layer, (length + 1) x dim
  Tensor hidden;               // 1 x dim
  std::vector<int> history;
  int rows = 0;                // decoder positions consumed, BOS included

  int length() const { return static_cast<int>(history.size()); }
};

// Character LSTM state after consuming `consumed` characters of a segment.
// next_logp holds log p(next output | prefix) over output symbols, where
// output o stands for vocabulary id o + CharVocab::kEos (output 0 is EOS).
// Once consumed reaches the maximum length the segment must end and
// next_logp is empty.
struct CharState {
  LstmCell::State lstm;
  Tensor next_logp;
  int consumed = 0;
  double prefix_logp = 0.0;  // log p_char of the consumed characters
};

// Everything a segment starting at position j needs from h_{j-1}.
struct SegmentContext {
  double gate_logit = 0.0;
  double log_gate = 0.0;
  double log_one_minus_gate = 0.0;
  Tensor lex_logp;  // 1 x V
  CharState char_start;

  double gate() const { return std::exp(log_gate); }
};

struct SegmentScore {
  double total = kNegInf;
  double gate = 0.5;
  double char_term = kNegInf;  // log p_char(seg)
  double lex_term = kNegInf;   // log p_lex(seg), -inf outside the lexicon
};

// Scored lattice for one target sentence plus the graph node holding the
// cell scores (aligned with lattice.cells()).
struct ScoredGrid {
  SegmentLattice lattice;
  Var scores;
};

// The subword-segmental encoder-decoder. A Transformer encoder reads the
// source tokens; a causal Transformer decoder reads the unsegmented target
// history; on top of h_{j-1} sit a gate, a lexicon softmax and a character
// LSTM, mixed as
//   p(s | y_<j, x) = g_j p_char(s | ...) + (1 - g_j) p_lex(s | ...).
// The char path emits EOS after the segment, except that segments of the
// maximum length end without it, so p_char normalizes over segments of
// length 1..m.
class SegmentalModel {
 public:
  SegmentalModel(const ModelConfig& config, CharVocab vocab, Lexicon lexicon);
  SegmentalModel(const SegmentalModel&) = delete;
  SegmentalModel& operator=(const SegmentalModel&) = delete;

  const ModelConfig& config() const { return config_; }
  const CharVocab& vocab() const { return vocab_; }
  const Lexicon& lexicon() const { return lexicon_; }
  ParamStore& params() { return params_; }
  const ParamStore& params() const { return params_; }
  int max_len() const { return config_.max_segment_length; }
  int num_outputs() const { return config_.char_vocab_size - CharVocab::kEos; }
  static int OutputIndex(int char_id) { return char_id - CharVocab::kEos; }
  // Ids that may appear inside a segment: EOT and the real characters.
  bool IsSegmentChar(int id) const {
    return id > CharVocab::kEos && id < vocab_.size();
  }

  // Lexicon id of the character-id sequence, or Lexicon::kNone.
  int LexiconId(std::span<const int> seg) const;

  // ---- graph path (training and full-sequence scoring) ----

  // |x| x dim; PAD tokens are masked as attention keys. Throws UsageError
  // on empty input.
  Var EncodeSource(Graph& g, std::span<const int> source) const;
  // (|prefix| + 1) x dim; row i is the decoder output after BOS and
  // prefix[0, i).
  Var DecodeHistory(Graph& g, std::span<const int> prefix, Var memory,
                    const ColumnMask& source_mask) const;
  // Scores every valid cell of the target's lattice, sharing one decoder
  // pass across all of them. The target should end with EOT.
  ScoredGrid ScoreGrid(Graph& g, std::span<const int> source,
                       std::span<const int> target) const;
  // log p(target | source) as a differentiable scalar.
  Var LogMarginal(Graph& g, std::span<const int> source,
                  std::span<const int> target) const;

  // ---- incremental path (decoding and oracles) ----

  SourceEncoding Encode(std::span<const int> source) const;
  DecoderState Start(const SourceEncoding& enc) const;
  DecoderState Extend(const SourceEncoding& enc, const DecoderState& state,
                      int char_id) const;
  DecoderState DecodePrefix(const SourceEncoding& enc,
                            std::span<const int> prefix) const;

  SegmentContext Context(const DecoderState& state) const;
  double Gate(const DecoderState& state) const;

  CharState CharAdvance(const CharState& state, int char_id) const;
  // Advances one state by every candidate at once; result[i] belongs to
  // candidates[i].
  std::vector<CharState> CharAdvanceAll(const CharState& state,
                                        std::span<const int> candidates) const;

  // log p_char(seg | y_<j, x) from the character LSTM alone. Throws
  // UsageError if |seg| is not in [1, m].
  double CharSegmentLogProb(const SegmentContext& ctx,
                            std::span<const int> seg) const;
  // log p_lex(seg | y_<j, x), -inf if seg is not in the lexicon.
  double LexSegmentLogProb(const SegmentContext& ctx,
                           std::span<const int> seg) const;
  SegmentScore SegmentLogProb(const SegmentContext& ctx,
                              std::span<const int> seg) const;
  SegmentScore SegmentLogProb(const DecoderState& state,
                              std::span<const int> seg) const {
    return SegmentLogProb(Context(state), seg);
  }

 private:
  struct FeedForward {
    Affine in;
    Affine out;
  };
  struct EncoderLayer {
    LayerNormBlock norm1;
    MultiHeadAttention self_attention;
    LayerNormBlock norm2;
    FeedForward ffn;
  };
  struct DecoderLayer {
    LayerNormBlock norm1;
    MultiHeadAttention self_attention;
    LayerNormBlock norm2;
    MultiHeadAttention cross_attention;
    LayerNormBlock norm3;
    FeedForward ffn;
  };

  Var FeedForwardGraph(Graph& g, const FeedForward& ffn, Var x) const;
  Tensor FeedForwardApply(const FeedForward& ffn, const Tensor& x) const;
  Tensor CharInput(std::span<const int> ids, int first_pos) const;
  ColumnMask SourceMask(std::span<const int> source) const;
  CharState MakeCharState(LstmCell::State lstm, const Tensor& logits_row,
                          int consumed, double prefix_logp) const;

  ModelConfig config_;
  CharVocab vocab_;
  Lexicon lexicon_;
  ParamStore params_;

  EmbeddingTable source_embed_;
  EmbeddingTable char_embed_;
  std::vector<EncoderLayer> encoder_;
  LayerNormBlock encoder_norm_;
  std::vector<DecoderLayer> decoder_;
  LayerNormBlock decoder_norm_;
  Affine gate_;
  Affine lex_head_;
  Affine char_init_h_;
  Affine char_init_c_;
  LstmCell char_lstm_;
  Affine char_out_;
  ColumnMask first_step_mask_;
};

}  // namespace ssmt

#endif  // SSMT_MODEL_SEGMENTAL_MODEL_H_
