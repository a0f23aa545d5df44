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

#include "ssmt/training/trainer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <thread>

#include <nlohmann/json.hpp>

#include "ssmt/common/errors.h"
#include "ssmt/decoder/translator.h"
#include "ssmt/metrics/chrf.h"
#include "ssmt/numerics/checkpoint.h"

namespace ssmt {
namespace {

uint64_t MixSeed(uint64_t seed, uint64_t value) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(value),
                    static_cast<uint32_t>(value >> 32)};
  std::mt19937_64 rng(seq);
  return rng();
}

double Now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

double ScheduledLearningRate(const TrainOptions& options, int64_t step) {
  if (options.warmup_steps <= 0) return options.adam.lr;
  const double t = static_cast<double>(std::max<int64_t>(step, 1));
  const double w = options.warmup_steps;
  return options.adam.lr * std::min(t / w, std::sqrt(w / t));
}

int ThreadsFromEnvironment() {
  const char* value = std::getenv("SSMT_THREADS");
  if (value == nullptr || *value == '\0') return 1;
  char* end = nullptr;
  const long n = std::strtol(value, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) {
    throw UsageError(std::string("SSMT_THREADS must be a positive integer, got ") +
                     value);
  }
  return static_cast<int>(n);
}

double NllAndGrad(const SegmentalModel& model, const TrainingExample& example,
                  Gradients* grads, double scale, double dropout,
                  uint64_t dropout_seed) {
  Graph g(/*record=*/grads != nullptr);
  g.SetDropout(dropout, dropout_seed);
  const Var log_p = model.LogMarginal(g, example.source, example.target);
  const double nll = -log_p.value()(0, 0);
  if (grads != nullptr && std::isfinite(nll)) {
    g.Backward(ad::Scale(log_p, -scale), *grads);
  }
  return nll;
}

std::vector<std::vector<int>> MakeBatches(
    const std::vector<TrainingExample>& examples, int batch_chars,
    uint64_t seed, int epoch) {
  if (batch_chars < 1) throw UsageError("batch size must be >= 1 character");
  std::vector<int> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(epoch)};
  std::mt19937_64 rng(seq);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<int>> batches;
  long chars = 0;
  for (int i : order) {
    const long len = static_cast<long>(examples[i].target.size());
    if (batches.empty() || chars + len > batch_chars) {
      batches.emplace_back();
      chars = 0;
    }
    batches.back().push_back(i);
    chars += len;
  }
  return batches;
}

BatchLoss BatchGradients(const SegmentalModel& model,
                         const std::vector<TrainingExample>& examples,
                         const std::vector<int>& batch, int threads,
                         Gradients& grads, double dropout, uint64_t seed) {
  BatchLoss out;
  for (int i : batch) out.chars += static_cast<long>(examples[i].target.size());
  out.sentence_nll.assign(batch.size(), 0.0);
  grads.SetZero();
  if (batch.empty()) return out;
  const double scale = 1.0 / out.chars;
  const int workers =
      std::max(1, std::min<int>(threads, static_cast<int>(batch.size())));

  auto run = [&](int w, Gradients& local) {
    const size_t lo = batch.size() * w / workers;
    const size_t hi = batch.size() * (w + 1) / workers;
    for (size_t k = lo; k < hi; ++k) {
      out.sentence_nll[k] = NllAndGrad(model, examples[batch[k]], &local, scale,
                                       dropout, MixSeed(seed, batch[k]));
    }
  };
  if (workers == 1) {
    run(0, grads);
  } else {
    std::vector<Gradients> partial;
    for (int w = 0; w < workers; ++w) partial.emplace_back(model.params());
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          run(w, partial[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (int w = 0; w < workers; ++w) grads.Add(partial[w]);
  }
  for (size_t k = 0; k < batch.size(); ++k) {
    if (!std::isfinite(out.sentence_nll[k])) {
      throw NumericError("non-finite loss on training sentence " +
                         std::to_string(batch[k] + 1));
    }
    out.nll += out.sentence_nll[k];
  }
  return out;
}

ValidationScore Validate(const SegmentalModel& model,
                         const std::vector<TrainingExample>& sources,
                         const std::vector<std::string>& references,
                         const BeamConfig& beam, int limit) {
  const size_t n = std::min<size_t>(sources.size(), std::max(limit, 0));
  ValidationScore score;
  std::vector<std::string> refs(references.begin(), references.begin() + n);
  int exact = 0;
  for (size_t i = 0; i < n; ++i) {
    score.hypotheses.push_back(Translate(model, sources[i].source, beam).text);
    if (score.hypotheses.back() == refs[i]) ++exact;
  }
  if (n > 0) {
    score.chrf = CorpusChrf(score.hypotheses, refs);
    score.exact = 100.0 * exact / n;
  }
  return score;
}

Trainer::Trainer(SegmentalModel& model, std::vector<TrainingExample> train,
                 std::vector<TrainingExample> valid,
                 std::vector<std::string> valid_refs, TrainOptions options)
    : model_(model),
      train_(std::move(train)),
      valid_(std::move(valid)),
      valid_refs_(std::move(valid_refs)),
      options_(std::move(options)),
      threads_(options_.threads > 0 ? options_.threads
                                    : ThreadsFromEnvironment()),
      start_time_(Now()) {
  if (train_.empty()) throw DataError("no training sentences");
  if (valid_.size() != valid_refs_.size()) {
    throw DataError("validation sources and references differ in length");
  }
  if (options_.patience < 1) throw UsageError("patience must be >= 1");
  if (!(options_.dropout >= 0.0 && options_.dropout < 1.0)) {
    throw UsageError("dropout must be in [0, 1)");
  }
  if (options_.max_epochs < 1) throw UsageError("max_epochs must be >= 1");
  batches_ = MakeBatches(train_, options_.batch_chars, options_.seed, 0);
}

double Trainer::Step() {
  if (progress_.finished) throw UsageError("training has already finished");
  Gradients grads(model_.params());
  const BatchLoss loss =
      BatchGradients(model_, train_, batches_[progress_.batch_cursor],
                     threads_, grads, options_.dropout,
                     MixSeed(options_.seed, static_cast<uint64_t>(step())));
  if (options_.clip_norm > 0) {
    const double norm = grads.Norm();
    if (!std::isfinite(norm)) {
      throw NumericError("non-finite gradient norm at step " +
                         std::to_string(step() + 1));
    }
    if (norm > options_.clip_norm) grads.Scale(options_.clip_norm / norm);
  }
  AdamOptions adam = options_.adam;
  adam.lr = ScheduledLearningRate(options_, step() + 1);
  AdamStep(model_.params(), grads, adam);
  progress_.epoch_nll += loss.nll;
  progress_.epoch_chars += loss.chars;
  if (++progress_.batch_cursor == static_cast<int>(batches_.size())) {
    EndEpoch();
  }
  return loss.nll / std::max(1L, loss.chars);
}

bool Trainer::ShouldStop(const TrainProgress& p, double seconds) const {
  return (p.bad_epochs >= options_.patience && p.epoch >= options_.min_epochs) ||
         p.epoch >= options_.max_epochs ||
         (options_.time_limit_seconds > 0 &&
          seconds >= options_.time_limit_seconds);
}

void Trainer::EndEpoch() {
  EpochLog log;
  log.epoch = progress_.epoch;
  log.train_loss = progress_.epoch_nll / std::max(1L, progress_.epoch_chars);
  log.steps = step();
  if (!valid_.empty()) {
    const ValidationScore v = Validate(model_, valid_, valid_refs_,
                                       options_.valid_beam,
                                       options_.valid_sample);
    log.valid_chrf = v.chrf;
    log.valid_exact = v.exact;
  }
  log.seconds = elapsed_before_ + Now() - start_time_;
  progress_.log.push_back(log);
  const double score = valid_.empty() ? -log.train_loss : log.valid_chrf;
  const bool better = progress_.best_epoch < 0 || score > progress_.best_score;
  progress_.improved = better || score == progress_.best_score;
  if (progress_.improved) {
    progress_.best_score = score;
    progress_.best_epoch = log.epoch;
  }
  progress_.bad_epochs = better ? 0 : progress_.bad_epochs + 1;
  ++progress_.epoch;
  progress_.batch_cursor = 0;
  progress_.epoch_nll = 0.0;
  progress_.epoch_chars = 0;
  progress_.finished = ShouldStop(progress_, log.seconds);
  batches_ = MakeBatches(train_, options_.batch_chars, options_.seed,
                         progress_.epoch);
}

void Trainer::Train(const std::function<void(const EpochLog&)>& on_epoch,
                    const std::function<void(const EpochLog&)>& on_best) {
  while (!progress_.finished) {
    const int epoch = progress_.epoch;
    Step();
    if (progress_.epoch != epoch) {
      if (progress_.improved && on_best) on_best(progress_.log.back());
      if (on_epoch) on_epoch(progress_.log.back());
    }
  }
}

void Trainer::SaveState(const std::string& path) const {
  nlohmann::json j;
  j["model"] = model_.config().ToText();
  j["adam_step"] = step();
  j["epoch"] = progress_.epoch;
  j["batch_cursor"] = progress_.batch_cursor;
  j["epoch_nll"] = progress_.epoch_nll;
  j["epoch_chars"] = progress_.epoch_chars;
  j["best_score"] = progress_.best_score;
  j["best_epoch"] = progress_.best_epoch;
  j["bad_epochs"] = progress_.bad_epochs;
  j["finished"] = progress_.finished;
  j["elapsed"] = elapsed_before_ + Now() - start_time_;
  nlohmann::json log = nlohmann::json::array();
  for (const EpochLog& e : progress_.log) {
    log.push_back({e.epoch, e.train_loss, e.valid_chrf, e.valid_exact, e.steps,
                   e.seconds});
  }
  j["log"] = log;
  WriteCheckpointFile(path, SnapshotParams(model_.params(), j.dump(),
                                           ArrayType::kFloat64,
                                           /*with_optimizer_state=*/true));
}

void Trainer::LoadState(const std::string& path) {
  const CheckpointData data = ReadCheckpointFile(path);
  try {
    const auto j = nlohmann::json::parse(data.header);
    if (!(ModelConfig::FromText(j.at("model").get<std::string>()) ==
          model_.config())) {
      throw DataError(path + ": training state belongs to another model");
    }
    RestoreParams(data, model_.params(), /*with_optimizer_state=*/true);
    model_.params().set_adam_step(j.at("adam_step").get<int64_t>());
    TrainProgress p;
    p.epoch = j.at("epoch").get<int>();
    p.batch_cursor = j.at("batch_cursor").get<int>();
    p.epoch_nll = j.at("epoch_nll").get<double>();
    p.epoch_chars = j.at("epoch_chars").get<long>();
    p.best_score = j.at("best_score").get<double>();
    p.best_epoch = j.at("best_epoch").get<int>();
    p.bad_epochs = j.at("bad_epochs").get<int>();
    const double elapsed = j.at("elapsed").get<double>();
    p.finished = ShouldStop(p, elapsed);
    for (const auto& e : j.at("log")) {
      p.log.push_back({e.at(0).get<int>(), e.at(1).get<double>(),
                       e.at(2).get<double>(), e.at(3).get<double>(),
                       e.at(4).get<int64_t>(), e.at(5).get<double>()});
    }
    batches_ = MakeBatches(train_, options_.batch_chars, options_.seed,
                           p.epoch);
    if (p.batch_cursor < 0 ||
        p.batch_cursor >= static_cast<int>(batches_.size())) {
      throw DataError(path + ": batch cursor out of range");
    }
    progress_ = std::move(p);
    elapsed_before_ = elapsed;
    start_time_ = Now();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": malformed training state: " + e.what());
  }
}

}  // namespace ssmt
