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

#include "cli/commands.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "cli/run_config.h"
#include "ssmt/common/errors.h"
#include "ssmt/compgen/compgen.h"
#include "ssmt/decoder/translator.h"
#include "ssmt/metrics/bootstrap.h"
#include "ssmt/metrics/chrf.h"
#include "ssmt/metrics/segmentation_metrics.h"
#include "ssmt/training/model_io.h"
#include "ssmt/training/pipeline.h"
#include "ssmt/training/trainer.h"

namespace ssmt::cli {
namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  if (in.bad()) throw DataError("error reading file: " + path);
  return lines;
}

void WriteLines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  for (const auto& line : lines) out << line << '\n';
  if (!out) throw DataError("error writing file: " + path);
}

namespace {

constexpr char kBpeFile[] = "bpe.txt";
constexpr char kVocabFile[] = "vocab.txt";
constexpr char kLexiconFile[] = "lexicon.txt";
constexpr char kModelFile[] = "model.ckpt";
constexpr char kStateFile[] = "train_state.ckpt";
constexpr char kTrainLog[] = "train_log.tsv";

std::string FileHash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "";
  std::stringstream bytes;
  bytes << in.rdbuf();
  return HexHash(Fnv1a(bytes.str()));
}

// Inputs, config hash and outputs of one command invocation.
class Manifest {
 public:
  Manifest(std::string command, const RunConfig& config)
      : command_(std::move(command)), config_(config) {}

  void Input(const std::string& path) { inputs_.push_back(path); }
  void Output(const std::string& path) { outputs_.push_back(path); }
  ordered_json& extra() { return extra_; }

  void Write(const std::string& path) const {
    ordered_json j;
    j["command"] = command_;
    j["config_hash"] = HexHash(config_.Hash());
    ordered_json config = ordered_json::object();
    for (const auto& key : RunConfig::Keys()) config[key] = config_.Get(key);
    j["config"] = config;
    auto files = [](const std::vector<std::string>& paths) {
      ordered_json list = ordered_json::array();
      for (const auto& p : paths) {
        list.push_back({{"path", p}, {"fnv1a", FileHash(p)}});
      }
      return list;
    };
    j["inputs"] = files(inputs_);
    j["outputs"] = files(outputs_);
    if (!extra_.empty()) j["results"] = extra_;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write manifest: " + path);
    out << j.dump(2) << '\n';
  }

 private:
  std::string command_;
  const RunConfig& config_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  ordered_json extra_;
};

void EnsureDir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create directory " + dir + ": " + ec.message());
}

std::string Require(const std::string& value, const std::string& key) {
  if (value.empty()) throw UsageError("missing required setting " + key);
  return value;
}

Artifacts LoadArtifacts(const RunConfig& config) {
  Artifacts a;
  a.bpe = BpeModel::LoadFile(config.ArtifactPath(kBpeFile));
  a.vocab = CharVocab::LoadFile(config.ArtifactPath(kVocabFile));
  a.lexicon = Lexicon::LoadFile(config.ArtifactPath(kLexiconFile));
  return a;
}

std::unique_ptr<SegmentalModel> LoadTrainedModel(const RunConfig& config,
                                                 const Artifacts& artifacts) {
  const std::string path = config.ArtifactPath(kModelFile);
  const ModelConfig model_config = ReadModelConfig(path);
  std::unique_ptr<SegmentalModel> model;
  try {
    model = MakeModel(artifacts, model_config);
  } catch (const UsageError& e) {
    throw DataError(path + " does not match the artifacts: " + e.what());
  }
  LoadModelWeights(path, *model);
  return model;
}

std::vector<int> SourceIds(const Artifacts& artifacts, const std::string& line,
                           size_t index) {
  std::vector<int> ids = EncodeSource(artifacts, line);
  if (ids.empty()) {
    throw DataError("empty source sentence on line " + std::to_string(index + 1));
  }
  return ids;
}

// Runs fn(i) for every index on the configured number of workers.
template <typename Fn>
void ParallelFor(size_t n, Fn fn) {
  const int workers =
      std::max(1, std::min<int>(ThreadsFromEnvironment(), static_cast<int>(n)));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void WriteOrPrint(const std::string& path, const std::vector<std::string>& lines,
                  std::ostream& out) {
  if (path.empty()) {
    for (const auto& line : lines) out << line << '\n';
  } else {
    WriteLines(path, lines);
  }
}

std::string ManifestPath(const RunConfig& config, const std::string& explicit_path,
                         const std::string& command) {
  if (!explicit_path.empty()) return explicit_path;
  EnsureDir(config.paths.work_dir);
  return config.ArtifactPath(command + ".manifest.json");
}

// ---- commands ----

void Preprocess(const RunConfig& config, const std::string& manifest_path,
                std::ostream& out) {
  const std::string src = Require(config.paths.train_source, "paths.train_source");
  const std::string tgt = Require(config.paths.train_target, "paths.train_target");
  const auto source = ReadLines(src);
  const auto target = ReadLines(tgt);
  const Artifacts a = BuildArtifacts(source, target, config.preprocess);
  EnsureDir(config.paths.work_dir);
  Manifest manifest("preprocess", config);
  manifest.Input(src);
  manifest.Input(tgt);
  a.bpe.SaveFile(config.ArtifactPath(kBpeFile));
  a.vocab.SaveFile(config.ArtifactPath(kVocabFile));
  a.lexicon.SaveFile(config.ArtifactPath(kLexiconFile));
  for (const char* f : {kBpeFile, kVocabFile, kLexiconFile}) {
    manifest.Output(config.ArtifactPath(f));
  }
  manifest.extra() = {{"sentences", source.size()},
                      {"source_vocab_size", a.bpe.vocab_size()},
                      {"char_vocab_size", a.vocab.size()},
                      {"lexicon_size", a.lexicon.size()},
                      {"max_segment_length", a.lexicon.max_len()}};
  manifest.Write(ManifestPath(config, manifest_path, "preprocess"));
  out << "sentences\t" << source.size() << "\nsource_vocab_size\t"
      << a.bpe.vocab_size() << "\nchar_vocab_size\t" << a.vocab.size()
      << "\nlexicon_size\t" << a.lexicon.size() << "\nmax_segment_length\t"
      << a.lexicon.max_len() << '\n';
}

void Train(const RunConfig& config, const std::string& manifest_path,
           std::ostream& out, std::ostream& err) {
  const Artifacts a = LoadArtifacts(config);
  const std::string src = Require(config.paths.train_source, "paths.train_source");
  const std::string tgt = Require(config.paths.train_target, "paths.train_target");
  std::vector<TrainingExample> train =
      MakeExamples(a, ReadLines(src), ReadLines(tgt));
  std::vector<TrainingExample> valid;
  std::vector<std::string> valid_refs;
  const bool has_valid = !config.paths.valid_source.empty() ||
                         !config.paths.valid_target.empty();
  if (has_valid) {
    const auto vs = ReadLines(Require(config.paths.valid_source, "paths.valid_source"));
    valid_refs = ReadLines(Require(config.paths.valid_target, "paths.valid_target"));
    valid = MakeExamples(a, vs, valid_refs);
  }
  ModelConfig model_config = ConfigureModel(a, config.model);
  model_config.Validate();
  auto model = MakeModel(a, model_config);
  TrainOptions options = config.train;
  options.valid_beam = config.decode.beam;
  Trainer trainer(*model, std::move(train), std::move(valid),
                  std::move(valid_refs), options);

  const std::string state_path = config.ArtifactPath(kStateFile);
  const std::string model_path = config.ArtifactPath(kModelFile);
  const std::string log_path = config.ArtifactPath(kTrainLog);
  if (config.resume && fs::exists(state_path)) {
    trainer.LoadState(state_path);
    err << "resumed from " << state_path << " at step " << trainer.step() << '\n';
  }
  std::ofstream log(log_path, config.resume ? std::ios::app : std::ios::trunc);
  if (!log) throw DataError("cannot write file: " + log_path);
  if (!config.resume) log << "epoch\tsteps\ttrain_loss\tvalid_chrf\tvalid_exact\tseconds\n";

  trainer.Train(
      [&](const EpochLog& e) {
        log << e.epoch << '\t' << e.steps << '\t' << e.train_loss << '\t'
            << e.valid_chrf << '\t' << e.valid_exact << '\t' << e.seconds
            << std::endl;
        err << "epoch " << e.epoch << " loss " << e.train_loss << " valid_chrf "
            << e.valid_chrf << " exact " << e.valid_exact << " steps "
            << e.steps << '\n';
        trainer.SaveState(state_path);
      },
      [&](const EpochLog&) { SaveModel(model_path, *model); });

  const TrainProgress& p = trainer.progress();
  Manifest manifest("train", config);
  manifest.Input(src);
  manifest.Input(tgt);
  if (has_valid) {
    manifest.Input(config.paths.valid_source);
    manifest.Input(config.paths.valid_target);
  }
  manifest.Output(model_path);
  manifest.Output(state_path);
  manifest.Output(log_path);
  manifest.extra() = {{"epochs", p.log.size()},
                      {"steps", trainer.step()},
                      {"best_epoch", p.best_epoch},
                      {"best_score", p.best_score},
                      {"parameters", model->params().num_scalars()},
                      {"threads", trainer.threads()}};
  manifest.Write(ManifestPath(config, manifest_path, "train"));
  out << "epochs\t" << p.log.size() << "\nsteps\t" << trainer.step()
      << "\nbest_epoch\t" << p.best_epoch << "\nbest_score\t" << p.best_score
      << '\n';
}

struct TranslateArgs {
  std::string input;
  std::string output;
  std::string segmentation;
  bool mixture = false;
};

void TranslateCommand(const RunConfig& config, const TranslateArgs& args,
                      const std::string& manifest_path, std::ostream& out) {
  const auto sources = ReadLines(args.input);
  std::vector<std::string> texts(sources.size()), segmented(sources.size());
  if (!sources.empty()) {
    const Artifacts a = LoadArtifacts(config);
    const auto model = LoadTrainedModel(config, a);
    std::vector<std::vector<int>> ids;
    for (size_t i = 0; i < sources.size(); ++i) {
      ids.push_back(SourceIds(a, sources[i], i));
    }
    const DecodeAlgorithm algorithm =
        args.mixture ? DecodeAlgorithm::kMixtureBeam : DecodeAlgorithm::kDynamic;
    ParallelFor(sources.size(), [&](size_t i) {
      const Translation t = Translate(*model, ids[i], config.decode.beam,
                                      algorithm, config.decode.reading);
      texts[i] = t.text;
      segmented[i] = t.segmented;
    });
  }
  WriteOrPrint(args.output, texts, out);
  if (!args.segmentation.empty()) WriteLines(args.segmentation, segmented);
  Manifest manifest("translate", config);
  manifest.Input(args.input);
  if (!args.output.empty()) manifest.Output(args.output);
  if (!args.segmentation.empty()) manifest.Output(args.segmentation);
  manifest.extra() = {{"sentences", sources.size()},
                      {"algorithm", args.mixture ? "mixture_beam" : "dynamic"}};
  manifest.Write(ManifestPath(config, manifest_path, "translate"));
}

void SegmentCommand(const RunConfig& config, const std::string& target_path,
                    const std::string& source_path, const std::string& output,
                    const std::string& manifest_path, std::ostream& out) {
  if (source_path.empty()) {
    throw UsageError(
        "segment requires --source: the model scores target segmentations "
        "conditioned on the source sentence");
  }
  const auto targets = ReadLines(target_path);
  const auto sources = ReadLines(source_path);
  if (targets.size() != sources.size()) {
    throw DataError("source and target line counts differ: " +
                    std::to_string(sources.size()) + " vs " +
                    std::to_string(targets.size()));
  }
  std::vector<std::string> lines(targets.size());
  if (!targets.empty()) {
    const Artifacts a = LoadArtifacts(config);
    const auto model = LoadTrainedModel(config, a);
    ParallelFor(targets.size(), [&](size_t i) {
      for (int id : a.vocab.EncodeTarget(targets[i])) {
        if (id == CharVocab::kUnk) {
          throw DataError("unknown target character on line " +
                          std::to_string(i + 1));
        }
      }
      lines[i] = SegmentSentence(*model, SourceIds(a, sources[i], i), targets[i],
                                 config.decode.beam.delimiter);
    });
  }
  WriteOrPrint(output, lines, out);
  Manifest manifest("segment", config);
  manifest.Input(target_path);
  manifest.Input(source_path);
  if (!output.empty()) manifest.Output(output);
  manifest.extra() = {{"sentences", lines.size()}};
  manifest.Write(ManifestPath(config, manifest_path, "segment"));
}

// One word per line as "surface<TAB>seg" or a bare segmented word, or whole
// segmented sentences split on whitespace.
std::vector<SegmentedWord> ReadSegmentedWords(const std::string& path,
                                              const std::string& delimiter) {
  std::vector<SegmentedWord> words;
  for (const std::string& line : ReadLines(path)) {
    if (line.find('\t') != std::string::npos) {
      for (auto& w : ParseGoldLines({line}, delimiter)) words.push_back(w);
      continue;
    }
    std::istringstream in(line);
    std::string token;
    while (in >> token) words.push_back(ParseSegmentedWord(token, delimiter));
  }
  return words;
}

struct EvalArgs {
  std::string hyp, ref, compare, pred_seg, gold_seg;
  int resamples = 1000;
  uint64_t seed = 12345;
};

void PrintReport(const std::string& name, const ScoreReport& r, std::ostream& out,
                 ordered_json& results) {
  out << name << "_precision\t" << r.precision << '\n'
      << name << "_recall\t" << r.recall << '\n'
      << name << "_f1\t" << r.f1 << '\n'
      << name << "_counts\ttp=" << r.true_positives
      << " fp=" << r.false_positives << " fn=" << r.false_negatives << '\n';
  results[name] = {{"precision", r.precision},
                   {"recall", r.recall},
                   {"f1", r.f1},
                   {"true_positives", r.true_positives},
                   {"false_positives", r.false_positives},
                   {"false_negatives", r.false_negatives}};
}

void EvalCommand(const RunConfig& config, const EvalArgs& args,
                 const std::string& manifest_path, std::ostream& out) {
  const bool mt = !args.hyp.empty() || !args.ref.empty();
  const bool seg = !args.pred_seg.empty() || !args.gold_seg.empty();
  if (!mt && !seg) {
    throw UsageError("eval needs --hyp/--ref or --pred-seg/--gold-seg");
  }
  Manifest manifest("eval", config);
  ordered_json& results = manifest.extra();
  out.precision(6);
  out << std::fixed;
  if (mt) {
    const auto hyps = ReadLines(Require(args.hyp, "--hyp"));
    const auto refs = ReadLines(Require(args.ref, "--ref"));
    manifest.Input(args.hyp);
    manifest.Input(args.ref);
    const ChrfStats stats = [&] {
      if (hyps.size() != refs.size()) {
        throw DataError("hypothesis and reference line counts differ: " +
                        std::to_string(hyps.size()) + " vs " +
                        std::to_string(refs.size()));
      }
      ChrfStats total;
      for (size_t i = 0; i < hyps.size(); ++i) {
        total += ChrfSentenceStats(hyps[i], refs[i]);
      }
      return total;
    }();
    const double chrf = ChrfFromStats(stats);
    out << "chrF\t" << chrf << '\n';
    results["chrF"] = chrf;
    if (!args.compare.empty()) {
      const auto other = ReadLines(args.compare);
      manifest.Input(args.compare);
      const BootstrapResult b =
          PairedBootstrapChrf(hyps, other, refs, args.resamples, args.seed);
      out << "chrF_compare\t" << b.score_b << '\n'
          << "bootstrap_p\t" << b.p_value << '\n'
          << "bootstrap_resamples\t" << b.resamples << '\n';
      results["bootstrap"] = {{"chrF_a", b.score_a},
                              {"chrF_b", b.score_b},
                              {"p_value", b.p_value},
                              {"resamples", b.resamples},
                              {"seed", args.seed}};
    }
  }
  if (seg) {
    const std::string& delim = config.decode.beam.delimiter;
    const auto pred = ReadSegmentedWords(Require(args.pred_seg, "--pred-seg"), delim);
    const auto gold = ReadSegmentedWords(Require(args.gold_seg, "--gold-seg"), delim);
    manifest.Input(args.pred_seg);
    manifest.Input(args.gold_seg);
    PrintReport("boundary", BoundaryPrf(pred, gold), out, results);
    PrintReport("morpheme", MorphemePrf(pred, gold), out, results);
  }
  manifest.Write(ManifestPath(config, manifest_path, "eval"));
}

struct SplitArgs {
  std::string train_seg, test_seg, test_source, test_target, out_dir;
  SplitSpec spec;
};

void SplitCommand(const RunConfig& config, const SplitArgs& args,
                  const std::string& manifest_path, std::ostream& out) {
  const std::string& delim = config.decode.beam.delimiter;
  auto read_corpus = [&](const std::string& path) {
    std::vector<SegmentedSentence> corpus;
    for (const auto& line : ReadLines(path)) {
      corpus.push_back(ParseSegmentedSentence(line, delim));
    }
    return corpus;
  };
  const auto train = read_corpus(Require(args.train_seg, "--train-seg"));
  const auto test = read_corpus(Require(args.test_seg, "--test-seg"));
  const std::string out_dir = Require(args.out_dir, "--out-dir");
  EnsureDir(out_dir);
  const SubsetResult result = ExtractSubset(train, test, args.spec);
  const GenbenchReport report =
      MakeGenbenchReport(args.spec, train.size(), test.size(), result);

  Manifest manifest("split", config);
  manifest.Input(args.train_seg);
  manifest.Input(args.test_seg);
  const std::string indices_path = (fs::path(out_dir) / "indices.txt").string();
  const std::string report_path = (fs::path(out_dir) / "report.json").string();
  std::vector<std::string> index_lines;
  for (int i : result.indices) index_lines.push_back(std::to_string(i));
  WriteLines(indices_path, index_lines);
  WriteLines(report_path, {report.ToJson()});
  manifest.Output(indices_path);
  manifest.Output(report_path);
  for (const auto& [in_path, name] :
       {std::pair{args.test_source, "subset.source"},
        std::pair{args.test_target, "subset.target"},
        std::pair{args.test_seg, "subset.seg"}}) {
    if (in_path.empty()) continue;
    const auto lines = ReadLines(in_path);
    if (lines.size() != test.size()) {
      throw DataError(in_path + " is not aligned with the test segmentations");
    }
    std::vector<std::string> subset;
    for (int i : result.indices) subset.push_back(lines[i]);
    const std::string path = (fs::path(out_dir) / name).string();
    WriteLines(path, subset);
    manifest.Input(in_path);
    manifest.Output(path);
  }
  manifest.extra() = {{"compound_divergence", result.compound_divergence},
                      {"atom_divergence", result.atom_divergence},
                      {"size", result.indices.size()}};
  manifest.Write(ManifestPath(config, manifest_path, "split"));
  out.precision(6);
  out << std::fixed << "compound_divergence\t" << result.compound_divergence
      << "\natom_divergence\t" << result.atom_divergence << "\nsize\t"
      << result.indices.size() << '\n';
}

// Applies "--section.key value" and "--section.key=value" pairs.
void ApplyOverrides(const std::vector<std::string>& extras, RunConfig& config) {
  for (size_t i = 0; i < extras.size(); ++i) {
    const std::string& arg = extras[i];
    if (arg.rfind("--", 0) != 0 || arg.find('.') == std::string::npos) {
      throw UsageError("unexpected argument: " + arg);
    }
    const size_t eq = arg.find('=');
    if (eq != std::string::npos) {
      config.Set(arg.substr(2, eq - 2), arg.substr(eq + 1));
    } else {
      if (i + 1 >= extras.size()) throw UsageError("missing value for " + arg);
      config.Set(arg.substr(2), extras[++i]);
    }
  }
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Subword segmental machine translation"};
  app.require_subcommand(1);
  std::string config_path;
  std::string manifest_path;
  app.add_option("--config", config_path, "INI run configuration");
  app.add_option("--manifest", manifest_path,
                 "Manifest path (default: <work_dir>/<command>.manifest.json)");

  auto* preprocess =
      app.add_subcommand("preprocess", "Build source BPE, character vocabulary and lexicon");
  auto* train = app.add_subcommand("train", "Train with validation early stopping");
  auto* translate = app.add_subcommand("translate", "Translate a source file");
  auto* segment = app.add_subcommand("segment", "Viterbi-segment target sentences");
  auto* eval = app.add_subcommand("eval", "chrF, bootstrap and segmentation scores");
  auto* split = app.add_subcommand("split", "Extract a compositional generalization subset");

  TranslateArgs translate_args;
  translate->add_option("--input", translate_args.input, "Source sentences")->required();
  translate->add_option("--output", translate_args.output, "Output file (default stdout)");
  translate->add_option("--emit-segmentation", translate_args.segmentation,
                        "Also write delimiter-segmented outputs here");
  translate->add_flag("--mixture-beam", translate_args.mixture,
                      "Beam search over whole subwords instead of dynamic decoding");

  std::string segment_target, segment_source, segment_output;
  segment->add_option("--target", segment_target, "Target sentences")->required();
  segment->add_option("--source", segment_source, "Aligned source sentences");
  segment->add_option("--output", segment_output, "Output file (default stdout)");

  EvalArgs eval_args;
  eval->add_option("--hyp", eval_args.hyp, "System output");
  eval->add_option("--ref", eval_args.ref, "References");
  eval->add_option("--compare", eval_args.compare,
                   "Second system output for paired bootstrap");
  eval->add_option("--pred-seg", eval_args.pred_seg, "Predicted segmentations");
  eval->add_option("--gold-seg", eval_args.gold_seg, "Gold segmentations");
  eval->add_option("--resamples", eval_args.resamples, "Bootstrap resamples");
  eval->add_option("--seed", eval_args.seed, "Bootstrap seed");

  SplitArgs split_args;
  split->add_option("--train-seg", split_args.train_seg, "Segmented training corpus")
      ->required();
  split->add_option("--test-seg", split_args.test_seg, "Segmented test pool")->required();
  split->add_option("--test-source", split_args.test_source, "Test pool sources");
  split->add_option("--test-target", split_args.test_target, "Test pool targets");
  split->add_option("--out-dir", split_args.out_dir, "Output directory")->required();
  split->add_option("--target-dc", split_args.spec.target_compound_divergence,
                    "Target compound divergence");
  split->add_option("--size", split_args.spec.size, "Subset size");
  split->add_option("--sample-size", split_args.spec.sample_size,
                    "Candidates sampled per iteration");
  split->add_option("--seed", split_args.spec.seed, "Sampling seed");

  for (auto* sub : {preprocess, train, translate, segment, eval, split}) {
    sub->allow_extras();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    RunConfig config =
        config_path.empty() ? RunConfig() : RunConfig::FromFile(config_path);
    CLI::App* sub = app.get_subcommands().front();
    ApplyOverrides(sub->remaining(), config);
    if (sub == preprocess) {
      Preprocess(config, manifest_path, out);
    } else if (sub == train) {
      Train(config, manifest_path, out, err);
    } else if (sub == translate) {
      TranslateCommand(config, translate_args, manifest_path, out);
    } else if (sub == segment) {
      SegmentCommand(config, segment_target, segment_source, segment_output,
                     manifest_path, out);
    } else if (sub == eval) {
      EvalCommand(config, eval_args, manifest_path, out);
    } else {
      SplitCommand(config, split_args, manifest_path, out);
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace ssmt::cli
