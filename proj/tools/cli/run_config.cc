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

#include "cli/run_config.h"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ssmt/common/errors.h"

namespace ssmt::cli {
namespace {

template <typename T>
T Parse(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (in.fail() || !in.eof()) {
    throw UsageError("bad value for " + key + ": \"" + value + "\"");
  }
  return out;
}

bool ParseBool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw UsageError("bad boolean for " + key + ": \"" + value + "\"");
}

std::string Str(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

struct Field {
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename T>
Field Number(T RunConfig::*section, auto member) {
  using V = std::remove_reference_t<decltype(std::declval<T&>().*member)>;
  return {[=](RunConfig& c, const std::string& k, const std::string& v) {
            (c.*section).*member = Parse<V>(k, v);
          },
          [=](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<V>) {
              return Str((c.*section).*member);
            } else {
              return std::to_string((c.*section).*member);
            }
          }};
}

Field Text(std::string PathsConfig::*member) {
  return {[=](RunConfig& c, const std::string&, const std::string& v) {
            c.paths.*member = v;
          },
          [=](const RunConfig& c) { return c.paths.*member; }};
}

const std::vector<std::pair<std::string, Field>>& Fields() {
  static const std::vector<std::pair<std::string, Field>> kFields = [] {
    std::vector<std::pair<std::string, Field>> f;
    f.emplace_back("paths.train_source", Text(&PathsConfig::train_source));
    f.emplace_back("paths.train_target", Text(&PathsConfig::train_target));
    f.emplace_back("paths.valid_source", Text(&PathsConfig::valid_source));
    f.emplace_back("paths.valid_target", Text(&PathsConfig::valid_target));
    f.emplace_back("paths.work_dir", Text(&PathsConfig::work_dir));
    f.emplace_back("model.dim", Number(&RunConfig::model, &ModelConfig::dim));
    f.emplace_back("model.ff_dim",
                   Number(&RunConfig::model, &ModelConfig::ff_dim));
    f.emplace_back("model.encoder_layers",
                   Number(&RunConfig::model, &ModelConfig::encoder_layers));
    f.emplace_back("model.decoder_layers",
                   Number(&RunConfig::model, &ModelConfig::decoder_layers));
    f.emplace_back("model.heads",
                   Number(&RunConfig::model, &ModelConfig::heads));
    f.emplace_back("model.char_lstm_dim",
                   Number(&RunConfig::model, &ModelConfig::char_lstm_dim));
    f.emplace_back("model.seed", Number(&RunConfig::model, &ModelConfig::seed));
    f.emplace_back("model.max_segment_length",
                   Number(&RunConfig::preprocess,
                          &PreprocessOptions::max_segment_length));
    f.emplace_back("model.lexicon_size",
                   Number(&RunConfig::preprocess,
                          &PreprocessOptions::lexicon_size));
    f.emplace_back("bpe.merges", Number(&RunConfig::preprocess,
                                        &PreprocessOptions::source_merges));
    f.emplace_back(
        "train.lr",
        Field{[](RunConfig& c, const std::string& k, const std::string& v) {
                c.train.adam.lr = Parse<double>(k, v);
              },
              [](const RunConfig& c) { return Str(c.train.adam.lr); }});
    f.emplace_back("train.warmup_steps",
                   Number(&RunConfig::train, &TrainOptions::warmup_steps));
    f.emplace_back("train.clip_norm",
                   Number(&RunConfig::train, &TrainOptions::clip_norm));
    f.emplace_back("train.batch_chars",
                   Number(&RunConfig::train, &TrainOptions::batch_chars));
    f.emplace_back("train.max_epochs",
                   Number(&RunConfig::train, &TrainOptions::max_epochs));
    f.emplace_back("train.min_epochs",
                   Number(&RunConfig::train, &TrainOptions::min_epochs));
    f.emplace_back("train.patience",
                   Number(&RunConfig::train, &TrainOptions::patience));
    f.emplace_back("train.dropout",
                   Number(&RunConfig::train, &TrainOptions::dropout));
    f.emplace_back("train.valid_sample",
                   Number(&RunConfig::train, &TrainOptions::valid_sample));
    f.emplace_back("train.seed", Number(&RunConfig::train, &TrainOptions::seed));
    f.emplace_back("train.time_limit_seconds",
                   Number(&RunConfig::train,
                          &TrainOptions::time_limit_seconds));
    f.emplace_back(
        "train.resume",
        Field{[](RunConfig& c, const std::string& k, const std::string& v) {
                c.resume = ParseBool(k, v);
              },
              [](const RunConfig& c) {
                return std::string(c.resume ? "true" : "false");
              }});
    f.emplace_back(
        "decode.beam_size",
        Field{[](RunConfig& c, const std::string& k, const std::string& v) {
                c.decode.beam.beam_size = Parse<int>(k, v);
              },
              [](const RunConfig& c) {
                return std::to_string(c.decode.beam.beam_size);
              }});
    f.emplace_back(
        "decode.max_chars",
        Field{[](RunConfig& c, const std::string& k, const std::string& v) {
                c.decode.beam.max_chars = Parse<int>(k, v);
              },
              [](const RunConfig& c) {
                return std::to_string(c.decode.beam.max_chars);
              }});
    f.emplace_back(
        "decode.length_normalize",
        Field{[](RunConfig& c, const std::string& k, const std::string& v) {
                c.decode.beam.length_normalize = ParseBool(k, v);
              },
              [](const RunConfig& c) {
                return std::string(c.decode.beam.length_normalize ? "true"
                                                                  : "false");
              }});
    f.emplace_back(
        "decode.delimiter",
        Field{[](RunConfig& c, const std::string& k, const std::string& v) {
                if (v.empty()) throw UsageError(k + " must not be empty");
                c.decode.beam.delimiter = v;
              },
              [](const RunConfig& c) { return c.decode.beam.delimiter; }});
    f.emplace_back(
        "decode.continue_reading",
        Field{[](RunConfig& c, const std::string& k, const std::string& v) {
                if (v == "partition") {
                  c.decode.reading = ContinueReading::kPartition;
                } else if (v == "verbatim") {
                  c.decode.reading = ContinueReading::kVerbatim;
                } else {
                  throw UsageError(k + " must be partition or verbatim");
                }
              },
              [](const RunConfig& c) {
                return std::string(c.decode.reading ==
                                           ContinueReading::kPartition
                                       ? "partition"
                                       : "verbatim");
              }});
    f.emplace_back(
        "decode.stop_rule",
        Field{[](RunConfig& c, const std::string& k, const std::string& v) {
                if (v == "bound") {
                  c.decode.beam.stop_rule = StopRule::kBound;
                } else if (v == "best_end") {
                  c.decode.beam.stop_rule = StopRule::kBestEndFinished;
                } else {
                  throw UsageError(k + " must be bound or best_end");
                }
              },
              [](const RunConfig& c) {
                return std::string(c.decode.beam.stop_rule == StopRule::kBound
                                       ? "bound"
                                       : "best_end");
              }});
    return f;
  }();
  return kFields;
}

const Field* FindField(const std::string& key) {
  for (const auto& [name, field] : Fields()) {
    if (name == key) return &field;
  }
  return nullptr;
}

}  // namespace

uint64_t Fnv1a(const std::string& bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string HexHash(uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

RunConfig RunConfig::FromText(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ptree_error& e) {
    throw UsageError(std::string("bad config: ") + e.what());
  }
  RunConfig config;
  for (const auto& [section, entries] : tree) {
    if (entries.empty() && !entries.data().empty()) {
      throw UsageError("config key outside a section: " + section);
    }
    for (const auto& [key, value] : entries) {
      config.Set(section + "." + key, value.data());
    }
  }
  return config;
}

RunConfig RunConfig::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read config file: " + path);
  std::stringstream text;
  text << in.rdbuf();
  return FromText(text.str());
}

void RunConfig::Set(const std::string& key, const std::string& value) {
  const Field* field = FindField(key);
  if (field == nullptr) throw UsageError("unknown config key: " + key);
  field->set(*this, key, value);
}

std::string RunConfig::Get(const std::string& key) const {
  const Field* field = FindField(key);
  if (field == nullptr) throw UsageError("unknown config key: " + key);
  return field->get(*this);
}

const std::vector<std::string>& RunConfig::Keys() {
  static const std::vector<std::string> kKeys = [] {
    std::vector<std::string> keys;
    for (const auto& entry : Fields()) keys.push_back(entry.first);
    return keys;
  }();
  return kKeys;
}

std::string RunConfig::Canonical() const {
  std::string out;
  for (const auto& [name, field] : Fields()) {
    out += name + "=" + field.get(*this) + "\n";
  }
  return out;
}

uint64_t RunConfig::Hash() const { return Fnv1a(Canonical()); }

std::string RunConfig::ArtifactPath(const std::string& name) const {
  return (std::filesystem::path(paths.work_dir) / name).string();
}

}  // namespace ssmt::cli
