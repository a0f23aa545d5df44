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

#include "ssmt/model/model_config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <sstream>

#include "ssmt/common/errors.h"

namespace ssmt {

void ModelConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw UsageError(std::string("invalid model config: ") + what);
  };
  require(source_vocab_size > 0, "source_vocab_size must be > 0");
  require(char_vocab_size > 4, "char_vocab_size must include characters");
  require(lexicon_size > 0, "lexicon_size must be > 0");
  require(max_segment_length >= 1, "max_segment_length must be >= 1");
  require(dim > 0 && ff_dim > 0 && char_lstm_dim > 0, "dims must be > 0");
  require(encoder_layers >= 0 && decoder_layers >= 0, "layer counts >= 0");
  require(heads > 0 && dim % heads == 0, "dim must be divisible by heads");
}

std::string ModelConfig::ToText() const {
  boost::property_tree::ptree tree;
  tree.put("model.source_vocab_size", source_vocab_size);
  tree.put("model.char_vocab_size", char_vocab_size);
  tree.put("model.lexicon_size", lexicon_size);
  tree.put("model.max_segment_length", max_segment_length);
  tree.put("model.dim", dim);
  tree.put("model.ff_dim", ff_dim);
  tree.put("model.encoder_layers", encoder_layers);
  tree.put("model.decoder_layers", decoder_layers);
  tree.put("model.heads", heads);
  tree.put("model.char_lstm_dim", char_lstm_dim);
  tree.put("model.seed", seed);
  std::ostringstream out;
  boost::property_tree::write_ini(out, tree);
  return out.str();
}

ModelConfig ModelConfig::FromText(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::read_ini(in, tree);
    ModelConfig c;
    c.source_vocab_size = tree.get<int>("model.source_vocab_size");
    c.char_vocab_size = tree.get<int>("model.char_vocab_size");
    c.lexicon_size = tree.get<int>("model.lexicon_size");
    c.max_segment_length = tree.get<int>("model.max_segment_length");
    c.dim = tree.get<int>("model.dim");
    c.ff_dim = tree.get<int>("model.ff_dim");
    c.encoder_layers = tree.get<int>("model.encoder_layers");
    c.decoder_layers = tree.get<int>("model.decoder_layers");
    c.heads = tree.get<int>("model.heads");
    c.char_lstm_dim = tree.get<int>("model.char_lstm_dim");
    c.seed = tree.get<uint64_t>("model.seed");
    return c;
  } catch (const boost::property_tree::ptree_error& e) {
    throw DataError(std::string("bad model config text: ") + e.what());
  }
}

}  // namespace ssmt
