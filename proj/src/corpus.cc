// Copyright 2026 The RNN-EM Tagger Authors.
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

#include "rnnem/corpus.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace rnnem {

Vocabulary::Vocabulary(std::vector<std::string> tokens) {
  for (const std::string& t : tokens) Add(t);
}

Vocabulary Vocabulary::WithSpecialTokens() {
  Vocabulary v;
  v.Add(kPadToken);
  v.Add(kUnkToken);
  return v;
}

int Vocabulary::Add(std::string_view token) {
  std::string key(token);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const int index = static_cast<int>(tokens_.size());
  tokens_.push_back(key);
  index_.emplace(std::move(key), index);
  return index;
}

std::optional<int> Vocabulary::Find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::Token(int index) const {
  if (index < 0 || static_cast<std::size_t>(index) >= tokens_.size()) {
    throw std::out_of_range("vocabulary index " + std::to_string(index) +
                            " out of range");
  }
  return tokens_[static_cast<std::size_t>(index)];
}

std::size_t Corpus::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sequences) n += s.size();
  return n;
}

std::vector<std::vector<std::string>> Corpus::LabelStrings() const {
  std::vector<std::vector<std::string>> out;
  out.reserve(sequences.size());
  for (const auto& s : sequences) {
    std::vector<std::string> labels;
    labels.reserve(s.size());
    for (int l : s.labels) labels.push_back(label_vocab.Token(l));
    out.push_back(std::move(labels));
  }
  return out;
}

Corpus ParseConll(std::istream& in, const ConllOptions& options,
                  const std::string& source) {
  Corpus corpus;
  if (options.reuse_vocab != nullptr) {
    corpus.word_vocab = options.reuse_vocab->word_vocab;
    corpus.label_vocab = options.reuse_vocab->label_vocab;
  } else {
    corpus.word_vocab = Vocabulary::WithSpecialTokens();
  }
  if (options.label_column == 0) {
    throw std::invalid_argument("label column must differ from token column");
  }

  TaggedSequence current;
  auto flush = [&] {
    if (!current.words.empty()) corpus.sequences.push_back(std::move(current));
    current = TaggedSequence{};
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::vector<std::string> cols;
    for (std::string f; fields >> f;) cols.push_back(std::move(f));
    if (cols.empty()) {
      flush();
      continue;
    }
    if (cols.size() <= options.label_column) {
      throw ParseError(source + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(options.label_column + 1) +
                       " columns, found " + std::to_string(cols.size()));
    }
    const std::string& token = cols[0];
    const std::string& label = cols[options.label_column];
    int word_index;
    int label_index;
    if (options.reuse_vocab != nullptr) {
      word_index = corpus.word_vocab.Find(token).value_or(kUnkIndex);
      auto found = corpus.label_vocab.Find(label);
      if (!found) {
        throw ParseError(source + ":" + std::to_string(line_no) + ": label '" +
                         label + "' is not in the model's label vocabulary");
      }
      label_index = *found;
    } else {
      word_index = corpus.word_vocab.Add(token);
      label_index = corpus.label_vocab.Add(label);
    }
    current.words.push_back(word_index);
    current.labels.push_back(label_index);
    current.raw_tokens.push_back(token);
  }
  flush();
  if (corpus.sequences.empty()) {
    throw ParseError(source + ": no sentences found");
  }
  return corpus;
}

Corpus LoadConll(const std::filesystem::path& path,
                 const ConllOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return ParseConll(in, options, path.string());
}

void WriteConll(const Corpus& corpus, std::ostream& out) {
  for (const auto& s : corpus.sequences) {
    for (std::size_t t = 0; t < s.size(); ++t) {
      out << s.raw_tokens[t] << '\t' << corpus.label_vocab.Token(s.labels[t])
          << '\n';
    }
    out << '\n';
  }
}

void WriteConll(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  WriteConll(corpus, out);
}

void WritePredictions(const Corpus& corpus,
                      const std::vector<std::vector<int>>& predicted,
                      std::ostream& out) {
  if (predicted.size() != corpus.sequences.size()) {
    throw std::invalid_argument("prediction count does not match corpus");
  }
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const auto& s = corpus.sequences[i];
    if (predicted[i].size() != s.size()) {
      throw std::invalid_argument("prediction length mismatch in sentence " +
                                  std::to_string(i));
    }
    for (std::size_t t = 0; t < s.size(); ++t) {
      out << s.raw_tokens[t] << '\t' << corpus.label_vocab.Token(s.labels[t])
          << '\t' << corpus.label_vocab.Token(predicted[i][t]) << '\n';
    }
    out << '\n';
  }
}

}  // namespace rnnem
