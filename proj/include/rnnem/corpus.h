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

#ifndef RNNEM_CORPUS_H_
#define RNNEM_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rnnem/special_tokens.h"

namespace rnnem {

// Malformed input file; the message carries source and line number.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Insertion-ordered token <-> index map.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> tokens);

  // <pad> at kPadIndex, <unk> at kUnkIndex.
  static Vocabulary WithSpecialTokens();

  // Index of token, inserting it at the end if absent.
  int Add(std::string_view token);
  std::optional<int> Find(std::string_view token) const;
  const std::string& Token(int index) const;

  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_;
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

struct TaggedSequence {
  std::vector<int> words;
  std::vector<int> labels;
  std::vector<std::string> raw_tokens;

  std::size_t size() const { return words.size(); }
};

struct Corpus {
  std::vector<TaggedSequence> sequences;
  Vocabulary word_vocab;
  Vocabulary label_vocab;

  std::size_t token_count() const;
  // Label strings of every sentence, in order.
  std::vector<std::vector<std::string>> LabelStrings() const;
};

struct ConllOptions {
  // When set, word and label indices come from this corpus's vocabularies:
  // unseen words map to <unk>, unseen labels raise ParseError.
  const Corpus* reuse_vocab = nullptr;
  // Zero-based column holding the label; column 0 is the token. Extra
  // columns are ignored.
  std::size_t label_column = 1;
};

// Reads whitespace-separated "token label" lines, one sentence per block of
// nonblank lines.
Corpus ParseConll(std::istream& in, const ConllOptions& options = {},
                  const std::string& source = "<stream>");
Corpus LoadConll(const std::filesystem::path& path,
                 const ConllOptions& options = {});

// Two columns, tab separated, blank line after each sentence.
void WriteConll(const Corpus& corpus, std::ostream& out);
void WriteConll(const Corpus& corpus, const std::filesystem::path& path);

// Three columns: token, gold label, predicted label.
void WritePredictions(const Corpus& corpus,
                      const std::vector<std::vector<int>>& predicted,
                      std::ostream& out);

}  // namespace rnnem

#endif  // RNNEM_CORPUS_H_
