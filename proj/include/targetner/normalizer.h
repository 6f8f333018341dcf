// Copyright 2026 The Targetner Authors.
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

#ifndef TARGETNER_NORMALIZER_H_
#define TARGETNER_NORMALIZER_H_

#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "targetner/corpus.h"

namespace targetner {

class Config;

// Lowercased token types; the gazetteer vocabulary doubles as the hashtag
// segmentation dictionary.
using Vocabulary = std::unordered_set<std::string>;

inline constexpr std::string_view kUserPlaceholder = "#USER#";
inline constexpr std::string_view kMoviePlaceholder = "#MOVIE#";

enum class TokenKind {
  kWord,
  kNumber,
  kHashtag,  // '#'-prefixed until segmentation replaces it with bare segments
  kMention,
  kUrl,
  kPunctuation,
  kUserPlaceholder,
  kMoviePlaceholder,
};

const char* token_kind_name(TokenKind kind);

// [start, end) in code points of the raw tweet text.
struct CharRange {
  size_t start = 0;
  size_t end = 0;
  friend bool operator==(const CharRange&, const CharRange&) = default;
};

struct Token {
  std::string surface;
  TokenKind kind = TokenKind::kWord;
  std::optional<CharRange> origin;  // absent for injected placeholders

  friend bool operator==(const Token&, const Token&) = default;
};

struct NormalizedTweet {
  std::string source_id;
  std::vector<Token> tokens;
  size_t removed_count = 0;   // tokens dropped by the rules
  size_t original_count = 0;  // tokens produced by tokenize()
};

struct NormalizerConfig {
  NormalizerConfig();

  // Reads `articles`, `degree_adverbs` and `url_regex`; missing keys keep the
  // defaults.
  static NormalizerConfig from_config(const Config& cfg);

  void set_url_regex(const std::string& pattern);
  const std::string& url_regex() const { return url_regex_; }
  bool is_url(const std::string& surface) const;

  std::set<std::string> articles;
  // Words after which a trailing hashtag still reads as part of the clause.
  std::set<std::string> degree_adverbs;

 private:
  std::string url_regex_;
  std::regex url_pattern_;
};

enum class HashtagDisposition { kRemove, kSegment };

// Splits on whitespace, then at punctuation boundaries. Hashtags, mentions,
// URLs and the #USER#/#MOVIE# placeholders stay atomic.
std::vector<Token> tokenize(std::string_view text);

// Drops URLs, pure-punctuation tokens and articles.
std::vector<Token> strip_noise(const std::vector<Token>& tokens,
                               const NormalizerConfig& cfg = {});

// Drops each "RT @user" pair and replaces remaining mentions with #USER#.
std::vector<Token> rewrite_social(const std::vector<Token>& tokens);

// A hashtag is dropped when it sits in the trailing block of hashtags, unless
// it opens that block right after a degree adverb ("so #damngood").
HashtagDisposition hashtag_disposition(const std::vector<Token>& tokens,
                                       size_t index,
                                       const NormalizerConfig& cfg = {});

// Fewest-segment cover of the '#'-stripped body by vocabulary words. Without
// a full cover, camel-case/digit runs are admitted as segments too. Ties go to
// the longest leftmost segment. Segments keep their original case.
std::vector<std::string> segment_hashtag(std::string_view hashtag,
                                         const Vocabulary& vocab);

NormalizedTweet normalize(const Tweet& tweet, const Vocabulary& vocab,
                          const NormalizerConfig& cfg = {});

// Debug dump form: tokens space-joined, segmented hashtags shown with '#'.
std::string render_normalized(const NormalizedTweet& norm);

// Plain surfaces joined by spaces; feeding this back through normalize()
// yields the same surfaces.
std::string detokenize(const NormalizedTweet& norm);

// 1 - (tokens after normalization / tokens before), over all tweets.
double token_reduction(const std::vector<NormalizedTweet>& tweets);

}  // namespace targetner

#endif  // TARGETNER_NORMALIZER_H_
