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

#ifndef TARGETNER_FEATURES_H_
#define TARGETNER_FEATURES_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "targetner/candidates.h"
#include "targetner/deptree.h"
#include "targetner/embeddings.h"
#include "targetner/normalizer.h"

namespace targetner {

class Config;

// Sparse named features; indicators carry 1.0.
using FeatureVector = std::map<std::string, double>;

inline constexpr const char* kBosSentinel = "<S>";
inline constexpr const char* kEosSentinel = "</S>";

struct FeatureConfig {
  bool orthographic = true;
  bool ngram = true;
  bool syntactic = false;
  bool supplementary = false;
  size_t k = 10;
  int collection_year = 2014;

  // Keys features.{orthographic,ngram,syntactic,supplementary}, features.k
  // and collection_year; absent keys keep `base`.
  static FeatureConfig from_config(const Config& cfg,
                                   const FeatureConfig& base);
  static FeatureConfig from_config(const Config& cfg);
  // Enabled family names, comma-joined, in fixed order.
  std::string families() const;

  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

// all_lower, first_only, all_caps or mixed over the letters of `tokens`.
std::string cap_category(const std::vector<std::string>& tokens);

// `tokens` are the candidate tokens as written ('#' kept on hashtags).
FeatureVector orthographic_features(const std::vector<std::string>& tokens,
                                    MatchType match_type, int tweet_year,
                                    std::optional<int> entry_year,
                                    int collection_year);

// Surfaces with the candidate replaced by a single #MOVIE#; `*position`
// receives its index.
std::vector<std::string> movie_context(const NormalizedTweet& tweet,
                                       const TokenSpan& span,
                                       size_t* position);

// The ten window templates around tokens[i]. Throws ContractViolation when
// tokens[i] is not #MOVIE#.
FeatureVector ngram_features(const std::vector<std::string>& tokens, size_t i);

// Head, grand-head, sibling and dependent read-off around node `node`
// (0-based) of a tree that already has the candidate collapsed.
FeatureVector syntactic_features(const DepTree& tree, size_t node);

// For each n-gram feature whose word (or '_'-joined pair) is in the table,
// adds its k nearest neighbors under the same slot, weighted by the cosine
// clamped at 0. Original features are kept as they are.
FeatureVector supplementary_features(const FeatureVector& ngram,
                                     const EmbeddingTable& table, size_t k);

struct FeatureInputs {
  const NormalizedTweet* tweet = nullptr;
  int tweet_year = 0;
  std::optional<int> entry_year;
  const DepTree* parse = nullptr;  // over the normalized tokens, uncollapsed
  const EmbeddingTable* embeddings = nullptr;
};

// Union of the enabled families. Throws ConfigError when an enabled family
// lacks its resource and ValidationError when the parse does not line up with
// the normalized tokens.
FeatureVector extract(const Candidate& candidate, const FeatureInputs& in,
                      const FeatureConfig& cfg);

}  // namespace targetner

#endif  // TARGETNER_FEATURES_H_
