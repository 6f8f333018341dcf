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

#ifndef TARGETNER_CORPUS_H_
#define TARGETNER_CORPUS_H_

#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace targetner {

struct NormalizedTweet;

// Annotated mention: [start, end) in code points of Tweet::text.
struct GoldSpan {
  size_t start = 0;
  size_t end = 0;
  std::string canonical_title;

  friend bool operator==(const GoldSpan&, const GoldSpan&) = default;
};

struct Tweet {
  std::string id;
  std::string text;  // valid UTF-8
  int year = 0;
  std::vector<GoldSpan> gold;

  friend bool operator==(const Tweet&, const Tweet&) = default;
};

// Half-open range of normalized-token indices.
struct TokenSpan {
  size_t start = 0;
  size_t end = 0;

  bool empty() const { return start >= end; }
  size_t size() const { return empty() ? 0 : end - start; }
  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
  friend auto operator<=>(const TokenSpan&, const TokenSpan&) = default;
};

struct DatasetSplit {
  std::vector<Tweet> train;
  std::vector<Tweet> eval_seen;
  std::vector<Tweet> eval_unseen;
  // Tweets that fit no set, with the reason.
  std::vector<std::pair<Tweet, std::string>> excluded;
};

// Throws ValidationError naming the tweet id when an invariant is broken.
void validate_tweet(const Tweet& tweet);

// Corpus file: `id <TAB> year <TAB> text <TAB> start,end,title;...`.
// Invalid UTF-8 bytes are dropped before offsets are interpreted.
std::vector<Tweet> load_corpus(const std::string& path);
std::vector<Tweet> read_corpus(std::istream& in,
                               const std::string& source = "<corpus>");
void write_corpus(const std::vector<Tweet>& tweets, std::ostream& out);
void save_corpus(const std::vector<Tweet>& tweets, const std::string& path);

// Builds a tweet from inline markup, `[[surface|Canonical Title]]`, the layout
// used by the upstream converter and the desk corpus generator.
Tweet tweet_from_markup(std::string id, int year, std::string_view marked);

// Tweets listed in `eval_ids` are evaluation tweets; all others are flagged
// for training. See DatasetSplit for the partition rules.
DatasetSplit split_by_movie(const std::vector<Tweet>& tweets,
                            const std::set<std::string>& train_titles,
                            const std::set<std::string>& eval_ids);

// Every canonical title that occurs in `tweets`.
std::set<std::string> titles_of(const std::vector<Tweet>& tweets);

// Maps gold character spans to normalized-token spans. Spans whose tokens
// were all removed map to an empty TokenSpan at the same index, and their
// index is appended to `lost` when given.
std::vector<TokenSpan> project_gold(const Tweet& tweet,
                                    const NormalizedTweet& norm,
                                    std::vector<size_t>* lost = nullptr);

}  // namespace targetner

#endif  // TARGETNER_CORPUS_H_
