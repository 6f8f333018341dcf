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

#ifndef TARGETNER_SYNTHETIC_H_
#define TARGETNER_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "targetner/corpus.h"
#include "targetner/embeddings.h"
#include "targetner/gazetteer.h"

namespace targetner {

// Deterministic stand-in for the annotated movie-tweet corpus: 1,096 tweets
// over 53 movies with fixed train / seen / unseen entity counts, a
// gazetteer of the gold titles plus generated distractor titles, and word
// vectors clustered by usage.
struct SynthParams {
  uint64_t seed = 20140214;

  // Gazetteer.
  double word_title_rate = 0.92;     // content word that is also a title
  double phrase_title_rate = 0.4;    // grammar n-grams that are titles
  double colon_title_rate = 0.25;    // content word used as main/sub title
  double recent_year_rate = 0.35;     // distractor released in 2013-2014
  size_t filler_titles = 10000;      // titles that never occur in tweets

  // Text.
  double url_rate = 0.4;
  double rt_rate = 0.16;
  double reply_rate = 0.1;
  double with_user_rate = 0.12;
  double trailing_hashtag_rate = 0.35;
  double degree_hashtag_rate = 0.05;
  double extra_clause_rate = 0.55;
  double weak_context_rate = 0.6;   // mention outside a viewing context
  double hard_negative_rate = 0.8;  // viewing context without a movie
  double generic_movie_word_rate = 0.5;  // "frozen", "her" as plain words
  double emphasis_caps_rate = 0.18;   // content word capitalized for emphasis
  double omitted_mention_rate = 0.4;  // entity-free tweet with an unannotated mention
  double miss_form_rate = 0.006;      // typo / abbreviation forms
  double train_vocab_fraction = 0.36;  // head of each word list used in training

  // Word vectors.
  size_t dimension = 50;
  double cluster_noise = 0.55;
};

struct SynthCorpus {
  std::vector<Tweet> tweets;
  std::vector<GazetteerEntry> gazetteer;
  EmbeddingTable embeddings;
  // (tweet id, is evaluation tweet)
  std::vector<std::pair<std::string, bool>> assignment;
};

SynthCorpus generate_desk_corpus(const SynthParams& params = {});

DatasetSplit split_of(const SynthCorpus& corpus);

// Writes corpus.tsv, gazetteer.tsv, embeddings.txt, split.tsv, table6.toml
// and model3.toml into `dir` (created if missing).
void write_desk_corpus(const SynthCorpus& corpus, const std::string& dir);

}  // namespace targetner

#endif  // TARGETNER_SYNTHETIC_H_
