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

#ifndef TARGETNER_PIPELINE_H_
#define TARGETNER_PIPELINE_H_

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "targetner/candidates.h"
#include "targetner/classifier.h"
#include "targetner/corpus.h"
#include "targetner/deptree.h"
#include "targetner/embeddings.h"
#include "targetner/features.h"
#include "targetner/gazetteer.h"
#include "targetner/normalizer.h"

namespace targetner {

class Config;

struct EvalReport {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static EvalReport from_counts(size_t tp, size_t fp, size_t fn);
  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Shared, read-only inputs of every stage. Only `index` is required.
struct Resources {
  const GazetteerIndex* index = nullptr;
  NormalizerConfig normalizer;
  const EmbeddingTable* embeddings = nullptr;
  const std::map<std::string, DepTree>* parses = nullptr;
};

struct PreparedTweet {
  const Tweet* tweet = nullptr;
  NormalizedTweet norm;
  std::vector<Candidate> candidates;
  std::vector<TokenSpan> gold;  // projected; empty spans were lost
};

PreparedTweet prepare(const Tweet& tweet, const Resources& res);

FeatureVector candidate_features(const PreparedTweet& prepared,
                                 const Candidate& candidate,
                                 const Resources& res,
                                 const FeatureConfig& cfg);

// Without a model every candidate is returned (the baseline); with one, only
// candidates with a positive score.
std::vector<Candidate> recognize(const PreparedTweet& prepared,
                                 const Resources& res, const Model* model,
                                 const FeatureConfig& cfg);
std::vector<Candidate> recognize(const Tweet& tweet, const Resources& res,
                                 const Model* model, const FeatureConfig& cfg);

// Micro-averaged exact-span scoring. Gold spans lost in normalization count
// as misses. `jobs` threads split the tweets.
EvalReport evaluate(const std::vector<PreparedTweet>& tweets,
                    const Resources& res, const Model* model,
                    const FeatureConfig& cfg, size_t jobs = 1);
EvalReport evaluate(const std::vector<Tweet>& tweets, const Resources& res,
                    const Model* model, const FeatureConfig& cfg,
                    size_t jobs = 1);

std::vector<PreparedTweet> prepare_all(const std::vector<Tweet>& tweets,
                                       const Resources& res, size_t jobs = 1);

// One instance per candidate of every training tweet.
std::vector<std::pair<FeatureVector, bool>> build_training_set(
    const std::vector<PreparedTweet>& tweets, const Resources& res,
    const FeatureConfig& cfg);

// Trains and records the feature configuration in the model metadata.
Model train_model(const std::vector<PreparedTweet>& tweets,
                  const Resources& res, const FeatureConfig& features,
                  const TrainParams& params,
                  TrainDiagnostics* diagnostics = nullptr);

// Feature configuration a model was trained with. Throws ConfigError when
// the metadata is missing or unreadable.
FeatureConfig feature_config_of(const Model& model);

// Split file: `tweet_id <TAB> train|eval` per line. Tweets not listed are
// excluded.
DatasetSplit load_split(const std::vector<Tweet>& tweets,
                        const std::string& path);

struct AblationModel {
  std::string name;
  bool baseline = false;
  FeatureConfig features;
};

struct AblationSpec {
  std::vector<AblationModel> models;
  TrainParams train;

  // Every `[model.<key>]` section in file order with keys name, baseline,
  // orthographic, ngram, syntactic, supplementary, k; `[train]` for the
  // learner and top-level collection_year.
  static AblationSpec from_config(const Config& cfg);
  // Throws ConfigError on duplicate or empty names.
  void validate() const;
};

struct AblationRow {
  std::string model;
  std::string eval_set;
  EvalReport report;
};

// Trains each non-baseline model on split.train and scores both eval sets.
// Throws ConfigError naming the model when a family lacks its resource.
std::vector<AblationRow> run_ablation(const DatasetSplit& split,
                                      const Resources& res,
                                      const AblationSpec& spec,
                                      size_t jobs = 1);

std::string format_report_table(const std::vector<AblationRow>& rows);
std::string format_report_tsv(const std::vector<AblationRow>& rows);

}  // namespace targetner

#endif  // TARGETNER_PIPELINE_H_
