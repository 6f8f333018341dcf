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

#ifndef TARGETNER_CLASSIFIER_H_
#define TARGETNER_CLASSIFIER_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "targetner/features.h"

namespace targetner {

class Config;

struct TrainParams {
  double c = 0.1;
  double e = 0.1;
  double b = 0.0;  // <= 0: no bias feature
  uint64_t seed = 1;
  bool shrinking = false;
  size_t max_epochs = 1000;

  // Keys train.{c,e,b,seed,shrinking,max_epochs}.
  static TrainParams from_config(const Config& cfg, const TrainParams& base);
  static TrainParams from_config(const Config& cfg);
  // Throws ConfigError unless c > 0 and e > 0.
  void validate() const;

  friend bool operator==(const TrainParams&, const TrainParams&) = default;
};

inline constexpr const char* kBiasFeature = "<bias>";

// Feature name <-> dense index, in first-seen order.
class FeatureDict {
 public:
  uint32_t add(const std::string& name);
  std::optional<uint32_t> find(const std::string& name) const;
  const std::string& name(uint32_t index) const { return names_[index]; }
  size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, uint32_t> index_;
};

using SparseRow = std::vector<std::pair<uint32_t, double>>;

struct Dataset {
  std::vector<SparseRow> rows;
  std::vector<int> labels;  // +1 / -1
  FeatureDict dict;
};

// Labels are true for positive instances.
Dataset vectorize(const std::vector<std::pair<FeatureVector, bool>>& instances);
// Features missing from the dictionary are dropped.
SparseRow vectorize_row(const FeatureDict& dict, const FeatureVector& fv);

struct TrainDiagnostics {
  std::vector<double> dual_objective;  // after each epoch
  std::vector<double> alpha;
  size_t epochs = 0;
  double violation = 0.0;  // stopping quantity of the last epoch
  bool converged = false;
};

struct Model {
  FeatureDict dict;
  std::vector<double> weights;  // one per dict entry
  TrainParams params;
  std::map<std::string, std::string> metadata;
};

// L2-regularized L1-loss SVM trained in the dual by coordinate descent.
// Throws TrainingError unless both labels occur.
Model train(const Dataset& data, const TrainParams& params,
            TrainDiagnostics* diagnostics = nullptr);

// Dual objective sum(alpha) - |w|^2 / 2 with w = sum(alpha_i y_i x_i).
double dual_objective(const Dataset& data, const std::vector<double>& alpha,
                      double bias = 0.0);

struct Prediction {
  int label = -1;
  double score = 0.0;
};

// Ties at score 0 are negative.
Prediction predict_score(const Model& model, const FeatureVector& fv);

void write_model(const Model& model, std::ostream& out);
Model read_model(std::istream& in, const std::string& source);
void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

}  // namespace targetner

#endif  // TARGETNER_CLASSIFIER_H_
