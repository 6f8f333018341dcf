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

#include "targetner/classifier.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "targetner/config.h"
#include "targetner/errors.h"
#include "targetner/text.h"

namespace targetner {

namespace {

constexpr const char* kMagic = "targetner-model";
constexpr int kFormatVersion = 1;

// Row view with the optional bias column appended.
struct Problem {
  const Dataset& data;
  double bias;
  uint32_t bias_index;

  double dot(const std::vector<double>& w, size_t i) const {
    double s = 0.0;
    for (const auto& [j, v] : data.rows[i]) s += w[j] * v;
    if (bias > 0) s += w[bias_index] * bias;
    return s;
  }
  void axpy(double a, size_t i, std::vector<double>* w) const {
    for (const auto& [j, v] : data.rows[i]) (*w)[j] += a * v;
    if (bias > 0) (*w)[bias_index] += a * bias;
  }
  double sqnorm(size_t i) const {
    double s = 0.0;
    for (const auto& [j, v] : data.rows[i]) s += v * v;
    return s + (bias > 0 ? bias * bias : 0.0);
  }
};

double objective(const std::vector<double>& alpha,
                 const std::vector<double>& w) {
  double sa = std::accumulate(alpha.begin(), alpha.end(), 0.0);
  double ww = 0.0;
  for (double x : w) ww += x * x;
  return sa - 0.5 * ww;
}

double projected_gradient(double g, double alpha, double c) {
  if (alpha <= 0.0) return std::min(g, 0.0);
  if (alpha >= c) return std::max(g, 0.0);
  return g;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

TrainParams TrainParams::from_config(const Config& cfg,
                                     const TrainParams& base) {
  TrainParams p = base;
  p.c = cfg.get_double("train.c", p.c);
  p.e = cfg.get_double("train.e", p.e);
  p.b = cfg.get_double("train.b", p.b);
  const long seed = cfg.get_int("train.seed", static_cast<long>(p.seed));
  if (seed < 0) throw ConfigError("train.seed must be >= 0");
  p.seed = static_cast<uint64_t>(seed);
  p.shrinking = cfg.get_bool("train.shrinking", p.shrinking);
  const long epochs =
      cfg.get_int("train.max_epochs", static_cast<long>(p.max_epochs));
  if (epochs < 1) throw ConfigError("train.max_epochs must be >= 1");
  p.max_epochs = static_cast<size_t>(epochs);
  p.validate();
  return p;
}

TrainParams TrainParams::from_config(const Config& cfg) {
  return from_config(cfg, TrainParams());
}

void TrainParams::validate() const {
  if (!(c > 0)) throw ConfigError("train.c must be > 0");
  if (!(e > 0)) throw ConfigError("train.e must be > 0");
  if (max_epochs == 0) throw ConfigError("train.max_epochs must be >= 1");
}

uint32_t FeatureDict::add(const std::string& name) {
  auto [it, inserted] =
      index_.emplace(name, static_cast<uint32_t>(names_.size()));
  if (inserted) names_.push_back(name);
  return it->second;
}

std::optional<uint32_t> FeatureDict::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Dataset vectorize(
    const std::vector<std::pair<FeatureVector, bool>>& instances) {
  Dataset d;
  d.rows.reserve(instances.size());
  for (const auto& [fv, positive] : instances) {
    SparseRow row;
    row.reserve(fv.size());
    for (const auto& [name, value] : fv) row.emplace_back(d.dict.add(name), value);
    std::sort(row.begin(), row.end());
    d.rows.push_back(std::move(row));
    d.labels.push_back(positive ? 1 : -1);
  }
  return d;
}

SparseRow vectorize_row(const FeatureDict& dict, const FeatureVector& fv) {
  SparseRow row;
  for (const auto& [name, value] : fv) {
    if (auto j = dict.find(name)) row.emplace_back(*j, value);
  }
  std::sort(row.begin(), row.end());
  return row;
}

double dual_objective(const Dataset& data, const std::vector<double>& alpha,
                      double bias) {
  const uint32_t bias_index = static_cast<uint32_t>(data.dict.size());
  Problem prob{data, bias, bias_index};
  std::vector<double> w(data.dict.size() + (bias > 0 ? 1 : 0), 0.0);
  for (size_t i = 0; i < data.rows.size(); ++i) {
    if (alpha[i] != 0.0) prob.axpy(alpha[i] * data.labels[i], i, &w);
  }
  return objective(alpha, w);
}

Model train(const Dataset& data, const TrainParams& params,
            TrainDiagnostics* diagnostics) {
  params.validate();
  const size_t l = data.rows.size();
  if (data.labels.size() != l) {
    throw ContractViolation("train: rows and labels differ in length");
  }
  bool has_pos = false, has_neg = false;
  for (int y : data.labels) {
    if (y == 1) has_pos = true;
    else if (y == -1) has_neg = true;
    else throw ContractViolation("train: labels must be +1 or -1");
  }
  if (!has_pos || !has_neg) {
    throw TrainingError("training data needs both positive and negative "
                        "instances (" + std::to_string(l) + " given)");
  }

  const bool use_bias = params.b > 0;
  const uint32_t bias_index = static_cast<uint32_t>(data.dict.size());
  Problem prob{data, use_bias ? params.b : 0.0, bias_index};
  const double C = params.c;
  std::vector<double> w(data.dict.size() + (use_bias ? 1 : 0), 0.0);
  std::vector<double> alpha(l, 0.0);
  std::vector<double> qd(l);
  for (size_t i = 0; i < l; ++i) qd[i] = prob.sqnorm(i);

  std::vector<size_t> order(l);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(params.seed);
  TrainDiagnostics diag;

  auto update = [&](size_t i, double g) {
    const double old = alpha[i];
    // An all-zero row leaves only the linear term; its optimum is the bound.
    alpha[i] = qd[i] > 0 ? std::clamp(old - g / qd[i], 0.0, C) : C;
    const double d = (alpha[i] - old) * data.labels[i];
    if (d != 0.0) prob.axpy(d, i, &w);
  };

  if (!params.shrinking) {
    for (size_t epoch = 0; epoch < params.max_epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      double max_pg = 0.0;
      for (size_t i : order) {
        const double g = data.labels[i] * prob.dot(w, i) - 1.0;
        const double pg = projected_gradient(g, alpha[i], C);
        max_pg = std::max(max_pg, std::fabs(pg));
        if (std::fabs(pg) > 1e-12) update(i, g);
      }
      ++diag.epochs;
      diag.dual_objective.push_back(objective(alpha, w));
      diag.violation = max_pg;
      if (max_pg < params.e) {
        diag.converged = true;
        break;
      }
    }
  } else {
    // Active-set shrinking: bounded variables whose gradient points outward
    // past the previous epoch's extremes leave the active set until the
    // remaining problem converges, then everything is re-checked.
    const double inf = std::numeric_limits<double>::infinity();
    double pg_max_old = inf, pg_min_old = -inf;
    size_t active = l;
    while (diag.epochs < params.max_epochs) {
      double pg_max_new = -inf, pg_min_new = inf;
      std::shuffle(order.begin(), order.begin() + static_cast<long>(active), rng);
      for (size_t s = 0; s < active; ++s) {
        const size_t i = order[s];
        const double g = data.labels[i] * prob.dot(w, i) - 1.0;
        double pg = 0.0;
        if (alpha[i] <= 0.0) {
          if (g > pg_max_old) {
            std::swap(order[s], order[--active]);
            --s;
            continue;
          }
          if (g < 0) pg = g;
        } else if (alpha[i] >= C) {
          if (g < pg_min_old) {
            std::swap(order[s], order[--active]);
            --s;
            continue;
          }
          if (g > 0) pg = g;
        } else {
          pg = g;
        }
        pg_max_new = std::max(pg_max_new, pg);
        pg_min_new = std::min(pg_min_new, pg);
        if (std::fabs(pg) > 1e-12) update(i, g);
      }
      ++diag.epochs;
      diag.dual_objective.push_back(objective(alpha, w));
      const double gap = active == 0 ? 0.0 : pg_max_new - pg_min_new;
      diag.violation = gap;
      if (gap <= params.e) {
        if (active == l) {
          diag.converged = true;
          break;
        }
        active = l;
        pg_max_old = inf;
        pg_min_old = -inf;
        continue;
      }
      pg_max_old = pg_max_new > 0 ? pg_max_new : inf;
      pg_min_old = pg_min_new < 0 ? pg_min_new : -inf;
    }
  }

  Model model;
  model.dict = data.dict;
  if (use_bias) model.dict.add(kBiasFeature);
  model.weights = std::move(w);
  model.params = params;
  if (diagnostics) {
    diag.alpha = std::move(alpha);
    *diagnostics = std::move(diag);
  }
  return model;
}

Prediction predict_score(const Model& model, const FeatureVector& fv) {
  Prediction p;
  for (const auto& [name, value] : fv) {
    if (auto j = model.dict.find(name)) p.score += model.weights[*j] * value;
  }
  if (model.params.b > 0) {
    if (auto j = model.dict.find(kBiasFeature)) {
      p.score += model.weights[*j] * model.params.b;
    }
  }
  p.label = p.score > 0 ? 1 : -1;
  return p;
}

void write_model(const Model& model, std::ostream& out) {
  out << kMagic << ' ' << kFormatVersion << '\n';
  out << "c " << format_real(model.params.c) << '\n';
  out << "e " << format_real(model.params.e) << '\n';
  out << "b " << format_real(model.params.b) << '\n';
  out << "seed " << model.params.seed << '\n';
  out << "shrinking " << (model.params.shrinking ? 1 : 0) << '\n';
  out << "max_epochs " << model.params.max_epochs << '\n';
  for (const auto& [k, v] : model.metadata) out << "meta " << k << ' ' << v << '\n';
  out << "features " << model.dict.size() << '\n';
  for (size_t i = 0; i < model.dict.size(); ++i) {
    out << model.dict.name(static_cast<uint32_t>(i)) << '\t'
        << format_real(model.weights[i]) << '\n';
  }
  out << "end\n";
}

Model read_model(std::istream& in, const std::string& source) {
  std::string line;
  size_t line_no = 0;
  auto next = [&](const char* what) {
    if (!std::getline(in, line)) {
      throw ParseError(source, line_no, std::string("truncated model: missing ") + what);
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };

  next("header");
  {
    std::istringstream hs(line);
    std::string magic;
    int version = 0;
    if (!(hs >> magic >> version) || magic != kMagic) {
      throw ParseError(source, line_no, "not a model file");
    }
    if (version != kFormatVersion) {
      throw ParseError(source, line_no,
                       "model format version " + std::to_string(version) +
                           " is not supported (expected " +
                           std::to_string(kFormatVersion) + ")");
    }
  }

  Model model;
  size_t n_features = 0;
  bool saw_features = false;
  while (!saw_features) {
    next("feature table");
    const size_t sp = line.find(' ');
    const std::string key = line.substr(0, sp);
    const std::string value =
        sp == std::string::npos ? std::string() : line.substr(sp + 1);
    try {
      if (key == "c") model.params.c = Config::to_double(value, key);
      else if (key == "e") model.params.e = Config::to_double(value, key);
      else if (key == "b") model.params.b = Config::to_double(value, key);
      else if (key == "seed") model.params.seed = static_cast<uint64_t>(Config::to_int(value, key));
      else if (key == "shrinking") model.params.shrinking = Config::to_bool(value, key);
      else if (key == "max_epochs") model.params.max_epochs = static_cast<size_t>(Config::to_int(value, key));
      else if (key == "meta") {
        const size_t sp2 = value.find(' ');
        model.metadata[value.substr(0, sp2)] =
            sp2 == std::string::npos ? std::string() : value.substr(sp2 + 1);
      } else if (key == "features") {
        n_features = static_cast<size_t>(Config::to_int(value, key));
        saw_features = true;
      } else {
        throw ParseError(source, line_no, "unknown header key '" + key + "'");
      }
    } catch (const ConfigError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }

  model.weights.reserve(n_features);
  for (size_t i = 0; i < n_features; ++i) {
    next("feature rows");
    const size_t tab = line.rfind('\t');
    if (tab == std::string::npos) {
      throw ParseError(source, line_no, "expected 'name<TAB>weight'");
    }
    const std::string name = line.substr(0, tab);
    const std::string num = line.substr(tab + 1);
    char* end = nullptr;
    const double w = std::strtod(num.c_str(), &end);
    if (num.empty() || end != num.c_str() + num.size()) {
      throw ParseError(source, line_no, "bad weight '" + num + "'");
    }
    if (model.dict.add(name) != i) {
      throw ParseError(source, line_no, "duplicate feature '" + name + "'");
    }
    model.weights.push_back(w);
  }
  next("end marker");
  if (line != "end") throw ParseError(source, line_no, "expected 'end'");
  return model;
}

void save_model(const Model& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write model file '" + path + "'");
  write_model(model, out);
  out.flush();
  if (!out) throw Error("failed writing model file '" + path + "'");
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file '" + path + "'");
  return read_model(in, path);
}

}  // namespace targetner
