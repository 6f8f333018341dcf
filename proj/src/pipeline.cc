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

#include "targetner/pipeline.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "targetner/config.h"
#include "targetner/errors.h"
#include "targetner/text.h"

namespace targetner {

namespace {

constexpr const char* kSupplementConvention = "max(cosine,0)";

// Runs fn(i) for i in [0, n) over `jobs` threads. Exceptions from workers are
// rethrown on the caller.
template <typename Fn>
void parallel_for(size_t n, size_t jobs, Fn fn) {
  jobs = std::max<size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (size_t i = t; i < n; i += jobs) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void check_resources(const Resources& res, const FeatureConfig& cfg,
                     const std::string& who) {
  if (res.index == nullptr) throw ConfigError(who + ": no gazetteer index");
  if (cfg.supplementary && res.embeddings == nullptr) {
    throw ConfigError(who + ": supplementary features need --embeddings");
  }
  if (cfg.syntactic && res.parses == nullptr) {
    throw ConfigError(who + ": syntactic features need --parses");
  }
}

std::string pct(double x) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * x);
  return buf;
}

}  // namespace

EvalReport EvalReport::from_counts(size_t tp, size_t fp, size_t fn) {
  EvalReport r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  r.precision = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  r.recall = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  r.f1 = r.precision + r.recall > 0
             ? 2 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  return r;
}

PreparedTweet prepare(const Tweet& tweet, const Resources& res) {
  if (res.index == nullptr) throw ConfigError("prepare: no gazetteer index");
  PreparedTweet p;
  p.tweet = &tweet;
  p.norm = normalize(tweet, res.index->vocab(), res.normalizer);
  p.candidates = identify(p.norm, *res.index);
  p.gold = project_gold(tweet, p.norm);
  return p;
}

std::vector<PreparedTweet> prepare_all(const std::vector<Tweet>& tweets,
                                       const Resources& res, size_t jobs) {
  std::vector<PreparedTweet> out(tweets.size());
  parallel_for(tweets.size(), jobs,
               [&](size_t i) { out[i] = prepare(tweets[i], res); });
  return out;
}

FeatureVector candidate_features(const PreparedTweet& prepared,
                                 const Candidate& candidate,
                                 const Resources& res,
                                 const FeatureConfig& cfg) {
  FeatureInputs in;
  in.tweet = &prepared.norm;
  in.tweet_year = prepared.tweet->year;
  if (const GazetteerEntry* e = res.index->entry(candidate.entry_id)) {
    in.entry_year = e->release_year;
  }
  in.embeddings = res.embeddings;
  if (cfg.syntactic) {
    if (res.parses == nullptr) {
      throw ConfigError("syntactic features need a parse file");
    }
    auto it = res.parses->find(prepared.tweet->id);
    if (it == res.parses->end()) {
      throw ConfigError("no parse for tweet '" + prepared.tweet->id + "'");
    }
    in.parse = &it->second;
  }
  return extract(candidate, in, cfg);
}

std::vector<Candidate> recognize(const PreparedTweet& prepared,
                                 const Resources& res, const Model* model,
                                 const FeatureConfig& cfg) {
  if (model == nullptr) return prepared.candidates;
  std::vector<Candidate> out;
  for (const Candidate& c : prepared.candidates) {
    if (predict_score(*model, candidate_features(prepared, c, res, cfg)).label > 0) {
      out.push_back(c);
    }
  }
  return out;
}

std::vector<Candidate> recognize(const Tweet& tweet, const Resources& res,
                                 const Model* model, const FeatureConfig& cfg) {
  return recognize(prepare(tweet, res), res, model, cfg);
}

EvalReport evaluate(const std::vector<PreparedTweet>& tweets,
                    const Resources& res, const Model* model,
                    const FeatureConfig& cfg, size_t jobs) {
  if (model != nullptr) check_resources(res, cfg, "evaluate");
  struct Counts {
    size_t tp = 0, fp = 0, fn = 0;
  };
  std::vector<Counts> per(tweets.size());
  parallel_for(tweets.size(), jobs, [&](size_t i) {
    const PreparedTweet& p = tweets[i];
    std::set<TokenSpan> gold;
    size_t lost = 0;
    for (const TokenSpan& s : p.gold) {
      if (s.empty()) ++lost;
      else gold.insert(s);
    }
    Counts c;
    c.fn = lost;
    for (const Candidate& cand : recognize(p, res, model, cfg)) {
      if (gold.erase(cand.span)) ++c.tp;
      else ++c.fp;
    }
    c.fn += gold.size();
    per[i] = c;
  });
  Counts total;
  for (const Counts& c : per) {
    total.tp += c.tp;
    total.fp += c.fp;
    total.fn += c.fn;
  }
  return EvalReport::from_counts(total.tp, total.fp, total.fn);
}

EvalReport evaluate(const std::vector<Tweet>& tweets, const Resources& res,
                    const Model* model, const FeatureConfig& cfg,
                    size_t jobs) {
  return evaluate(prepare_all(tweets, res, jobs), res, model, cfg, jobs);
}

std::vector<std::pair<FeatureVector, bool>> build_training_set(
    const std::vector<PreparedTweet>& tweets, const Resources& res,
    const FeatureConfig& cfg) {
  check_resources(res, cfg, "training");
  std::vector<std::pair<FeatureVector, bool>> out;
  for (const PreparedTweet& p : tweets) {
    for (const LabeledCandidate& lc : label_candidates(p.candidates, p.gold)) {
      out.emplace_back(candidate_features(p, lc.candidate, res, cfg),
                       lc.positive);
    }
  }
  return out;
}

Model train_model(const std::vector<PreparedTweet>& tweets,
                  const Resources& res, const FeatureConfig& features,
                  const TrainParams& params, TrainDiagnostics* diagnostics) {
  Model m = train(vectorize(build_training_set(tweets, res, features)), params,
                  diagnostics);
  m.metadata["families"] = features.families();
  m.metadata["k"] = std::to_string(features.k);
  m.metadata["collection_year"] = std::to_string(features.collection_year);
  m.metadata["supplement_weight"] = kSupplementConvention;
  return m;
}

FeatureConfig feature_config_of(const Model& model) {
  auto get = [&](const char* key) -> const std::string& {
    auto it = model.metadata.find(key);
    if (it == model.metadata.end()) {
      throw ConfigError(std::string("model metadata lacks '") + key + "'");
    }
    return it->second;
  };
  FeatureConfig cfg;
  cfg.orthographic = cfg.ngram = cfg.syntactic = cfg.supplementary = false;
  for (const std::string& f : split(get("families"), ',')) {
    const std::string name(trim(f));
    if (name == "orthographic") cfg.orthographic = true;
    else if (name == "ngram") cfg.ngram = true;
    else if (name == "syntactic") cfg.syntactic = true;
    else if (name == "supplementary") cfg.supplementary = true;
    else if (!name.empty()) throw ConfigError("unknown feature family '" + name + "'");
  }
  const long k = Config::to_int(get("k"), "k");
  if (k < 0) throw ConfigError("model metadata: negative k");
  cfg.k = static_cast<size_t>(k);
  cfg.collection_year =
      static_cast<int>(Config::to_int(get("collection_year"), "collection_year"));
  if (cfg.supplementary && get("supplement_weight") != kSupplementConvention) {
    throw ConfigError("model uses supplement weighting '" +
                      get("supplement_weight") + "', this build implements " +
                      kSupplementConvention);
  }
  return cfg;
}

DatasetSplit load_split(const std::vector<Tweet>& tweets,
                        const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open split file '" + path + "'");
  std::map<std::string, bool> is_eval;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::vector<std::string> f = split(line, '\t');
    const std::string role = f.size() == 2 ? std::string(trim(f[1])) : "";
    if (role != "train" && role != "eval") {
      throw ParseError(path, line_no, "expected 'tweet_id<TAB>train|eval'");
    }
    is_eval[std::string(trim(f[0]))] = role == "eval";
  }
  std::vector<Tweet> listed;
  std::vector<Tweet> train_tweets;
  std::set<std::string> eval_ids;
  for (const Tweet& t : tweets) {
    auto it = is_eval.find(t.id);
    if (it == is_eval.end()) continue;
    listed.push_back(t);
    if (it->second) eval_ids.insert(t.id);
    else train_tweets.push_back(t);
  }
  return split_by_movie(listed, titles_of(train_tweets), eval_ids);
}

AblationSpec AblationSpec::from_config(const Config& cfg) {
  AblationSpec spec;
  spec.train = TrainParams::from_config(cfg);
  FeatureConfig defaults;
  defaults.collection_year =
      static_cast<int>(cfg.get_int("collection_year", defaults.collection_year));
  for (const std::string& section : cfg.sections()) {
    if (section.rfind("model.", 0) != 0) continue;
    auto get = [&](const char* key) { return cfg.get(section, key); };
    AblationModel m;
    m.name = get("name").value_or(section.substr(6));
    if (auto v = get("baseline")) m.baseline = Config::to_bool(*v, section + ".baseline");
    FeatureConfig& f = m.features;
    f = defaults;
    f.orthographic = f.ngram = f.syntactic = f.supplementary = false;
    if (auto v = get("orthographic")) f.orthographic = Config::to_bool(*v, section + ".orthographic");
    if (auto v = get("ngram")) f.ngram = Config::to_bool(*v, section + ".ngram");
    if (auto v = get("syntactic")) f.syntactic = Config::to_bool(*v, section + ".syntactic");
    if (auto v = get("supplementary")) f.supplementary = Config::to_bool(*v, section + ".supplementary");
    if (auto v = get("k")) {
      const long k = Config::to_int(*v, section + ".k");
      if (k < 0) throw ConfigError(section + ".k must be >= 0");
      f.k = static_cast<size_t>(k);
    }
    if (auto v = get("collection_year")) {
      f.collection_year = static_cast<int>(Config::to_int(*v, section + ".collection_year"));
    }
    spec.models.push_back(std::move(m));
  }
  spec.validate();
  return spec;
}

void AblationSpec::validate() const {
  std::set<std::string> seen;
  for (const AblationModel& m : models) {
    if (m.name.empty()) throw ConfigError("ablation model with an empty name");
    if (!seen.insert(m.name).second) {
      throw ConfigError("duplicate ablation model name '" + m.name + "'");
    }
  }
}

std::vector<AblationRow> run_ablation(const DatasetSplit& split,
                                      const Resources& res,
                                      const AblationSpec& spec, size_t jobs) {
  spec.validate();
  for (const AblationModel& m : spec.models) {
    if (!m.baseline) check_resources(res, m.features, "model '" + m.name + "'");
  }
  const bool any_trained =
      std::any_of(spec.models.begin(), spec.models.end(),
                  [](const AblationModel& m) { return !m.baseline; });
  std::vector<PreparedTweet> train;
  if (any_trained) train = prepare_all(split.train, res, jobs);
  const std::vector<PreparedTweet> seen = prepare_all(split.eval_seen, res, jobs);
  const std::vector<PreparedTweet> unseen = prepare_all(split.eval_unseen, res, jobs);

  std::vector<AblationRow> rows;
  for (const AblationModel& m : spec.models) {
    Model model;
    const Model* mp = nullptr;
    if (!m.baseline) {
      model = train_model(train, res, m.features, spec.train);
      mp = &model;
    }
    rows.push_back({m.name, "eval_seen", evaluate(seen, res, mp, m.features, jobs)});
    rows.push_back({m.name, "eval_unseen", evaluate(unseen, res, mp, m.features, jobs)});
  }
  return rows;
}

std::string format_report_table(const std::vector<AblationRow>& rows) {
  size_t width = 5;
  for (const AblationRow& r : rows) width = std::max(width, r.model.size());
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-*s  %-11s  %6s  %6s  %6s  %5s  %5s  %5s\n",
                static_cast<int>(width), "Model", "Eval set", "P", "R", "F1",
                "TP", "FP", "FN");
  out << buf;
  for (const AblationRow& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "%-*s  %-11s  %6s  %6s  %6s  %5zu  %5zu  %5zu\n",
                  static_cast<int>(width), r.model.c_str(), r.eval_set.c_str(),
                  pct(r.report.precision).c_str(), pct(r.report.recall).c_str(),
                  pct(r.report.f1).c_str(), r.report.tp, r.report.fp,
                  r.report.fn);
    out << buf;
  }
  return out.str();
}

std::string format_report_tsv(const std::vector<AblationRow>& rows) {
  std::ostringstream out;
  for (const AblationRow& r : rows) {
    out << r.model << '\t' << r.eval_set << '\t' << pct(r.report.precision)
        << '\t' << pct(r.report.recall) << '\t' << pct(r.report.f1) << '\t'
        << r.report.tp << '\t' << r.report.fp << '\t' << r.report.fn << '\n';
  }
  return out.str();
}

}  // namespace targetner
