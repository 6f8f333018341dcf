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


#include "targetner/cli.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "targetner/candidates.h"
#include "targetner/config.h"
#include "targetner/corpus.h"
#include "targetner/deptree.h"
#include "targetner/embeddings.h"
#include "targetner/errors.h"
#include "targetner/gazetteer.h"
#include "targetner/normalizer.h"
#include "targetner/pipeline.h"

namespace targetner {

namespace {

const char* const kFormats = R"(File formats (UTF-8, tab separated):
  corpus      id <TAB> year <TAB> text <TAB> start,end,title;...
              spans are code-point offsets into text; the last field may be empty
  gazetteer   id <TAB> title [<TAB> release year]
  embeddings  word2vec text: a "count dimension" header, then word v1 ... vd
  parses      "# tweet_id = <id>" then rows
              index <TAB> form <TAB> lemma <TAB> pos <TAB> head <TAB> label
              one row per normalized token, head 0 for the root, blank line between trees
  split       tweet_id <TAB> train|eval
  model       text file written by `train`; read back by evaluate, predict, gazetteer-reload
  config      sectioned key = value file: [paths] corpus, gazetteer, embeddings,
              parses, model, report, split (relative to the config file);
              [features] orthographic, ngram, syntactic, supplementary, k;
              [train] c, e, b, seed, shrinking, max_epochs; collection_year;
              ablation specs add one [model.<key>] section per model with
              name, baseline and the feature keys
Output:
  normalize   id <TAB> normalized tokens
  identify    tweet_id <TAB> start <TAB> end <TAB> match_type <TAB> surface
              start and end index normalized tokens, end exclusive
  predict     identify columns plus <TAB> score
  evaluate, ablate
              aligned table on standard output; --report writes rows
              model <TAB> eval_set <TAB> P <TAB> R <TAB> F1 <TAB> tp <TAB> fp <TAB> fn
Exit status: 0 success, 1 data error, 2 usage error.)";

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty() || base_dir.empty()) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

// Flag values; empty means "not given".
struct Flags {
  std::string config;
  CliPaths paths;
  std::string seed;
  size_t jobs = 0;
};

struct Command {
  std::string name;
  CLI::App* app = nullptr;
  Flags flags;
};

void add_path(CLI::App* app, const std::string& name, std::string* target,
              const std::string& help) {
  app->add_option("--" + name, *target, help);
}

CliConfig effective_config(const Flags& flags) {
  CliConfig cfg;
  if (!flags.config.empty()) {
    cfg = CliConfig::from_config(Config::load(flags.config), cfg);
  }
  auto over = [](std::string* dst, const std::string& v) {
    if (!v.empty()) *dst = v;
  };
  over(&cfg.paths.corpus, flags.paths.corpus);
  over(&cfg.paths.gazetteer, flags.paths.gazetteer);
  over(&cfg.paths.embeddings, flags.paths.embeddings);
  over(&cfg.paths.parses, flags.paths.parses);
  over(&cfg.paths.model, flags.paths.model);
  over(&cfg.paths.report, flags.paths.report);
  over(&cfg.paths.split, flags.paths.split);
  if (!flags.seed.empty()) {
    const long s = Config::to_int(flags.seed, "--seed");
    if (s < 0) throw UsageError("--seed must be non-negative");
    cfg.train.seed = static_cast<uint64_t>(s);
  }
  if (flags.jobs) cfg.jobs = flags.jobs;
  return cfg;
}

void require(const std::string& value, const std::string& flag,
             const std::string& command) {
  if (value.empty()) {
    throw UsageError(command + ": " + flag + " is required");
  }
}

// Loaded inputs; pointers in `res` refer into this object.
struct Loaded {
  std::vector<Tweet> tweets;
  GazetteerIndex index;
  EmbeddingTable embeddings;
  std::map<std::string, DepTree> parses;
  Resources res;
};

void load_resources(const CliConfig& cfg, const FeatureConfig& features,
                    const std::string& command, Loaded* l, std::ostream& err) {
  require(cfg.paths.gazetteer, "--gazetteer", command);
  if (features.supplementary) require(cfg.paths.embeddings, "--embeddings", command);
  if (features.syntactic) require(cfg.paths.parses, "--parses", command);
  l->index = build_index(load_gazetteer(cfg.paths.gazetteer), cfg.normalizer);
  l->res.index = &l->index;
  l->res.normalizer = cfg.normalizer;
  if (features.supplementary) {
    std::vector<std::string> warnings;
    l->embeddings = load_embeddings(cfg.paths.embeddings, &warnings);
    for (const std::string& w : warnings) err << "warning: " << w << '\n';
    l->res.embeddings = &l->embeddings;
  }
  if (features.syntactic) {
    l->parses = load_parses(cfg.paths.parses);
    l->res.parses = &l->parses;
  }
}

void write_candidate(std::ostream& out, const Tweet& t, const Candidate& c) {
  out << t.id << '\t' << c.span.start << '\t' << c.span.end << '\t'
      << match_type_name(c.match_type) << '\t' << c.surface;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016zx", std::hash<std::string>{}(ss.str()));
  return buf;
}

std::string model_label(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

void emit_report(const std::vector<AblationRow>& rows, const CliConfig& cfg,
                 std::ostream& out) {
  out << format_report_table(rows);
  if (!cfg.paths.report.empty()) {
    std::ofstream f(cfg.paths.report, std::ios::binary);
    if (!f) throw Error("cannot write report '" + cfg.paths.report + "'");
    f << format_report_tsv(rows);
  }
}

int cmd_normalize(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  require(cfg.paths.corpus, "--corpus", "normalize");
  require(cfg.paths.gazetteer, "--gazetteer", "normalize");
  const std::vector<Tweet> tweets = load_corpus(cfg.paths.corpus);
  const GazetteerIndex index =
      build_index(load_gazetteer(cfg.paths.gazetteer), cfg.normalizer);
  std::vector<NormalizedTweet> norms;
  norms.reserve(tweets.size());
  for (const Tweet& t : tweets) {
    norms.push_back(normalize(t, index.vocab(), cfg.normalizer));
    out << t.id << '\t' << render_normalized(norms.back()) << '\n';
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * token_reduction(norms));
  err << "tweets " << tweets.size() << ", token reduction " << buf << "%\n";
  return kExitOk;
}

int cmd_identify(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  require(cfg.paths.corpus, "--corpus", "identify");
  require(cfg.paths.gazetteer, "--gazetteer", "identify");
  const std::vector<Tweet> tweets = load_corpus(cfg.paths.corpus);
  const GazetteerIndex index =
      build_index(load_gazetteer(cfg.paths.gazetteer), cfg.normalizer);
  for (const Tweet& t : tweets) {
    const NormalizedTweet norm = normalize(t, index.vocab(), cfg.normalizer);
    for (const Candidate& c : identify(norm, index)) {
      write_candidate(out, t, c);
      out << '\n';
    }
  }
  return kExitOk;
}

int cmd_train(const CliConfig& cfg, std::ostream&, std::ostream& err) {
  require(cfg.paths.corpus, "--corpus", "train");
  require(cfg.paths.model, "--out", "train");
  Loaded l;
  load_resources(cfg, cfg.features, "train", &l, err);
  l.tweets = load_corpus(cfg.paths.corpus);
  std::vector<Tweet> train_tweets = l.tweets;
  if (!cfg.paths.split.empty()) {
    train_tweets = load_split(l.tweets, cfg.paths.split).train;
  }
  const std::vector<PreparedTweet> prepared =
      prepare_all(train_tweets, l.res, cfg.jobs);
  TrainDiagnostics diag;
  const Model model = train_model(prepared, l.res, cfg.features, cfg.train, &diag);
  save_model(model, cfg.paths.model);
  err << "trained on " << train_tweets.size() << " tweets, "
      << diag.alpha.size() << " candidates, " << model.dict.size()
      << " features, " << diag.epochs << " epochs"
      << (diag.converged ? "" : " (not converged)") << '\n';
  return kExitOk;
}

int cmd_evaluate(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  require(cfg.paths.corpus, "--corpus", "evaluate");
  require(cfg.paths.model, "--model", "evaluate");
  const Model model = load_model(cfg.paths.model);
  const FeatureConfig features = feature_config_of(model);
  Loaded l;
  load_resources(cfg, features, "evaluate", &l, err);
  l.tweets = load_corpus(cfg.paths.corpus);
  std::vector<std::pair<std::string, std::vector<Tweet>>> sets;
  if (cfg.paths.split.empty()) {
    sets.emplace_back("all", l.tweets);
  } else {
    DatasetSplit split = load_split(l.tweets, cfg.paths.split);
    sets.emplace_back("eval_seen", std::move(split.eval_seen));
    sets.emplace_back("eval_unseen", std::move(split.eval_unseen));
  }
  std::vector<AblationRow> rows;
  for (const auto& [name, tweets] : sets) {
    rows.push_back({model_label(cfg.paths.model), name,
                    evaluate(tweets, l.res, &model, features, cfg.jobs)});
  }
  emit_report(rows, cfg, out);
  return kExitOk;
}

void predict_lines(const std::vector<Tweet>& tweets, const Resources& res,
                   const Model& model, size_t jobs, std::ostream& out) {
  const FeatureConfig features = feature_config_of(model);
  const std::vector<PreparedTweet> prepared = prepare_all(tweets, res, jobs);
  for (const PreparedTweet& p : prepared) {
    for (const Candidate& c : recognize(p, res, &model, features)) {
      const Prediction pred =
          predict_score(model, candidate_features(p, c, res, features));
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", pred.score);
      write_candidate(out, *p.tweet, c);
      out << '\t' << buf << '\n';
    }
  }
}

int cmd_predict(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  require(cfg.paths.corpus, "--corpus", "predict");
  require(cfg.paths.model, "--model", "predict");
  const Model model = load_model(cfg.paths.model);
  Loaded l;
  load_resources(cfg, feature_config_of(model), "predict", &l, err);
  l.tweets = load_corpus(cfg.paths.corpus);
  predict_lines(l.tweets, l.res, model, cfg.jobs, out);
  return kExitOk;
}

int cmd_ablate(const CliConfig& cfg, const Config* spec_file, std::ostream& out,
               std::ostream& err) {
  if (spec_file == nullptr) throw UsageError("ablate: --spec is required");
  require(cfg.paths.corpus, "--corpus", "ablate");
  require(cfg.paths.split, "--split", "ablate");
  AblationSpec spec = AblationSpec::from_config(*spec_file);
  spec.validate();
  spec.train.seed = cfg.train.seed;
  FeatureConfig needs;
  needs.supplementary = needs.syntactic = false;
  for (const AblationModel& m : spec.models) {
    if (m.baseline) continue;
    needs.supplementary |= m.features.supplementary;
    needs.syntactic |= m.features.syntactic;
  }
  Loaded l;
  load_resources(cfg, needs, "ablate", &l, err);
  l.tweets = load_corpus(cfg.paths.corpus);
  const DatasetSplit split = load_split(l.tweets, cfg.paths.split);
  emit_report(run_ablation(split, l.res, spec, cfg.jobs), cfg, out);
  return kExitOk;
}

int cmd_reload(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  require(cfg.paths.gazetteer, "--gazetteer", "gazetteer-reload");
  require(cfg.paths.model, "--model", "gazetteer-reload");
  const std::string before = file_digest(cfg.paths.model);
  const Model model = load_model(cfg.paths.model);
  const FeatureConfig features = feature_config_of(model);
  Loaded l;
  load_resources(cfg, features, "gazetteer-reload", &l, err);
  GazetteerStore store;
  const std::shared_ptr<const GazetteerIndex> index =
      store.reload(cfg.paths.gazetteer, cfg.normalizer);
  l.res.index = index.get();
  err << "gazetteer: " << index->entry_count() << " entries, "
      << index->variant_count() << " variants\n";
  if (!cfg.paths.corpus.empty()) {
    l.tweets = load_corpus(cfg.paths.corpus);
    predict_lines(l.tweets, l.res, model, cfg.jobs, out);
  }
  if (file_digest(cfg.paths.model) != before) {
    throw Error("model file '" + cfg.paths.model + "' changed during reload");
  }
  err << "model " << cfg.paths.model << " unchanged (" << before << ")\n";
  return kExitOk;
}

}  // namespace

CliConfig CliConfig::from_config(const Config& cfg, const CliConfig& base) {
  CliConfig out = base;
  const std::string dir =
      std::filesystem::path(cfg.source()).parent_path().string();
  auto path = [&](const char* key, std::string* dst) {
    if (auto v = cfg.get("paths", key)) *dst = resolve(dir, *v);
  };
  path("corpus", &out.paths.corpus);
  path("gazetteer", &out.paths.gazetteer);
  path("embeddings", &out.paths.embeddings);
  path("parses", &out.paths.parses);
  path("model", &out.paths.model);
  path("report", &out.paths.report);
  path("split", &out.paths.split);
  out.features = FeatureConfig::from_config(cfg, base.features);
  out.train = TrainParams::from_config(cfg, base.train);
  out.train.validate();
  NormalizerConfig norm = NormalizerConfig::from_config(cfg);
  if (!cfg.get("articles")) norm.articles = base.normalizer.articles;
  if (!cfg.get("degree_adverbs")) norm.degree_adverbs = base.normalizer.degree_adverbs;
  if (!cfg.get("url_regex")) norm.set_url_regex(base.normalizer.url_regex());
  out.normalizer = std::move(norm);
  const long jobs = cfg.get_int("jobs", static_cast<long>(out.jobs));
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  out.jobs = static_cast<size_t>(jobs);
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Gazetteer-driven movie title recognition for tweets."};
  app.name(args.empty() ? "targetner" : std::filesystem::path(args[0]).filename().string());
  app.footer(kFormats);
  app.require_subcommand(1);

  std::vector<std::unique_ptr<Command>> commands;
  auto add = [&](const std::string& name, const std::string& about,
                 std::vector<std::string> paths, bool with_config = true) {
    auto cmd = std::make_unique<Command>();
    cmd->name = name;
    cmd->app = app.add_subcommand(name, about);
    cmd->app->footer(kFormats);
    Flags& f = cmd->flags;
    if (with_config) {
      cmd->app->add_option("--config", f.config,
                           "Config file; flags override its values")
          ->check(CLI::ExistingFile);
    }
    for (const std::string& p : paths) {
      if (p == "corpus") add_path(cmd->app, p, &f.paths.corpus, "Corpus TSV");
      if (p == "gazetteer") add_path(cmd->app, p, &f.paths.gazetteer, "Gazetteer TSV");
      if (p == "embeddings") add_path(cmd->app, p, &f.paths.embeddings, "Word vectors, word2vec text format");
      if (p == "parses") add_path(cmd->app, p, &f.paths.parses, "Dependency parses, CoNLL-style");
      if (p == "model") add_path(cmd->app, p, &f.paths.model, "Model file from `train`");
      if (p == "out") add_path(cmd->app, p, &f.paths.model, "Model file to write");
      if (p == "split") add_path(cmd->app, p, &f.paths.split, "Split file: tweet_id<TAB>train|eval");
      if (p == "report") add_path(cmd->app, p, &f.paths.report, "Also write machine-readable rows here");
      if (p == "seed") cmd->app->add_option("--seed", f.seed, "Training seed (overrides train.seed)");
      if (p == "jobs") {
        cmd->app->add_option("--jobs", f.jobs, "Tweet-level worker threads")
            ->check(CLI::PositiveNumber);
      }
    }
    commands.push_back(std::move(cmd));
    return commands.back().get();
  };

  add("normalize", "Print each tweet after normalization; reduction on stderr",
      {"corpus", "gazetteer"});
  add("identify", "Print gazetteer candidates per tweet",
      {"corpus", "gazetteer"});
  add("train", "Train an entity classifier",
      {"corpus", "gazetteer", "embeddings", "parses", "split", "out", "seed", "jobs"});
  add("evaluate", "Score a model against gold spans",
      {"corpus", "gazetteer", "embeddings", "parses", "model", "split", "report", "jobs"});
  Command* ablate = add("ablate", "Run an ablation spec over the split",
                        {"corpus", "gazetteer", "embeddings", "parses", "split", "report", "seed", "jobs"},
                        false);
  ablate->app->add_option("--spec", ablate->flags.config,
                          "Ablation spec: [paths], [train], [model.*] sections")
      ->check(CLI::ExistingFile);
  add("predict", "Print recognized entities with scores",
      {"corpus", "gazetteer", "embeddings", "parses", "model", "jobs"});
  add("gazetteer-reload",
      "Rebuild the index from a gazetteer file and reuse the model as is",
      {"gazetteer", "model", "corpus", "embeddings", "parses", "jobs"});

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (const auto& cmd : commands) {
      if (!cmd->app->parsed()) continue;
      const CliConfig cfg = effective_config(cmd->flags);
      if (cmd->name == "normalize") return cmd_normalize(cfg, out, err);
      if (cmd->name == "identify") return cmd_identify(cfg, out, err);
      if (cmd->name == "train") return cmd_train(cfg, out, err);
      if (cmd->name == "evaluate") return cmd_evaluate(cfg, out, err);
      if (cmd->name == "predict") return cmd_predict(cfg, out, err);
      if (cmd->name == "gazetteer-reload") return cmd_reload(cfg, out, err);
      if (cmd->name == "ablate") {
        std::unique_ptr<Config> spec;
        if (!cmd->flags.config.empty()) {
          spec = std::make_unique<Config>(Config::load(cmd->flags.config));
        }
        return cmd_ablate(cfg, spec.get(), out, err);
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  err << "usage error: no subcommand\n";
  return kExitUsage;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  return run_cli(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace targetner
