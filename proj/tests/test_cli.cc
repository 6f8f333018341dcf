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


#include <algorithm>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "support.h"
#include "targetner/cli.h"
#include "targetner/config.h"
#include "targetner/pipeline.h"

using namespace targetner;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "targetner");
  std::ostringstream out, err;
  Result r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Desk corpus files, written once.
const testing::TempDir& desk_dir() {
  static const testing::TempDir* dir = [] {
    auto* d = new testing::TempDir;
    write_desk_corpus(testing::desk_corpus(), d->path());
    return d;
  }();
  return *dir;
}

std::string desk(const std::string& name) { return desk_dir().file(name); }

size_t lines(const std::string& s) {
  return static_cast<size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("help documents subcommands, flags and file formats") {
  const Result top = run({"--help"});
  CHECK(top.code == kExitOk);
  for (const char* word : {"normalize", "identify", "train", "evaluate",
                           "ablate", "predict", "gazetteer-reload",
                           "File formats", "Exit status"}) {
    CHECK(top.out.find(word) != std::string::npos);
  }
  const std::vector<std::pair<std::string, std::vector<std::string>>> flags = {
      {"normalize", {"--corpus", "--gazetteer", "--config"}},
      {"identify", {"--corpus", "--gazetteer", "--config"}},
      {"train", {"--corpus", "--gazetteer", "--embeddings", "--parses",
                 "--split", "--out", "--seed", "--jobs", "--config"}},
      {"evaluate", {"--model", "--split", "--report", "--jobs"}},
      {"ablate", {"--spec", "--split", "--report", "--seed"}},
      {"predict", {"--model", "--corpus", "--jobs"}},
      {"gazetteer-reload", {"--gazetteer", "--model", "--corpus"}}};
  for (const auto& [cmd, names] : flags) {
    const Result r = run({cmd, "--help"});
    CHECK(r.code == kExitOk);
    for (const std::string& f : names) {
      INFO(cmd << " " << f);
      CHECK(r.out.find(f) != std::string::npos);
    }
    CHECK(r.out.find("gazetteer   id <TAB> title") != std::string::npos);
    CHECK(r.out.find("Exit status") != std::string::npos);
  }
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  const Result r = run({"evaluate", "--corpus", desk("corpus.tsv")});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("--model") != std::string::npos);
  CHECK(run({"train", "--corpus", desk("corpus.tsv")}).code == kExitUsage);
  CHECK(run({"ablate", "--corpus", desk("corpus.tsv")}).code == kExitUsage);
  CHECK(run({"identify", "--bogus-flag"}).code == kExitUsage);
}

TEST_CASE("data errors exit 1") {
  testing::TempDir dir;
  testing::write_text(dir.file("bad.tsv"), "no tabs here\n");
  const Result r = run({"identify", "--corpus", dir.file("bad.tsv"),
                        "--gazetteer", desk("gazetteer.tsv")});
  CHECK(r.code == kExitDataError);
  CHECK(r.err.find("bad.tsv:1") != std::string::npos);
  CHECK(run({"identify", "--corpus", dir.file("missing.tsv"), "--gazetteer",
             desk("gazetteer.tsv")})
            .code == kExitDataError);
  testing::write_text(dir.file("c.toml"), "[train]\nc = -1\n");
  CHECK(run({"identify", "--config", dir.file("c.toml"), "--corpus",
             desk("corpus.tsv"), "--gazetteer", desk("gazetteer.tsv")})
            .code == kExitDataError);
}

TEST_CASE("identify and normalize print what the library computes") {
  const std::vector<Tweet> tweets = load_corpus(desk("corpus.tsv"));
  const GazetteerIndex index = build_index(load_gazetteer(desk("gazetteer.tsv")));
  std::ostringstream want_ids, want_norm;
  for (const Tweet& t : tweets) {
    const NormalizedTweet norm = normalize(t, index.vocab());
    want_norm << t.id << '\t' << render_normalized(norm) << '\n';
    for (const Candidate& c : identify(norm, index)) {
      want_ids << t.id << '\t' << c.span.start << '\t' << c.span.end << '\t'
               << match_type_name(c.match_type) << '\t' << c.surface << '\n';
    }
  }
  const Result ids = run({"identify", "--corpus", desk("corpus.tsv"),
                          "--gazetteer", desk("gazetteer.tsv")});
  CHECK(ids.code == kExitOk);
  CHECK(ids.out == want_ids.str());
  const Result norm = run({"normalize", "--corpus", desk("corpus.tsv"),
                           "--gazetteer", desk("gazetteer.tsv")});
  CHECK(norm.code == kExitOk);
  CHECK(norm.out == want_norm.str());
  CHECK(norm.err.find("token reduction") != std::string::npos);
}

TEST_CASE("train, evaluate and predict match library calls") {
  testing::TempDir dir;
  const std::string model_path = dir.file("m3.model");
  const Result trained = run({"train", "--config", desk("model3.toml"),
                              "--out", model_path});
  REQUIRE(trained.code == kExitOk);
  REQUIRE(std::filesystem::exists(model_path));

  // The same model through the library.
  const Config cfg = Config::load(desk("model3.toml"));
  const FeatureConfig features = FeatureConfig::from_config(cfg);
  const TrainParams params = TrainParams::from_config(cfg);
  const std::vector<Tweet> tweets = load_corpus(desk("corpus.tsv"));
  const GazetteerIndex index = build_index(load_gazetteer(desk("gazetteer.tsv")));
  const EmbeddingTable table = load_embeddings(desk("embeddings.txt"));
  Resources res;
  res.index = &index;
  res.embeddings = &table;
  const DatasetSplit split = load_split(tweets, desk("split.tsv"));
  const Model lib = train_model(prepare_all(split.train, res), res, features,
                                params);
  save_model(lib, dir.file("lib.model"));
  CHECK(testing::read_text(model_path) ==
        testing::read_text(dir.file("lib.model")));

  const std::vector<AblationRow> rows = {
      {"m3", "eval_seen", evaluate(split.eval_seen, res, &lib, features)},
      {"m3", "eval_unseen", evaluate(split.eval_unseen, res, &lib, features)}};
  const Result eval = run({"evaluate", "--config", desk("model3.toml"),
                           "--model", model_path, "--report",
                           dir.file("r.tsv"), "--jobs", "2"});
  CHECK(eval.code == kExitOk);
  CHECK(eval.out == format_report_table(rows));
  CHECK(testing::read_text(dir.file("r.tsv")) == format_report_tsv(rows));

  const Result all = run({"evaluate", "--corpus", desk("corpus.tsv"),
                          "--gazetteer", desk("gazetteer.tsv"), "--embeddings",
                          desk("embeddings.txt"), "--model", model_path});
  CHECK(all.code == kExitOk);
  CHECK(all.out.find("all") != std::string::npos);

  const Result pred = run({"predict", "--config", desk("model3.toml"),
                           "--model", model_path});
  CHECK(pred.code == kExitOk);
  size_t recognized = 0;
  for (const Tweet& t : tweets) {
    recognized += recognize(t, res, &lib, features).size();
  }
  CHECK(lines(pred.out) == recognized);
  const std::string first = pred.out.substr(0, pred.out.find('\n'));
  CHECK(std::count(first.begin(), first.end(), '\t') == 5);
}

TEST_CASE("ablate prints the library report") {
  testing::TempDir dir;
  const Result r = run({"ablate", "--spec", desk("table6.toml"), "--report",
                        dir.file("t6.tsv")});
  REQUIRE(r.code == kExitOk);
  const Config cfg = Config::load(desk("table6.toml"));
  const std::vector<Tweet> tweets = load_corpus(desk("corpus.tsv"));
  const GazetteerIndex index = build_index(load_gazetteer(desk("gazetteer.tsv")));
  const EmbeddingTable table = load_embeddings(desk("embeddings.txt"));
  Resources res;
  res.index = &index;
  res.embeddings = &table;
  const auto rows = run_ablation(load_split(tweets, desk("split.tsv")), res,
                                 AblationSpec::from_config(cfg));
  CHECK(r.out == format_report_table(rows));
  CHECK(testing::read_text(dir.file("t6.tsv")) == format_report_tsv(rows));
  CHECK(lines(r.out) == 1 + 8);
}

TEST_CASE("gazetteer-reload reuses the model file untouched") {
  testing::TempDir dir;
  const std::string model_path = dir.file("m1.model");
  REQUIRE(run({"train", "--corpus", desk("corpus.tsv"), "--gazetteer",
               desk("gazetteer.tsv"), "--split", desk("split.tsv"), "--out",
               model_path})
              .code == kExitOk);
  const std::string before = testing::read_text(model_path);

  std::string gaz = testing::read_text(desk("gazetteer.tsv"));
  gaz += "new1\tBrandnew Zorblax\t2014\n";
  testing::write_text(dir.file("g.tsv"), gaz);
  testing::write_text(dir.file("c.tsv"),
                      "x1\t2014\tgoing to see Brandnew Zorblax tonight\t\n");
  const Result r = run({"gazetteer-reload", "--gazetteer", dir.file("g.tsv"),
                        "--model", model_path, "--corpus", dir.file("c.tsv")});
  CHECK(r.code == kExitOk);
  CHECK(r.err.find("unchanged") != std::string::npos);
  CHECK(testing::read_text(model_path) == before);

  const Result ids = run({"identify", "--corpus", dir.file("c.tsv"),
                          "--gazetteer", dir.file("g.tsv")});
  CHECK(ids.out.find("Brandnew Zorblax") != std::string::npos);
}

TEST_CASE("config values sit between defaults and flags") {
  testing::TempDir dir;
  testing::write_text(dir.file("c.toml"),
                      "collection_year = 2013\njobs = 3\n"
                      "[paths]\ncorpus = \"data/c.tsv\"\nmodel = \"/abs/m\"\n"
                      "[features]\nngram = false\n[train]\nseed = 7\n");
  const CliConfig base;
  const CliConfig c =
      CliConfig::from_config(Config::load(dir.file("c.toml")), base);
  CHECK(c.paths.corpus ==
        (std::filesystem::path(dir.path()) / "data/c.tsv").string());
  CHECK(c.paths.model == "/abs/m");
  CHECK(c.paths.gazetteer.empty());
  CHECK_FALSE(c.features.ngram);
  CHECK(c.features.orthographic);
  CHECK(c.features.collection_year == 2013);
  CHECK(c.train.seed == 7);
  CHECK(c.train.c == 0.1);
  CHECK(c.jobs == 3);
}

TEST_CASE("the seed flag overrides the config seed") {
  testing::TempDir dir;
  const std::string a = dir.file("a.model"), b = dir.file("b.model");
  REQUIRE(run({"train", "--config", desk("model3.toml"), "--out", a}).code ==
          kExitOk);
  REQUIRE(run({"train", "--config", desk("model3.toml"), "--out", b, "--seed",
               "5"})
              .code == kExitOk);
  CHECK(load_model(a).params.seed == 1);
  CHECK(load_model(b).params.seed == 5);
}
