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

// Writes the desk corpus and, with --report, prints the token reduction, the
// baseline scores and the ablation ladder for it.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "targetner/errors.h"
#include "targetner/pipeline.h"
#include "targetner/synthetic.h"

namespace {

using targetner::SynthParams;

std::map<std::string, double SynthParams::*> real_knobs() {
  return {
      {"word_title_rate", &SynthParams::word_title_rate},
      {"phrase_title_rate", &SynthParams::phrase_title_rate},
      {"colon_title_rate", &SynthParams::colon_title_rate},
      {"recent_year_rate", &SynthParams::recent_year_rate},
      {"url_rate", &SynthParams::url_rate},
      {"rt_rate", &SynthParams::rt_rate},
      {"reply_rate", &SynthParams::reply_rate},
      {"with_user_rate", &SynthParams::with_user_rate},
      {"trailing_hashtag_rate", &SynthParams::trailing_hashtag_rate},
      {"degree_hashtag_rate", &SynthParams::degree_hashtag_rate},
      {"extra_clause_rate", &SynthParams::extra_clause_rate},
      {"weak_context_rate", &SynthParams::weak_context_rate},
      {"hard_negative_rate", &SynthParams::hard_negative_rate},
      {"generic_movie_word_rate", &SynthParams::generic_movie_word_rate},
      {"emphasis_caps_rate", &SynthParams::emphasis_caps_rate},
      {"omitted_mention_rate", &SynthParams::omitted_mention_rate},
      {"miss_form_rate", &SynthParams::miss_form_rate},
      {"train_vocab_fraction", &SynthParams::train_vocab_fraction},
      {"cluster_noise", &SynthParams::cluster_noise},
  };
}

void report(const targetner::SynthCorpus& corpus, size_t jobs) {
  using namespace targetner;
  const auto t0 = std::chrono::steady_clock::now();
  const GazetteerIndex index = build_index(corpus.gazetteer);
  Resources res;
  res.index = &index;
  res.embeddings = &corpus.embeddings;

  std::vector<NormalizedTweet> norms;
  for (const Tweet& t : corpus.tweets) norms.push_back(normalize(t, index.vocab()));
  std::printf("tweets %zu  gazetteer %zu  vectors %zu\n", corpus.tweets.size(),
              corpus.gazetteer.size(), corpus.embeddings.size());
  std::printf("token reduction %.2f%%\n", 100.0 * token_reduction(norms));

  const DatasetSplit split = split_of(corpus);
  size_t ents[3] = {0, 0, 0};
  for (const Tweet& t : split.train) ents[0] += t.gold.size();
  for (const Tweet& t : split.eval_seen) ents[1] += t.gold.size();
  for (const Tweet& t : split.eval_unseen) ents[2] += t.gold.size();
  std::printf("split tweets %zu/%zu/%zu excluded %zu  entities %zu/%zu/%zu\n",
              split.train.size(), split.eval_seen.size(),
              split.eval_unseen.size(), split.excluded.size(), ents[0],
              ents[1], ents[2]);

  AblationSpec spec;
  spec.models.push_back({"Baseline", true, {}});
  FeatureConfig m1;
  m1.ngram = false;
  spec.models.push_back({"Model 1", false, m1});
  FeatureConfig m2;
  spec.models.push_back({"Model 2", false, m2});
  FeatureConfig m3;
  m3.supplementary = true;
  spec.models.push_back({"Model 3", false, m3});
  const auto rows = run_ablation(split, res, spec, jobs);
  std::cout << format_report_table(rows);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("elapsed %.2fs\n", secs);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the desk-scale movie tweet corpus."};
  std::string out_dir;
  bool do_report = false;
  size_t jobs = 4;
  uint64_t seed = SynthParams().seed;
  std::vector<std::string> sets;
  app.add_option("--out", out_dir, "Directory for corpus.tsv, gazetteer.tsv, embeddings.txt, split.tsv and the configs");
  app.add_flag("--report", do_report, "Print reduction, baseline and ablation scores");
  app.add_option("--jobs", jobs, "Threads for evaluation")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--set", sets, "Override a generator knob, key=value");
  CLI11_PARSE(app, argc, argv);

  SynthParams params;
  params.seed = seed;
  const auto knobs = real_knobs();
  for (const std::string& kv : sets) {
    const size_t eq = kv.find('=');
    auto it = eq == std::string::npos ? knobs.end() : knobs.find(kv.substr(0, eq));
    if (it == knobs.end()) {
      std::cerr << "error: unknown knob '" << kv << "'\n";
      return 2;
    }
    params.*(it->second) = std::stod(kv.substr(eq + 1));
  }
  try {
    const targetner::SynthCorpus corpus = targetner::generate_desk_corpus(params);
    if (!out_dir.empty()) targetner::write_desk_corpus(corpus, out_dir);
    if (do_report) report(corpus, jobs);
  } catch (const targetner::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
