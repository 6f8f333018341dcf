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

#include "targetner/features.h"

#include <algorithm>

#include "targetner/config.h"
#include "targetner/errors.h"
#include "targetner/text.h"

namespace targetner {

namespace {

struct Slot {
  const char* name;
  int a;
  int b;  // 0 for unigram slots
};

constexpr Slot kSlots[] = {
    {"w-2", -2, 0},     {"w-1", -1, 0},     {"w+1", 1, 0},
    {"w+2", 2, 0},      {"w-2,-1", -2, -1}, {"w-2,+1", -2, 1},
    {"w-2,+2", -2, 2},  {"w-1,+1", -1, 1},  {"w-1,+2", -1, 2},
    {"w+1,+2", 1, 2},
};

void add(FeatureVector* fv, const std::string& name, double value = 1.0) {
  (*fv)[name] += value;
}

void add_node(FeatureVector* fv, const char* role, const DepNode& n,
              const std::string& label) {
  const std::string r(role);
  add(fv, r + "_f:" + n.form);
  add(fv, r + "_m:" + n.lemma);
  add(fv, r + "_p:" + n.pos);
  add(fv, r + "_d:" + label);
}

}  // namespace

FeatureConfig FeatureConfig::from_config(const Config& cfg,
                                         const FeatureConfig& base) {
  FeatureConfig out = base;
  out.orthographic = cfg.get_bool("features.orthographic", out.orthographic);
  out.ngram = cfg.get_bool("features.ngram", out.ngram);
  out.syntactic = cfg.get_bool("features.syntactic", out.syntactic);
  out.supplementary = cfg.get_bool("features.supplementary", out.supplementary);
  const long k = cfg.get_int("features.k", static_cast<long>(out.k));
  if (k < 0) throw ConfigError("features.k must be >= 0");
  out.k = static_cast<size_t>(k);
  out.collection_year = static_cast<int>(
      cfg.get_int("collection_year", out.collection_year));
  return out;
}

FeatureConfig FeatureConfig::from_config(const Config& cfg) {
  return from_config(cfg, FeatureConfig());
}

std::string FeatureConfig::families() const {
  std::vector<std::string> names;
  if (orthographic) names.push_back("orthographic");
  if (ngram) names.push_back("ngram");
  if (syntactic) names.push_back("syntactic");
  if (supplementary) names.push_back("supplementary");
  return join(names, ",");
}

std::string cap_category(const std::vector<std::string>& tokens) {
  bool all_lower = true, first_only = true, all_caps = true;
  for (const std::string& tok : tokens) {
    bool first_letter = true;
    for (char32_t c : decode_utf8(tok)) {
      if (!is_letter(c)) continue;
      const bool up = is_upper(c);
      const bool low = is_lower(c);
      if (up) all_lower = false;
      if (low) all_caps = false;
      if (first_letter ? low : up) first_only = false;
      first_letter = false;
    }
  }
  if (all_lower) return "all_lower";
  if (first_only) return "first_only";
  if (all_caps) return "all_caps";
  return "mixed";
}

FeatureVector orthographic_features(const std::vector<std::string>& tokens,
                                    MatchType match_type, int tweet_year,
                                    std::optional<int> entry_year,
                                    int collection_year) {
  FeatureVector fv;
  add(&fv, "Cap:" + cap_category(tokens));
  const bool hashtag =
      std::any_of(tokens.begin(), tokens.end(),
                  [](const std::string& t) { return !t.empty() && t[0] == '#'; });
  add(&fv, std::string("Hashtag:") + (hashtag ? "yes" : "no"));
  add(&fv, "Num_of_tokens:" + std::to_string(tokens.size()));
  add(&fv, std::string("Title_match:") + match_type_name(match_type));
  if (entry_year) {
    add(&fv, "Numerical_time_diff:" + std::to_string(tweet_year - *entry_year));
    const char* cat = *entry_year < collection_year - 1 ? "past"
                      : *entry_year > collection_year   ? "future"
                                                        : "contemporary";
    add(&fv, std::string("Categorical_time_diff:") + cat);
  }
  return fv;
}

std::vector<std::string> movie_context(const NormalizedTweet& tweet,
                                       const TokenSpan& span,
                                       size_t* position) {
  if (span.empty() || span.end > tweet.tokens.size()) {
    throw ContractViolation("candidate span outside tweet '" +
                            tweet.source_id + "'");
  }
  std::vector<std::string> out;
  out.reserve(tweet.tokens.size() - span.size() + 1);
  for (size_t i = 0; i < tweet.tokens.size(); ++i) {
    if (i == span.start) {
      *position = out.size();
      out.emplace_back(kMoviePlaceholder);
    } else if (i < span.start || i >= span.end) {
      out.push_back(tweet.tokens[i].surface);
    }
  }
  return out;
}

FeatureVector ngram_features(const std::vector<std::string>& tokens,
                             size_t i) {
  if (i >= tokens.size() || tokens[i] != kMoviePlaceholder) {
    throw ContractViolation("ngram_features: position " + std::to_string(i) +
                            " is not " + std::string(kMoviePlaceholder));
  }
  auto at = [&](int offset) -> std::string {
    const long j = static_cast<long>(i) + offset;
    if (j < 0) return kBosSentinel;
    if (j >= static_cast<long>(tokens.size())) return kEosSentinel;
    return tokens[static_cast<size_t>(j)];
  };
  FeatureVector fv;
  for (const Slot& s : kSlots) {
    std::string value = at(s.a);
    if (s.b != 0) value += "_" + at(s.b);
    add(&fv, std::string(s.name) + ":" + value);
  }
  return fv;
}

FeatureVector syntactic_features(const DepTree& tree, size_t node) {
  validate_tree(tree);
  if (node >= tree.nodes.size()) {
    throw ContractViolation("syntactic_features: node out of range");
  }
  FeatureVector fv;
  const DepNode& self = tree.nodes[node];
  // Head and grand-head report the label of the arc on the path down to the
  // candidate; siblings and dependents report their own.
  if (self.head != 0) {
    const DepNode& h = tree.nodes[self.head - 1];
    add_node(&fv, "h", h, self.label);
    if (h.head != 0) add_node(&fv, "g", tree.nodes[h.head - 1], h.label);
    for (size_t j = 0; j < tree.nodes.size(); ++j) {
      if (j != node && tree.nodes[j].head == self.head) {
        add_node(&fv, "s", tree.nodes[j], tree.nodes[j].label);
      }
    }
  }
  for (size_t j = 0; j < tree.nodes.size(); ++j) {
    if (tree.nodes[j].head == node + 1) {
      add_node(&fv, "d", tree.nodes[j], tree.nodes[j].label);
    }
  }
  return fv;
}

FeatureVector supplementary_features(const FeatureVector& ngram,
                                     const EmbeddingTable& table, size_t k) {
  FeatureVector out = ngram;
  if (k == 0) return out;
  for (const auto& [name, value] : ngram) {
    const size_t colon = name.find(':');
    if (colon == std::string::npos) continue;
    const std::string slot = name.substr(0, colon);
    const std::string word = name.substr(colon + 1);
    for (const auto& [neighbor, sim] : top_k(table, word, k)) {
      const std::string key = slot + ":" + neighbor;
      if (ngram.count(key)) continue;
      out[key] += std::max(sim, 0.0);
    }
  }
  return out;
}

FeatureVector extract(const Candidate& candidate, const FeatureInputs& in,
                      const FeatureConfig& cfg) {
  if (in.tweet == nullptr) throw ContractViolation("extract: no tweet");
  if (cfg.syntactic && in.parse == nullptr) {
    throw ConfigError("syntactic features need a parse for tweet '" +
                      in.tweet->source_id + "'");
  }
  if (cfg.supplementary && in.embeddings == nullptr) {
    throw ConfigError("supplementary features need an embedding table");
  }
  const NormalizedTweet& tweet = *in.tweet;
  FeatureVector fv;
  if (cfg.orthographic) {
    for (auto& [k, v] : orthographic_features(
             candidate_tokens(tweet, candidate), candidate.match_type,
             in.tweet_year, in.entry_year, cfg.collection_year)) {
      fv[k] += v;
    }
  }
  if (cfg.ngram || cfg.supplementary) {
    size_t pos = 0;
    const std::vector<std::string> ctx =
        movie_context(tweet, candidate.span, &pos);
    FeatureVector ng = ngram_features(ctx, pos);
    if (cfg.supplementary) {
      FeatureVector sup = supplementary_features(ng, *in.embeddings, cfg.k);
      if (!cfg.ngram) {
        for (const auto& [k, v] : ng) sup.erase(k);
      }
      ng = std::move(sup);
    }
    for (auto& [k, v] : ng) fv[k] += v;
  }
  if (cfg.syntactic) {
    if (in.parse->nodes.size() != tweet.tokens.size()) {
      throw ValidationError("parse for tweet '" + tweet.source_id + "' has " +
                            std::to_string(in.parse->nodes.size()) +
                            " nodes, normalized tweet has " +
                            std::to_string(tweet.tokens.size()) + " tokens");
    }
    const DepTree collapsed = collapse_span(*in.parse, candidate.span);
    for (auto& [k, v] : syntactic_features(collapsed, candidate.span.start)) {
      fv[k] += v;
    }
  }
  return fv;
}

}  // namespace targetner
