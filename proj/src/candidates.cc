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

#include "targetner/candidates.h"

#include <algorithm>

#include "targetner/text.h"

namespace targetner {

namespace {

bool is_placeholder(const Token& t) {
  return t.kind == TokenKind::kUserPlaceholder ||
         t.kind == TokenKind::kMoviePlaceholder;
}

}  // namespace

std::vector<Candidate> identify(const NormalizedTweet& tweet,
                                const GazetteerIndex& index) {
  std::vector<Candidate> out;
  const std::vector<Token>& toks = tweet.tokens;
  // Placeholders split the token stream into runs matched independently.
  std::vector<std::string> run;
  size_t i = 0;
  while (i < toks.size()) {
    if (is_placeholder(toks[i])) {
      ++i;
      continue;
    }
    size_t end = i;
    run.clear();
    while (end < toks.size() && !is_placeholder(toks[end])) {
      run.push_back(toks[end].surface);
      ++end;
    }
    size_t pos = 0;
    while (pos < run.size()) {
      auto m = index.lookup_longest(run, pos);
      if (!m) {
        ++pos;
        continue;
      }
      Candidate c{TokenSpan{i + pos, i + pos + m->length}, m->entry_id,
                  m->match_type, {}};
      c.surface = candidate_surface(tweet, c);
      out.push_back(std::move(c));
      pos += m->length;
    }
    i = end;
  }
  return out;
}

std::vector<std::string> candidate_tokens(const NormalizedTweet& tweet,
                                          const Candidate& candidate) {
  std::vector<std::string> out;
  for (size_t i = candidate.span.start;
       i < candidate.span.end && i < tweet.tokens.size(); ++i) {
    const Token& t = tweet.tokens[i];
    if (t.kind == TokenKind::kHashtag && (t.surface.empty() || t.surface[0] != '#')) {
      out.push_back("#" + t.surface);
    } else {
      out.push_back(t.surface);
    }
  }
  return out;
}

std::string candidate_surface(const NormalizedTweet& tweet,
                              const Candidate& candidate) {
  return join(candidate_tokens(tweet, candidate), " ");
}

std::vector<LabeledCandidate> label_candidates(
    const std::vector<Candidate>& candidates,
    const std::vector<TokenSpan>& gold) {
  std::vector<LabeledCandidate> out;
  out.reserve(candidates.size());
  for (const Candidate& c : candidates) {
    const bool hit = std::find(gold.begin(), gold.end(), c.span) != gold.end();
    out.push_back(LabeledCandidate{c, hit});
  }
  return out;
}

}  // namespace targetner
