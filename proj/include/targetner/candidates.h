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

#ifndef TARGETNER_CANDIDATES_H_
#define TARGETNER_CANDIDATES_H_

#include <string>
#include <vector>

#include "targetner/corpus.h"
#include "targetner/gazetteer.h"
#include "targetner/normalizer.h"

namespace targetner {

struct Candidate {
  TokenSpan span;
  std::string entry_id;
  MatchType match_type = MatchType::kFull;
  std::string surface;  // covered tokens as written, space-joined
};

struct LabeledCandidate {
  Candidate candidate;
  bool positive = false;
};

// Leftmost-longest scan over the normalized tokens. Candidates never overlap;
// placeholder tokens never start or extend a match.
std::vector<Candidate> identify(const NormalizedTweet& tweet,
                                const GazetteerIndex& index);

// Surface tokens covered by the candidate, hashtag segments shown with '#'.
std::vector<std::string> candidate_tokens(const NormalizedTweet& tweet,
                                          const Candidate& candidate);
std::string candidate_surface(const NormalizedTweet& tweet,
                              const Candidate& candidate);

// A candidate is positive iff its span equals a projected gold span.
std::vector<LabeledCandidate> label_candidates(
    const std::vector<Candidate>& candidates,
    const std::vector<TokenSpan>& gold);

}  // namespace targetner

#endif  // TARGETNER_CANDIDATES_H_
