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

#ifndef TARGETNER_DEPTREE_H_
#define TARGETNER_DEPTREE_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "targetner/corpus.h"

namespace targetner {

struct DepNode {
  std::string form;
  std::string lemma;
  std::string pos;
  std::string label;  // label of the arc from `head` to this node
  size_t head = 0;    // 1-based; 0 is the artificial root

  friend bool operator==(const DepNode&, const DepNode&) = default;
};

struct DepTree {
  std::string tweet_id;
  std::vector<DepNode> nodes;
};

// Single root, heads in range, no cycles. Throws ContractViolation.
void validate_tree(const DepTree& tree);

// Parse file: blocks separated by blank lines, each opened by
// `# tweet_id = <id>` and followed by rows
// `index <TAB> form <TAB> lemma <TAB> pos <TAB> head <TAB> label`.
std::map<std::string, DepTree> read_parses(std::istream& in,
                                           const std::string& source);
std::map<std::string, DepTree> load_parses(const std::string& path);
void write_parses(const std::map<std::string, DepTree>& parses,
                  std::ostream& out);

// Replaces the nodes of `span` (0-based token indices) with one #MOVIE#/NNP
// node. The new node takes the head and label of the span's external head;
// arcs into the span are redirected to it.
DepTree collapse_span(const DepTree& tree, const TokenSpan& span);

}  // namespace targetner

#endif  // TARGETNER_DEPTREE_H_
