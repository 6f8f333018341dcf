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

#include "targetner/deptree.h"

#include <fstream>
#include <iostream>

#include "targetner/errors.h"
#include "targetner/normalizer.h"
#include "targetner/text.h"

namespace targetner {

void validate_tree(const DepTree& tree) {
  const size_t n = tree.nodes.size();
  size_t roots = 0;
  for (size_t i = 0; i < n; ++i) {
    const size_t h = tree.nodes[i].head;
    if (h > n) {
      throw ContractViolation("tree '" + tree.tweet_id + "': node " +
                              std::to_string(i + 1) + " has head " +
                              std::to_string(h) + " out of range");
    }
    if (h == i + 1) {
      throw ContractViolation("tree '" + tree.tweet_id + "': node " +
                              std::to_string(i + 1) + " heads itself");
    }
    if (h == 0) ++roots;
  }
  if (n > 0 && roots != 1) {
    throw ContractViolation("tree '" + tree.tweet_id + "' has " +
                            std::to_string(roots) + " roots");
  }
  // Every node must reach the root within n steps.
  for (size_t i = 0; i < n; ++i) {
    size_t cur = i + 1;
    size_t steps = 0;
    while (cur != 0) {
      cur = tree.nodes[cur - 1].head;
      if (++steps > n) {
        throw ContractViolation("tree '" + tree.tweet_id +
                                "' has a cycle through node " +
                                std::to_string(i + 1));
      }
    }
  }
}

std::map<std::string, DepTree> read_parses(std::istream& in,
                                           const std::string& source) {
  std::map<std::string, DepTree> out;
  DepTree cur;
  bool open = false;
  size_t open_line = 0;
  auto finish = [&]() {
    if (!open) return;
    if (out.count(cur.tweet_id)) {
      throw ParseError(source, open_line,
                       "duplicate parse for tweet '" + cur.tweet_id + "'");
    }
    out.emplace(cur.tweet_id, std::move(cur));
    cur = DepTree();
    open = false;
  };

  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = sanitize_utf8(raw);
    if (trim(line).empty()) {
      finish();
      continue;
    }
    if (line[0] == '#' && line.find("tweet_id") != std::string::npos) {
      const size_t eq = line.find('=');
      if (eq == std::string::npos) {
        throw ParseError(source, line_no, "expected '# tweet_id = <id>'");
      }
      finish();
      cur.tweet_id = std::string(trim(std::string_view(line).substr(eq + 1)));
      open = true;
      open_line = line_no;
      continue;
    }
    if (!open) throw ParseError(source, line_no, "token row before header");
    const std::vector<std::string> f = split(line, '\t');
    if (f.size() != 6) {
      throw ParseError(source, line_no,
                       "expected 6 tab-separated columns, got " +
                           std::to_string(f.size()));
    }
    const std::string index(trim(f[0]));
    const std::string head(trim(f[4]));
    if (!is_all_digits(index) || index.empty() ||
        std::stoul(index) != cur.nodes.size() + 1) {
      throw ParseError(source, line_no, "token index out of sequence");
    }
    if (!is_all_digits(head) || head.empty()) {
      throw ParseError(source, line_no, "bad head '" + f[4] + "'");
    }
    cur.nodes.push_back(DepNode{f[1], f[2], f[3], f[5], std::stoul(head)});
  }
  finish();
  for (const auto& [id, tree] : out) {
    try {
      validate_tree(tree);
    } catch (const ContractViolation& e) {
      throw ParseError(source, 0, e.what());
    }
  }
  return out;
}

std::map<std::string, DepTree> load_parses(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open parse file '" + path + "'");
  return read_parses(in, path);
}

void write_parses(const std::map<std::string, DepTree>& parses,
                  std::ostream& out) {
  for (const auto& [id, tree] : parses) {
    out << "# tweet_id = " << id << '\n';
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
      const DepNode& n = tree.nodes[i];
      out << i + 1 << '\t' << n.form << '\t' << n.lemma << '\t' << n.pos
          << '\t' << n.head << '\t' << n.label << '\n';
    }
    out << '\n';
  }
}

DepTree collapse_span(const DepTree& tree, const TokenSpan& span) {
  const size_t n = tree.nodes.size();
  if (span.empty() || span.end > n) {
    throw ContractViolation("collapse_span: span [" +
                            std::to_string(span.start) + ", " +
                            std::to_string(span.end) + ") outside tree of " +
                            std::to_string(n) + " nodes");
  }
  validate_tree(tree);
  auto inside = [&](size_t one_based) {
    return one_based >= span.start + 1 && one_based <= span.end;
  };
  // The external head: the span node nearest the root, so its own path to
  // the root avoids the span. Ties go to the leftmost node.
  auto depth = [&](size_t i) {
    size_t d = 0;
    for (size_t cur = i + 1; cur != 0; cur = tree.nodes[cur - 1].head) ++d;
    return d;
  };
  size_t ext = span.start;
  size_t ext_depth = depth(span.start);
  for (size_t i = span.start + 1; i < span.end; ++i) {
    const size_t d = depth(i);
    if (d < ext_depth) {
      ext = i;
      ext_depth = d;
    }
  }
  const size_t merged = span.start + 1;  // new 1-based index
  const size_t shift = span.size() - 1;
  auto remap = [&](size_t h) -> size_t {
    if (h == 0) return 0;
    if (inside(h)) return merged;
    return h > span.end ? h - shift : h;
  };

  DepTree out;
  out.tweet_id = tree.tweet_id;
  for (size_t i = 0; i < n; ++i) {
    if (i == span.start) {
      const DepNode& e = tree.nodes[ext];
      out.nodes.push_back(DepNode{std::string(kMoviePlaceholder),
                                  std::string(kMoviePlaceholder), "NNP",
                                  e.label, remap(e.head)});
      continue;
    }
    if (i > span.start && i < span.end) continue;
    DepNode node = tree.nodes[i];
    node.head = remap(node.head);
    out.nodes.push_back(std::move(node));
  }
  return out;
}

}  // namespace targetner
