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


#include <random>
#include <sstream>

#include "doctest.h"
#include "support.h"
#include "targetner/deptree.h"
#include "targetner/errors.h"

using namespace targetner;

namespace {

std::map<std::string, DepTree> parse(const std::string& text) {
  std::istringstream in(text);
  return read_parses(in, "mem.conll");
}

DepTree tree_of(std::vector<size_t> heads) {
  DepTree t;
  t.tweet_id = "t";
  for (size_t i = 0; i < heads.size(); ++i) {
    const std::string w = "w" + std::to_string(i + 1);
    t.nodes.push_back(DepNode{w, w, "NN", "l" + std::to_string(i + 1),
                              heads[i]});
  }
  return t;
}

// Random tree: each node after the first picks an earlier node as head, then
// the node order is shuffled.
DepTree random_tree(std::mt19937& rng, size_t n) {
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<size_t> heads(n, 0);
  for (size_t k = 1; k < n; ++k) {
    heads[perm[k]] = perm[rng() % k] + 1;
  }
  return tree_of(heads);
}

}  // namespace

TEST_CASE("the dependency fixture loads as one valid tree") {
  const auto parses = load_parses(testing::fixture("songs.conll"));
  REQUIRE(parses.count("songs"));
  const DepTree& t = parses.at("songs");
  REQUIRE(t.nodes.size() == 12);
  CHECK(t.nodes[9] == DepNode{"Frozen", "frozen", "NNP", "pobj", 9});
  CHECK(t.nodes[3].head == 0);
  CHECK_NOTHROW(validate_tree(t));
}

TEST_CASE("malformed parse files are rejected with a line") {
  CHECK_THROWS_AS(parse("1\ta\ta\tNN\t0\troot\n"), ParseError);
  try {
    parse("# tweet_id = x\n1\ta\ta\tNN\t0\troot\n3\tb\tb\tNN\t1\tdep\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("# tweet_id = x\n1\ta\ta\tNN\n"), ParseError);
  CHECK_THROWS_AS(parse("# tweet_id = x\n1\ta\ta\tNN\t-1\troot\n"),
                  ParseError);
  // Two roots.
  CHECK_THROWS_AS(
      parse("# tweet_id = x\n1\ta\ta\tNN\t0\troot\n2\tb\tb\tNN\t0\troot\n"),
      ParseError);
  // Same id twice.
  CHECK_THROWS_AS(parse("# tweet_id = x\n1\ta\ta\tNN\t0\troot\n\n"
                        "# tweet_id = x\n1\ta\ta\tNN\t0\troot\n"),
                  ParseError);
}

TEST_CASE("validate_tree rejects cycles, range errors and root counts") {
  CHECK_NOTHROW(validate_tree(tree_of({0, 1, 1})));
  CHECK_THROWS_AS(validate_tree(tree_of({0, 3, 2})), ContractViolation);
  CHECK_THROWS_AS(validate_tree(tree_of({0, 5})), ContractViolation);
  CHECK_THROWS_AS(validate_tree(tree_of({0, 2})), ContractViolation);
  CHECK_THROWS_AS(validate_tree(tree_of({2, 1})), ContractViolation);
  CHECK_THROWS_AS(validate_tree(tree_of({0, 0})), ContractViolation);
  CHECK_NOTHROW(validate_tree(tree_of({})));
}

TEST_CASE("parses round-trip through the file format") {
  std::mt19937 rng(17);
  std::map<std::string, DepTree> parses;
  for (int i = 0; i < 30; ++i) {
    DepTree t = random_tree(rng, 1 + rng() % 15);
    t.tweet_id = "t" + std::to_string(i);
    parses[t.tweet_id] = t;
  }
  std::ostringstream out;
  write_parses(parses, out);
  const auto back = parse(out.str());
  REQUIRE(back.size() == parses.size());
  for (const auto& [id, t] : parses) CHECK(back.at(id).nodes == t.nodes);
}

TEST_CASE("collapsing a single node renames it in place") {
  const DepTree t = load_parses(testing::fixture("songs.conll")).at("songs");
  const DepTree c = collapse_span(t, {9, 10});
  REQUIRE(c.nodes.size() == 12);
  CHECK(c.nodes[9] == DepNode{"#MOVIE#", "#MOVIE#", "NNP", "pobj", 9});
  for (size_t i = 0; i < 12; ++i) {
    if (i != 9) CHECK(c.nodes[i] == t.nodes[i]);
  }
}

TEST_CASE("collapsing a phrase keeps its external attachment") {
  // saw(1) lord(2) of(3) rings(4) yesterday(5); "lord of rings" headed by
  // lord under saw, yesterday under saw, rings under of.
  const DepTree t = tree_of({0, 1, 2, 3, 1});
  const DepTree c = collapse_span(t, {1, 4});
  REQUIRE(c.nodes.size() == 3);
  CHECK(c.nodes[1].form == "#MOVIE#");
  CHECK(c.nodes[1].head == 1);
  CHECK(c.nodes[1].label == "l2");
  CHECK(c.nodes[2].form == "w5");
  CHECK(c.nodes[2].head == 1);
  CHECK_THROWS_AS(collapse_span(t, {3, 9}), ContractViolation);
  CHECK_THROWS_AS(collapse_span(t, {2, 2}), ContractViolation);
}

TEST_CASE("a span that leaves itself twice attaches at its highest node") {
  // x(1) under z(3), y(2) the root, z under y; the span is x y.
  const DepTree c = collapse_span(tree_of({3, 0, 2}), {0, 2});
  REQUIRE(c.nodes.size() == 2);
  CHECK(c.nodes[0].head == 0);
  CHECK(c.nodes[0].label == "l2");
  CHECK(c.nodes[1].head == 1);
  CHECK_NOTHROW(validate_tree(c));
}

TEST_CASE("collapsed random trees stay trees with remapped arcs") {
  std::mt19937 rng(19);
  for (int round = 0; round < 2000; ++round) {
    const size_t n = 1 + rng() % 12;
    const DepTree t = random_tree(rng, n);
    const size_t start = rng() % n;
    const size_t end = start + 1 + rng() % (n - start);
    const DepTree c = collapse_span(t, {start, end});
    REQUIRE(c.nodes.size() == n - (end - start) + 1);
    REQUIRE_NOTHROW(validate_tree(c));
    // Old index of every new node, with the span mapped to its start.
    std::vector<size_t> old_of;
    for (size_t i = 0; i < n; ++i) {
      if (i < start || i >= end) old_of.push_back(i);
      else if (i == start) old_of.push_back(start);
    }
    auto in_span = [&](size_t one_based) {
      return one_based > start && one_based <= end;
    };
    for (size_t j = 0; j < c.nodes.size(); ++j) {
      if (j == start) continue;
      const size_t old_head = t.nodes[old_of[j]].head;
      const size_t new_head = c.nodes[j].head;
      if (old_head == 0) {
        CHECK(new_head == 0);
      } else if (in_span(old_head)) {
        CHECK(new_head == start + 1);
      } else {
        CHECK(old_of[new_head - 1] == old_head - 1);
      }
    }
    // The merged node hangs where some span node left the span.
    const size_t h = c.nodes[start].head;
    bool found = false;
    for (size_t i = start; i < end; ++i) {
      const size_t oh = t.nodes[i].head;
      if (in_span(oh)) continue;
      if (oh == 0 ? h == 0 : (h != 0 && old_of[h - 1] == oh - 1)) found = true;
    }
    CHECK(found);
  }
}
