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
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "support.h"
#include "targetner/corpus.h"
#include "targetner/errors.h"
#include "targetner/normalizer.h"

using namespace targetner;

namespace {

std::vector<Tweet> parse(const std::string& text) {
  std::istringstream in(text);
  return read_corpus(in, "mem.tsv");
}

// Index of the first token whose surface equals `surface`.
size_t token_index(const NormalizedTweet& norm, const std::string& surface) {
  for (size_t i = 0; i < norm.tokens.size(); ++i) {
    if (norm.tokens[i].surface == surface) return i;
  }
  return norm.tokens.size();
}

}  // namespace

TEST_CASE("read_corpus parses records and gold spans") {
  const auto tweets = parse(
      "t1\t2014\tsaw Frozen today\t4,10,Frozen\n"
      "\n"
      "t2\t2013\tno movie here\t\n"
      "t3\t2014\tFrozen and Her\t11,14,Her;0,6,Frozen\n");
  REQUIRE(tweets.size() == 3);
  CHECK(tweets[0].id == "t1");
  CHECK(tweets[0].year == 2014);
  CHECK(tweets[0].gold == std::vector<GoldSpan>{{4, 10, "Frozen"}});
  CHECK(tweets[1].gold.empty());
  // Spans come back sorted.
  CHECK(tweets[2].gold[0].canonical_title == "Frozen");
  CHECK(tweets[2].gold[1].canonical_title == "Her");
}

TEST_CASE("empty corpus file gives no tweets") {
  CHECK(parse("").empty());
}

TEST_CASE("malformed line names the line number") {
  try {
    parse("t1\t2014\tok\t\nbroken line without tabs\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("mem.tsv:2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("t1\t14\ttext\t\n"), ParseError);
  CHECK_THROWS_AS(parse("t1\t2014\ttext\t1,x,T\n"), ParseError);
}

TEST_CASE("span errors name the tweet") {
  try {
    parse("bad7\t2014\tabc\t2,2,T\n");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("bad7") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("t\t2014\tabc\t3,2,T\n"), ValidationError);
  CHECK_THROWS_AS(parse("t\t2014\tabc\t0,9,T\n"), ValidationError);
  CHECK_THROWS_AS(parse("t\t2014\tabcdef\t0,3,A;2,5,B\n"), ValidationError);
}

TEST_CASE("offsets count code points and invalid bytes are dropped") {
  const auto tweets = parse("t1\t2014\tcaf\xc3\xa9 Am\xc3\xa9lie\xff\t5,11,Am%C3%A9lie\n");
  REQUIRE(tweets.size() == 1);
  CHECK(tweets[0].text == "caf\xc3\xa9 Am\xc3\xa9lie");
  CHECK(tweets[0].gold[0].canonical_title == "Am\xc3\xa9lie");
}

TEST_CASE("write_corpus round-trips") {
  std::vector<Tweet> tweets = {
      tweet_from_markup("a", 2014, "I saw [[The Hobbit: 2|The Hobbit 2]] ; yes"),
      tweet_from_markup("b", 2013, "nothing"),
      tweet_from_markup("c", 2014, "[[Her|Her]] and [[12 Years a Slave|12 Years a Slave]]"),
  };
  std::ostringstream out;
  write_corpus(tweets, out);
  CHECK(parse(out.str()) == tweets);
}

TEST_CASE("tweet_from_markup records code-point spans") {
  const Tweet t = tweet_from_markup("x", 2014, "Amélie [[Frozen|Frozen]]!");
  CHECK(t.text == "Amélie Frozen!");
  REQUIRE(t.gold.size() == 1);
  CHECK(t.gold[0].start == 7);
  CHECK(t.gold[0].end == 13);
  CHECK_THROWS_AS(tweet_from_markup("y", 2014, "[[open"), ValidationError);
}

TEST_CASE("split_by_movie: one title everywhere leaves eval_unseen empty") {
  std::vector<Tweet> tweets;
  std::set<std::string> eval_ids;
  for (int i = 0; i < 6; ++i) {
    tweets.push_back(tweet_from_markup("t" + std::to_string(i), 2014, "[[Frozen|Frozen]]"));
    if (i % 2) eval_ids.insert(tweets.back().id);
  }
  const DatasetSplit s = split_by_movie(tweets, {"Frozen"}, eval_ids);
  CHECK(s.train.size() == 3);
  CHECK(s.eval_seen.size() == 3);
  CHECK(s.eval_unseen.empty());
  CHECK(s.excluded.empty());
}

TEST_CASE("split_by_movie partition matches a per-tweet oracle") {
  std::mt19937 gen(11);
  const std::vector<std::string> kGold[4] = {
      {}, {"A"}, {"B"}, {"A", "B"}};
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Tweet> tweets;
    std::set<std::string> eval_ids;
    for (int i = 0; i < 10; ++i) {
      const auto& titles = kGold[gen() % 4];
      std::string marked;
      for (const std::string& t : titles) marked += "[[" + t + "|" + t + "]] ";
      marked += "x";
      tweets.push_back(tweet_from_markup("t" + std::to_string(i), 2014, marked));
      if (gen() % 2) eval_ids.insert(tweets.back().id);
    }
    const DatasetSplit s = split_by_movie(tweets, {"A"}, eval_ids);

    std::map<std::string, std::string> where;
    for (const Tweet& t : s.train) where[t.id] += "train";
    for (const Tweet& t : s.eval_seen) where[t.id] += "seen";
    for (const Tweet& t : s.eval_unseen) where[t.id] += "unseen";
    for (const auto& [t, why] : s.excluded) where[t.id] += "excluded";
    REQUIRE(where.size() == tweets.size());

    int empty_seen = 0, empty_unseen = 0;
    for (const Tweet& t : tweets) {
      bool has_a = false, has_b = false;
      for (const GoldSpan& g : t.gold) (g.canonical_title == "A" ? has_a : has_b) = true;
      const std::string& got = where[t.id];
      if (!eval_ids.count(t.id)) {
        CHECK(got == (has_b ? "excluded" : "train"));
      } else if (!has_a && !has_b) {
        CHECK((got == "seen" || got == "unseen"));
        (got == "seen" ? empty_seen : empty_unseen)++;
      } else if (has_a && has_b) {
        CHECK(got == "excluded");
      } else {
        CHECK(got == (has_a ? "seen" : "unseen"));
      }
    }
    CHECK(std::abs(empty_seen - empty_unseen) <= 1);
  }
}

TEST_CASE("project_gold: dropped article before a kept hashtag") {
  const Tweet t = tweet_from_markup("h", 2014, "I saw [[the #Hobbit|The Hobbit]] today");
  const NormalizedTweet norm = normalize(t, {"hobbit"});
  const auto spans = project_gold(t, norm);
  REQUIRE(spans.size() == 1);
  const size_t i = token_index(norm, "Hobbit");
  REQUIRE(i < norm.tokens.size());
  CHECK(spans[0] == TokenSpan{i, i + 1});
}

TEST_CASE("project_gold: article removed inside a title") {
  const Tweet t = tweet_from_markup("s", 2014, "loved [[12 Years a Slave|12 Years a Slave]] so much");
  const NormalizedTweet norm = normalize(t, {});
  const auto spans = project_gold(t, norm);
  REQUIRE(spans.size() == 1);
  const size_t i = token_index(norm, "12");
  CHECK(spans[0] == TokenSpan{i, i + 3});
  std::vector<std::string> got;
  for (size_t k = spans[0].start; k < spans[0].end; ++k) got.push_back(norm.tokens[k].surface);
  CHECK(got == std::vector<std::string>{"12", "Years", "Slave"});
}

TEST_CASE("project_gold: span with no surviving tokens is empty and reported") {
  const Tweet t = tweet_from_markup("u", 2014, "see [[http://t.co/abcdef|Some Movie]] now");
  const NormalizedTweet norm = normalize(t, {});
  std::vector<size_t> lost;
  const auto spans = project_gold(t, norm, &lost);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].empty());
  CHECK(lost == std::vector<size_t>{0});
}

TEST_CASE("project_gold rejects a foreign normalized tweet") {
  const Tweet a = tweet_from_markup("a", 2014, "[[Frozen|Frozen]]");
  const Tweet b = tweet_from_markup("b", 2014, "[[Frozen|Frozen]]");
  CHECK_THROWS_AS(project_gold(a, normalize(b, {})), ContractViolation);
}

TEST_CASE("desk corpus: at least 71% of tweets carry a gold span") {
  const auto& corpus = testing::desk_corpus();
  size_t with_gold = 0;
  for (const Tweet& t : corpus.tweets) with_gold += !t.gold.empty();
  CHECK(corpus.tweets.size() == 1096);
  CHECK(static_cast<double>(with_gold) / corpus.tweets.size() >= 0.71);
}
