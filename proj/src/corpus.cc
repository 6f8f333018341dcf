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

#include "targetner/corpus.h"

#include <algorithm>
#include <fstream>
#include <iostream>

#include "targetner/errors.h"
#include "targetner/normalizer.h"
#include "targetner/text.h"

namespace targetner {

namespace {

size_t parse_offset(const std::string& s, const std::string& source,
                    size_t line) {
  if (s.empty() || !is_all_digits(s)) {
    throw ParseError(source, line, "bad span offset '" + s + "'");
  }
  return std::stoull(s);
}

std::string canonical_whitespace(std::string_view text) {
  std::string out(text);
  for (char& ch : out) {
    if (ch == '\t' || ch == '\n' || ch == '\r') ch = ' ';
  }
  return out;
}

}  // namespace

void validate_tweet(const Tweet& tweet) {
  if (tweet.year < 1000 || tweet.year > 9999) {
    throw ValidationError("tweet " + tweet.id + ": year " +
                          std::to_string(tweet.year) + " is not 4-digit");
  }
  const std::u32string text = decode_utf8(tweet.text);
  std::vector<GoldSpan> spans = tweet.gold;
  std::sort(spans.begin(), spans.end(),
            [](const GoldSpan& a, const GoldSpan& b) {
              return a.start < b.start;
            });
  for (size_t i = 0; i < spans.size(); ++i) {
    const GoldSpan& g = spans[i];
    if (g.end <= g.start) {
      throw ValidationError("tweet " + tweet.id + ": span [" +
                            std::to_string(g.start) + "," +
                            std::to_string(g.end) + ") is empty or reversed");
    }
    if (g.end > text.size()) {
      throw ValidationError("tweet " + tweet.id + ": span [" +
                            std::to_string(g.start) + "," +
                            std::to_string(g.end) + ") exceeds text length " +
                            std::to_string(text.size()));
    }
    if (std::all_of(text.begin() + g.start, text.begin() + g.end, is_space)) {
      throw ValidationError("tweet " + tweet.id + ": span [" +
                            std::to_string(g.start) + "," +
                            std::to_string(g.end) + ") is all whitespace");
    }
    if (i > 0 && spans[i - 1].end > g.start) {
      throw ValidationError("tweet " + tweet.id + ": overlapping gold spans");
    }
    if (g.canonical_title.empty()) {
      throw ValidationError("tweet " + tweet.id + ": span without a title");
    }
  }
}

std::vector<Tweet> read_corpus(std::istream& in, const std::string& source) {
  std::vector<Tweet> tweets;
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (trim(raw).empty()) continue;
    const std::string line = sanitize_utf8(raw);
    const std::vector<std::string> fields = split(line, '\t');
    if (fields.size() < 3 || fields.size() > 4) {
      throw ParseError(source, line_no,
                       "expected 3 or 4 tab-separated fields, got " +
                           std::to_string(fields.size()));
    }
    Tweet t;
    t.id = std::string(trim(fields[0]));
    if (t.id.empty()) throw ParseError(source, line_no, "empty tweet id");
    const std::string year(trim(fields[1]));
    if (year.size() != 4 || !is_all_digits(year)) {
      throw ParseError(source, line_no, "bad year '" + fields[1] + "'");
    }
    t.year = std::stoi(year);
    t.text = fields[2];
    if (fields.size() == 4 && !trim(fields[3]).empty()) {
      for (const std::string& span : split(trim(fields[3]), ';')) {
        if (span.empty()) continue;
        const std::vector<std::string> parts = split(span, ',');
        if (parts.size() != 3) {
          throw ParseError(source, line_no, "bad span '" + span + "'");
        }
        GoldSpan g;
        g.start = parse_offset(parts[0], source, line_no);
        g.end = parse_offset(parts[1], source, line_no);
        try {
          g.canonical_title = url_decode(parts[2]);
        } catch (const ValidationError& e) {
          throw ParseError(source, line_no, e.what());
        }
        t.gold.push_back(std::move(g));
      }
    }
    std::sort(t.gold.begin(), t.gold.end(),
              [](const GoldSpan& a, const GoldSpan& b) {
                return a.start < b.start;
              });
    validate_tweet(t);
    tweets.push_back(std::move(t));
  }
  return tweets;
}

std::vector<Tweet> load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open corpus file '" + path + "'");
  return read_corpus(in, path);
}

void write_corpus(const std::vector<Tweet>& tweets, std::ostream& out) {
  for (const Tweet& t : tweets) {
    out << t.id << '\t' << t.year << '\t' << canonical_whitespace(t.text)
        << '\t';
    for (size_t i = 0; i < t.gold.size(); ++i) {
      if (i) out << ';';
      out << t.gold[i].start << ',' << t.gold[i].end << ','
          << url_encode(t.gold[i].canonical_title);
    }
    out << '\n';
  }
}

void save_corpus(const std::vector<Tweet>& tweets, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write corpus file '" + path + "'");
  write_corpus(tweets, out);
}

Tweet tweet_from_markup(std::string id, int year, std::string_view marked) {
  Tweet t;
  t.id = std::move(id);
  t.year = year;
  size_t cp = 0;
  size_t pos = 0;
  while (pos < marked.size()) {
    const size_t open = marked.find("[[", pos);
    const std::string_view plain = marked.substr(
        pos, open == std::string_view::npos ? std::string_view::npos
                                            : open - pos);
    t.text.append(plain);
    cp += utf8_length(plain);
    if (open == std::string_view::npos) break;
    const size_t close = marked.find("]]", open);
    const size_t bar = marked.find('|', open);
    if (close == std::string_view::npos || bar == std::string_view::npos ||
        bar > close) {
      throw ValidationError("tweet " + t.id + ": unbalanced markup");
    }
    const std::string_view surface = marked.substr(open + 2, bar - open - 2);
    const std::string_view title = marked.substr(bar + 1, close - bar - 1);
    GoldSpan g;
    g.start = cp;
    t.text.append(surface);
    cp += utf8_length(surface);
    g.end = cp;
    g.canonical_title = std::string(trim(title));
    t.gold.push_back(std::move(g));
    pos = close + 2;
  }
  validate_tweet(t);
  return t;
}

DatasetSplit split_by_movie(const std::vector<Tweet>& tweets,
                            const std::set<std::string>& train_titles,
                            const std::set<std::string>& eval_ids) {
  DatasetSplit split;
  bool next_empty_to_seen = true;
  for (const Tweet& t : tweets) {
    size_t seen = 0;
    for (const GoldSpan& g : t.gold) seen += train_titles.count(g.canonical_title);
    const size_t total = t.gold.size();
    if (!eval_ids.count(t.id)) {
      if (seen == total) {
        split.train.push_back(t);
      } else {
        split.excluded.emplace_back(t, "training tweet with a held-out title");
      }
      continue;
    }
    if (total == 0) {
      // Entity-free evaluation tweets alternate so both sets see them.
      (next_empty_to_seen ? split.eval_seen : split.eval_unseen).push_back(t);
      next_empty_to_seen = !next_empty_to_seen;
    } else if (seen == total) {
      split.eval_seen.push_back(t);
    } else if (seen == 0) {
      split.eval_unseen.push_back(t);
    } else {
      split.excluded.emplace_back(t, "mixes seen and unseen titles");
    }
  }
  return split;
}

std::set<std::string> titles_of(const std::vector<Tweet>& tweets) {
  std::set<std::string> out;
  for (const Tweet& t : tweets) {
    for (const GoldSpan& g : t.gold) out.insert(g.canonical_title);
  }
  return out;
}

std::vector<TokenSpan> project_gold(const Tweet& tweet,
                                    const NormalizedTweet& norm,
                                    std::vector<size_t>* lost) {
  if (norm.source_id != tweet.id) {
    throw ContractViolation("project_gold: normalized tweet '" +
                            norm.source_id + "' does not derive from '" +
                            tweet.id + "'");
  }
  const std::u32string text = decode_utf8(tweet.text);
  for (const Token& tok : norm.tokens) {
    if (tok.origin && tok.origin->end > text.size()) {
      throw ContractViolation("project_gold: token '" + tok.surface +
                              "' lies outside tweet " + tweet.id);
    }
  }

  std::vector<TokenSpan> out;
  out.reserve(tweet.gold.size());
  for (size_t gi = 0; gi < tweet.gold.size(); ++gi) {
    const GoldSpan& g = tweet.gold[gi];
    size_t first = norm.tokens.size(), last = 0;
    for (size_t i = 0; i < norm.tokens.size(); ++i) {
      const auto& origin = norm.tokens[i].origin;
      if (!origin) continue;
      size_t start = origin->start;
      // A gold span may begin after the '#' of an annotated hashtag.
      if (start + 1 == g.start && text[start] == '#') ++start;
      if (start >= g.start && origin->end <= g.end) {
        first = std::min(first, i);
        last = std::max(last, i);
      }
    }
    if (first == norm.tokens.size()) {
      out.push_back(TokenSpan{});
      if (lost) lost->push_back(gi);
    } else {
      out.push_back(TokenSpan{first, last + 1});
    }
  }
  return out;
}

}  // namespace targetner
