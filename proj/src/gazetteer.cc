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

#include "targetner/gazetteer.h"

#include <algorithm>
#include <fstream>
#include <iostream>

#include "targetner/errors.h"
#include "targetner/text.h"

namespace targetner {

namespace {

int roman_value(char ch) {
  switch (ch) {
    case 'i': return 1;
    case 'v': return 5;
    case 'x': return 10;
    case 'l': return 50;
    case 'c': return 100;
    case 'd': return 500;
    case 'm': return 1000;
    default: return 0;
  }
}

// Canonical roman numeral for n, lowercase.
std::string to_roman(int n) {
  static const std::pair<int, const char*> kTable[] = {
      {1000, "m"}, {900, "cm"}, {500, "d"}, {400, "cd"}, {100, "c"},
      {90, "xc"},  {50, "l"},   {40, "xl"}, {10, "x"},   {9, "ix"},
      {5, "v"},    {4, "iv"},   {1, "i"}};
  std::string out;
  for (const auto& [value, digits] : kTable) {
    while (n >= value) {
      out += digits;
      n -= value;
    }
  }
  return out;
}

// Splits at the first ':' or spaced dash. Returns false when neither occurs.
bool split_title(std::string_view title, std::string_view* main,
                 std::string_view* sub) {
  size_t pos = title.find(':');
  size_t width = 1;
  if (pos == std::string_view::npos) {
    for (std::string_view dash : {" - ", " – ", " — "}) {
      const size_t p = title.find(dash);
      if (p != std::string_view::npos && p < pos) {
        pos = p;
        width = dash.size();
      }
    }
  }
  if (pos == std::string_view::npos) return false;
  *main = title.substr(0, pos);
  *sub = title.substr(pos + width);
  return true;
}

}  // namespace

const char* match_type_name(MatchType type) {
  switch (type) {
    case MatchType::kFull: return "full";
    case MatchType::kMain: return "main";
    case MatchType::kSub: return "sub";
    case MatchType::kSequel: return "sequel";
  }
  return "?";
}

std::optional<MatchType> parse_match_type(std::string_view name) {
  for (MatchType t : {MatchType::kFull, MatchType::kMain, MatchType::kSub,
                      MatchType::kSequel}) {
    if (name == match_type_name(t)) return t;
  }
  return std::nullopt;
}

std::vector<GazetteerEntry> read_gazetteer(std::istream& in,
                                           const std::string& source) {
  std::vector<GazetteerEntry> entries;
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (trim(raw).empty()) continue;
    const std::string line = sanitize_utf8(raw);
    const std::vector<std::string> fields = split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError(source, line_no,
                       "expected 2 or 3 tab-separated fields, got " +
                           std::to_string(fields.size()));
    }
    GazetteerEntry e;
    e.id = std::string(trim(fields[0]));
    e.title = std::string(trim(fields[1]));
    if (e.id.empty()) throw ParseError(source, line_no, "empty entry id");
    if (e.title.empty()) throw ParseError(source, line_no, "empty title");
    if (fields.size() == 3) {
      const std::string year(trim(fields[2]));
      if (!year.empty()) {
        if (!is_all_digits(year) || year.size() > 4) {
          throw ParseError(source, line_no, "bad year '" + fields[2] + "'");
        }
        e.release_year = std::stoi(year);
      }
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<GazetteerEntry> load_gazetteer(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open gazetteer file '" + path + "'");
  return read_gazetteer(in, path);
}

void write_gazetteer(const std::vector<GazetteerEntry>& entries,
                     std::ostream& out) {
  for (const GazetteerEntry& e : entries) {
    out << e.id << '\t' << e.title << '\t';
    if (e.release_year) out << *e.release_year;
    out << '\n';
  }
}

std::vector<std::string> title_tokens(std::string_view title,
                                      const NormalizerConfig& cfg) {
  std::vector<std::string> out;
  for (const Token& t : strip_noise(tokenize(title), cfg)) {
    std::string key = match_key(t.surface);
    if (t.kind == TokenKind::kMention && key.size() > 1) key.erase(0, 1);
    if (!key.empty()) out.push_back(std::move(key));
  }
  return out;
}

bool is_sequel_numeral(std::string_view token) {
  if (is_all_digits(token)) return true;
  if (token.empty() || token.size() > 15) return false;
  int value = 0;
  for (size_t i = 0; i < token.size(); ++i) {
    const char ch = static_cast<char>(tolower(static_cast<unsigned char>(token[i])));
    const int v = roman_value(ch);
    if (v == 0) return false;
    const int next = i + 1 < token.size()
                         ? roman_value(static_cast<char>(
                               tolower(static_cast<unsigned char>(token[i + 1]))))
                         : 0;
    value += v < next ? -v : v;
  }
  if (value < 2) return false;
  // Reject non-canonical spellings such as "iiii" or "vv".
  return to_roman(value) == to_lower(token);
}

std::vector<TitleVariant> derive_variants(const GazetteerEntry& entry,
                                          const NormalizerConfig& cfg) {
  std::vector<TitleVariant> out;
  auto add = [&](std::vector<std::string> tokens, MatchType type) {
    if (tokens.empty()) return;
    TitleVariant v{entry.id, std::move(tokens), type};
    if (std::find(out.begin(), out.end(), v) == out.end()) {
      out.push_back(std::move(v));
    }
  };

  const std::vector<std::string> full = title_tokens(entry.title, cfg);
  add(full, MatchType::kFull);

  std::string_view main_text, sub_text;
  std::vector<std::string> base = full;
  if (split_title(entry.title, &main_text, &sub_text)) {
    std::vector<std::string> main = title_tokens(main_text, cfg);
    std::vector<std::string> sub = title_tokens(sub_text, cfg);
    if (!main.empty() && !sub.empty()) {
      base = main;
      add(std::move(main), MatchType::kMain);
      add(std::move(sub), MatchType::kSub);
    }
  }
  if (base.size() >= 2 && is_sequel_numeral(base.back())) {
    add(base, MatchType::kSequel);
  }
  return out;
}

std::string match_key(std::string_view token) {
  if (token.size() > 1 && token.front() == '#') token.remove_prefix(1);
  return to_lower(token);
}

GazetteerIndex::GazetteerIndex() : nodes_(1) {}

void GazetteerIndex::add_variant(const TitleVariant& variant) {
  if (variant.tokens.empty()) return;
  uint32_t node = 0;
  for (const std::string& tok : variant.tokens) {
    vocab_.insert(tok);
    auto it = nodes_[node].children.find(tok);
    if (it == nodes_[node].children.end()) {
      const auto next = static_cast<uint32_t>(nodes_.size());
      nodes_[node].children.emplace(tok, next);
      nodes_.emplace_back();
      node = next;
    } else {
      node = it->second;
    }
  }
  IndexedMatch m{variant.entry_id, variant.match_type};
  auto& matches = nodes_[node].matches;
  if (std::find(matches.begin(), matches.end(), m) == matches.end()) {
    matches.push_back(std::move(m));
    ++variant_count_;
  }
}

void GazetteerIndex::add_entry(const GazetteerEntry& entry) {
  entries_[entry.id] = entry;
}

const std::vector<IndexedMatch>* GazetteerIndex::find(
    const std::vector<std::string>& tokens) const {
  uint32_t node = 0;
  for (const std::string& tok : tokens) {
    auto it = nodes_[node].children.find(tok);
    if (it == nodes_[node].children.end()) return nullptr;
    node = it->second;
  }
  return nodes_[node].matches.empty() ? nullptr : &nodes_[node].matches;
}

std::optional<LongestMatch> GazetteerIndex::lookup_longest(
    const std::vector<std::string>& tokens, size_t start) const {
  uint32_t node = 0;
  uint32_t best_node = 0;
  size_t best_len = 0;
  for (size_t i = start; i < tokens.size(); ++i) {
    auto it = nodes_[node].children.find(match_key(tokens[i]));
    if (it == nodes_[node].children.end()) break;
    node = it->second;
    if (!nodes_[node].matches.empty()) {
      best_node = node;
      best_len = i - start + 1;
    }
  }
  if (best_len == 0) return std::nullopt;
  const auto& matches = nodes_[best_node].matches;
  const IndexedMatch& best = *std::min_element(
      matches.begin(), matches.end(),
      [](const IndexedMatch& a, const IndexedMatch& b) {
        if (a.match_type != b.match_type) return a.match_type < b.match_type;
        return a.entry_id < b.entry_id;
      });
  return LongestMatch{best_len, best.entry_id, best.match_type};
}

const GazetteerEntry* GazetteerIndex::entry(const std::string& id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

GazetteerIndex build_index(const std::vector<TitleVariant>& variants) {
  GazetteerIndex index;
  for (const TitleVariant& v : variants) index.add_variant(v);
  return index;
}

GazetteerIndex build_index(const std::vector<GazetteerEntry>& entries,
                           const NormalizerConfig& cfg) {
  GazetteerIndex index;
  for (const GazetteerEntry& e : entries) {
    index.add_entry(e);
    for (const TitleVariant& v : derive_variants(e, cfg)) index.add_variant(v);
  }
  return index;
}

std::optional<LongestMatch> lookup_longest(const GazetteerIndex& index,
                                           const std::vector<std::string>& tokens,
                                           size_t start) {
  return index.lookup_longest(tokens, start);
}

GazetteerStore::GazetteerStore(std::shared_ptr<const GazetteerIndex> index)
    : index_(std::move(index)) {}

std::shared_ptr<const GazetteerIndex> GazetteerStore::current() const {
  std::lock_guard<std::mutex> lock(mu_);
  return index_;
}

void GazetteerStore::publish(std::shared_ptr<const GazetteerIndex> index) {
  std::lock_guard<std::mutex> lock(mu_);
  index_ = std::move(index);
}

std::shared_ptr<const GazetteerIndex> GazetteerStore::reload(
    const std::string& path, const NormalizerConfig& cfg) {
  auto index = std::make_shared<const GazetteerIndex>(
      build_index(load_gazetteer(path), cfg));
  publish(index);
  return index;
}

}  // namespace targetner
