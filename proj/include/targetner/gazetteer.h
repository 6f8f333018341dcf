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

#ifndef TARGETNER_GAZETTEER_H_
#define TARGETNER_GAZETTEER_H_

#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "targetner/normalizer.h"

namespace targetner {

// Declaration order is the tie-break precedence at equal match length.
enum class MatchType { kFull = 0, kMain = 1, kSub = 2, kSequel = 3 };

const char* match_type_name(MatchType type);
std::optional<MatchType> parse_match_type(std::string_view name);

struct GazetteerEntry {
  std::string id;
  std::string title;
  std::optional<int> release_year = std::nullopt;

  friend bool operator==(const GazetteerEntry&,
                         const GazetteerEntry&) = default;
};

struct TitleVariant {
  std::string entry_id;
  std::vector<std::string> tokens;  // lowercased, articles removed
  MatchType match_type = MatchType::kFull;

  friend bool operator==(const TitleVariant&, const TitleVariant&) = default;
};

struct IndexedMatch {
  std::string entry_id;
  MatchType match_type;
  friend bool operator==(const IndexedMatch&, const IndexedMatch&) = default;
};

struct LongestMatch {
  size_t length = 0;
  std::string entry_id;
  MatchType match_type = MatchType::kFull;
  friend bool operator==(const LongestMatch&, const LongestMatch&) = default;
};

// TSV rows: `id <TAB> title <TAB> year`, year optional.
std::vector<GazetteerEntry> load_gazetteer(const std::string& path);
std::vector<GazetteerEntry> read_gazetteer(std::istream& in,
                                           const std::string& source);
void write_gazetteer(const std::vector<GazetteerEntry>& entries,
                     std::ostream& out);

// Title text to matching tokens, in the same space the normalizer produces.
std::vector<std::string> title_tokens(std::string_view title,
                                      const NormalizerConfig& cfg = {});

// Arabic integer or a roman numeral of value two or more.
bool is_sequel_numeral(std::string_view token);

// Full, main, sub and sequel variants, deduplicated by (tokens, type).
std::vector<TitleVariant> derive_variants(const GazetteerEntry& entry,
                                          const NormalizerConfig& cfg = {});

// Lowercased with a leading '#' removed; the key every lookup uses.
std::string match_key(std::string_view token);

// Token-level trie over title variants. Children are kept in sorted maps, so
// each edge step costs O(log |W|) for W the set of token types.
class GazetteerIndex {
 public:
  GazetteerIndex();

  void add_variant(const TitleVariant& variant);
  void add_entry(const GazetteerEntry& entry);

  // Exact lookup of a variant token sequence (already lowercased).
  const std::vector<IndexedMatch>* find(
      const std::vector<std::string>& tokens) const;

  // Walks from tokens[start] while edges allow and reports the deepest
  // accepting node. Among that node's matches the best match type wins, then
  // the lowest entry id.
  std::optional<LongestMatch> lookup_longest(
      const std::vector<std::string>& tokens, size_t start) const;

  const Vocabulary& vocab() const { return vocab_; }
  const GazetteerEntry* entry(const std::string& id) const;

  size_t entry_count() const { return entries_.size(); }
  size_t variant_count() const { return variant_count_; }
  size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    std::map<std::string, uint32_t, std::less<>> children;
    std::vector<IndexedMatch> matches;
  };

  std::vector<Node> nodes_;
  Vocabulary vocab_;
  std::unordered_map<std::string, GazetteerEntry> entries_;
  size_t variant_count_ = 0;
};

GazetteerIndex build_index(const std::vector<TitleVariant>& variants);
// Derives every entry's variants and keeps the entries for year lookups.
GazetteerIndex build_index(const std::vector<GazetteerEntry>& entries,
                           const NormalizerConfig& cfg = {});

std::optional<LongestMatch> lookup_longest(const GazetteerIndex& index,
                                           const std::vector<std::string>& tokens,
                                           size_t start);

// Holds the published index. Updates build a new index off to the side and
// swap it in; readers keep whatever snapshot they already hold.
class GazetteerStore {
 public:
  GazetteerStore() = default;
  explicit GazetteerStore(std::shared_ptr<const GazetteerIndex> index);

  std::shared_ptr<const GazetteerIndex> current() const;
  void publish(std::shared_ptr<const GazetteerIndex> index);
  // Re-reads the TSV file and publishes the rebuilt index.
  std::shared_ptr<const GazetteerIndex> reload(const std::string& path,
                                               const NormalizerConfig& cfg = {});

 private:
  mutable std::mutex mu_;
  std::shared_ptr<const GazetteerIndex> index_;
};

}  // namespace targetner

#endif  // TARGETNER_GAZETTEER_H_
