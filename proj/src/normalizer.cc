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

#include "targetner/normalizer.h"

#include <algorithm>
#include <limits>

#include "targetner/config.h"
#include "targetner/errors.h"
#include "targetner/text.h"

namespace targetner {

namespace {

const char* kDefaultUrlRegex = R"(^(https?://|www\.)\S*$)";

bool is_tag_char(char32_t c) { return is_alnum(c) || c == '_'; }
bool is_apostrophe(char32_t c) { return c == '\'' || c == 0x2019; }

bool starts_with_icase(const std::u32string& text, size_t pos, size_t end,
                       std::string_view prefix) {
  if (pos + prefix.size() > end) return false;
  for (size_t k = 0; k < prefix.size(); ++k) {
    if (to_lower(text[pos + k]) != static_cast<char32_t>(prefix[k])) {
      return false;
    }
  }
  return true;
}

bool url_starts_at(const std::u32string& text, size_t pos, size_t end) {
  return starts_with_icase(text, pos, end, "http://") ||
         starts_with_icase(text, pos, end, "https://") ||
         starts_with_icase(text, pos, end, "www.");
}

// Length of a placeholder literal at `pos`, or 0.
size_t placeholder_at(const std::u32string& text, size_t pos, size_t end,
                      TokenKind* kind) {
  for (auto [literal, k] : {std::pair{kUserPlaceholder,
                                      TokenKind::kUserPlaceholder},
                            std::pair{kMoviePlaceholder,
                                      TokenKind::kMoviePlaceholder}}) {
    std::string lower = to_lower(literal);
    if (starts_with_icase(text, pos, end, lower)) {
      const size_t after = pos + literal.size();
      if (after == end || !is_tag_char(text[after])) {
        *kind = k;
        return literal.size();
      }
    }
  }
  return 0;
}

bool tag_starts_at(const std::u32string& text, size_t pos, size_t end) {
  return (text[pos] == '#' || text[pos] == '@') && pos + 1 < end &&
         is_tag_char(text[pos + 1]);
}

// Cut points (indices into body, excluding 0 and size) of camel-case and
// digit boundaries.
std::vector<bool> camel_boundaries(const std::u32string& body) {
  std::vector<bool> cut(body.size() + 1, false);
  cut[0] = cut[body.size()] = true;
  for (size_t i = 1; i < body.size(); ++i) {
    const char32_t a = body[i - 1], b = body[i];
    if ((is_lower(a) || is_digit(a)) && is_upper(b)) cut[i] = true;
    if (is_letter(a) && is_digit(b)) cut[i] = true;
    if (is_digit(a) && is_letter(b)) cut[i] = true;
    if (is_upper(a) && is_upper(b) && i + 1 < body.size() &&
        is_lower(body[i + 1])) {
      cut[i] = true;
    }
  }
  return cut;
}

// Minimum-count segmentation where `allowed(i, j)` says whether body[i, j) may
// be one segment. Returns cut positions including 0 and n, or empty when no
// cover exists. Among minimum covers the one with the longest first segment
// wins, recursively.
template <typename Allowed>
std::vector<size_t> min_cover(size_t n, Allowed allowed) {
  constexpr size_t kInf = std::numeric_limits<size_t>::max();
  std::vector<size_t> best(n + 1, kInf);
  best[n] = 0;
  for (size_t i = n; i-- > 0;) {
    for (size_t j = n; j > i; --j) {
      if (best[j] != kInf && best[j] + 1 < best[i] && allowed(i, j)) {
        best[i] = best[j] + 1;
      }
    }
  }
  if (best[0] == kInf) return {};
  std::vector<size_t> cuts{0};
  size_t i = 0;
  while (i < n) {
    for (size_t j = n; j > i; --j) {
      if (best[j] != kInf && best[j] + 1 == best[i] && allowed(i, j)) {
        cuts.push_back(j);
        i = j;
        break;
      }
    }
  }
  return cuts;
}

std::vector<size_t> segment_cuts(const std::u32string& body,
                                 const Vocabulary& vocab) {
  const size_t n = body.size();
  if (n == 0) return {0};
  std::u32string lower(body);
  for (char32_t& c : lower) c = to_lower(c);
  std::vector<std::vector<signed char>> memo(n, std::vector<signed char>(n + 1, -1));
  auto in_vocab = [&](size_t i, size_t j) {
    signed char& m = memo[i][j];
    if (m < 0) {
      m = vocab.count(encode_utf8(std::u32string_view(lower).substr(i, j - i)))
              ? 1
              : 0;
    }
    return m == 1;
  };
  std::vector<size_t> cuts = min_cover(n, in_vocab);
  if (!cuts.empty()) return cuts;

  const std::vector<bool> camel = camel_boundaries(body);
  auto is_camel_run = [&](size_t i, size_t j) {
    if (!camel[i] || !camel[j]) return false;
    for (size_t k = i + 1; k < j; ++k) {
      if (camel[k]) return false;
    }
    return true;
  };
  return min_cover(n, [&](size_t i, size_t j) {
    return in_vocab(i, j) || is_camel_run(i, j);
  });
}

}  // namespace

const char* token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::kWord: return "word";
    case TokenKind::kNumber: return "number";
    case TokenKind::kHashtag: return "hashtag";
    case TokenKind::kMention: return "mention";
    case TokenKind::kUrl: return "url";
    case TokenKind::kPunctuation: return "punctuation";
    case TokenKind::kUserPlaceholder: return "user_placeholder";
    case TokenKind::kMoviePlaceholder: return "movie_placeholder";
  }
  return "?";
}

NormalizerConfig::NormalizerConfig()
    : articles{"a", "an", "the"},
      degree_adverbs{"so",    "soo",        "sooo",    "soooo",
                     "very",  "really",     "too",     "extremely",
                     "super", "totally",    "pretty",  "quite",
                     "truly", "incredibly", "absolutely"} {
  set_url_regex(kDefaultUrlRegex);
}

NormalizerConfig NormalizerConfig::from_config(const Config& cfg) {
  NormalizerConfig out;
  auto to_set = [](const std::vector<std::string>& v) {
    std::set<std::string> s;
    for (const std::string& w : v) s.insert(to_lower(w));
    return s;
  };
  if (cfg.get("articles")) out.articles = to_set(cfg.get_list("articles", {}));
  if (cfg.get("degree_adverbs")) {
    out.degree_adverbs = to_set(cfg.get_list("degree_adverbs", {}));
  }
  if (auto re = cfg.get("url_regex")) out.set_url_regex(*re);
  return out;
}

void NormalizerConfig::set_url_regex(const std::string& pattern) {
  try {
    url_pattern_ = std::regex(pattern, std::regex::ECMAScript |
                                           std::regex::icase |
                                           std::regex::optimize);
  } catch (const std::regex_error& e) {
    throw ConfigError("url_regex: invalid pattern '" + pattern +
                      "': " + e.what());
  }
  url_regex_ = pattern;
}

bool NormalizerConfig::is_url(const std::string& surface) const {
  return std::regex_search(surface, url_pattern_);
}

std::vector<Token> tokenize(std::string_view text) {
  const std::u32string cps = decode_utf8(text);
  const size_t n = cps.size();
  std::vector<Token> out;
  auto emit = [&](size_t b, size_t e, TokenKind kind) {
    out.push_back(Token{encode_utf8(std::u32string_view(cps).substr(b, e - b)),
                        kind, CharRange{b, e}});
  };

  size_t i = 0;
  while (i < n) {
    if (is_space(cps[i])) {
      ++i;
      continue;
    }
    size_t end = i;
    while (end < n && !is_space(cps[end])) ++end;

    size_t j = i;
    while (j < end) {
      if (url_starts_at(cps, j, end)) {
        emit(j, end, TokenKind::kUrl);
        j = end;
        break;
      }
      TokenKind placeholder;
      if (size_t len = placeholder_at(cps, j, end, &placeholder)) {
        out.push_back(Token{placeholder == TokenKind::kUserPlaceholder
                                ? std::string(kUserPlaceholder)
                                : std::string(kMoviePlaceholder),
                            placeholder, CharRange{j, j + len}});
        j += len;
        continue;
      }
      const char32_t c = cps[j];
      size_t k = j + 1;
      if (tag_starts_at(cps, j, end)) {
        while (k < end && is_tag_char(cps[k])) ++k;
        emit(j, k, c == '#' ? TokenKind::kHashtag : TokenKind::kMention);
      } else if (is_alnum(c)) {
        bool digits = is_digit(c);
        while (k < end && (is_alnum(cps[k]) ||
                           (is_apostrophe(cps[k]) && k + 1 < end &&
                            is_alnum(cps[k + 1])))) {
          digits &= is_digit(cps[k]);
          ++k;
        }
        emit(j, k, digits ? TokenKind::kNumber : TokenKind::kWord);
      } else if (is_punctuation(c)) {
        TokenKind unused;
        while (k < end && is_punctuation(cps[k]) && !tag_starts_at(cps, k, end) &&
               !url_starts_at(cps, k, end) &&
               !placeholder_at(cps, k, end, &unused)) {
          ++k;
        }
        emit(j, k, TokenKind::kPunctuation);
      } else {
        while (k < end && !is_alnum(cps[k]) && !is_punctuation(cps[k])) ++k;
        emit(j, k, TokenKind::kWord);
      }
      j = k;
    }
    i = end;
  }
  return out;
}

std::vector<Token> strip_noise(const std::vector<Token>& tokens,
                               const NormalizerConfig& cfg) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::kUrl || cfg.is_url(t.surface)) continue;
    if (t.kind == TokenKind::kPunctuation || is_all_punctuation(t.surface)) {
      continue;
    }
    if (t.kind == TokenKind::kWord) {
      if (cfg.articles.count(to_lower(t.surface))) continue;
    }
    out.push_back(t);
  }
  return out;
}

std::vector<Token> rewrite_social(const std::vector<Token>& tokens) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.kind == TokenKind::kWord && to_lower(t.surface) == "rt" &&
        i + 1 < tokens.size() && tokens[i + 1].kind == TokenKind::kMention) {
      ++i;
      continue;
    }
    if (t.kind == TokenKind::kMention) {
      out.push_back(Token{std::string(kUserPlaceholder),
                          TokenKind::kUserPlaceholder, t.origin});
      continue;
    }
    out.push_back(t);
  }
  return out;
}

HashtagDisposition hashtag_disposition(const std::vector<Token>& tokens,
                                       size_t index,
                                       const NormalizerConfig& cfg) {
  if (index >= tokens.size()) {
    throw ContractViolation("hashtag_disposition: index " +
                            std::to_string(index) + " out of bounds");
  }
  if (tokens[index].kind != TokenKind::kHashtag) {
    throw ContractViolation("hashtag_disposition: token '" +
                            tokens[index].surface + "' is not a hashtag");
  }
  size_t block = tokens.size();
  while (block > 0 && tokens[block - 1].kind == TokenKind::kHashtag) --block;
  if (index < block) return HashtagDisposition::kSegment;
  if (index == block && block > 0 &&
      cfg.degree_adverbs.count(to_lower(tokens[block - 1].surface))) {
    return HashtagDisposition::kSegment;
  }
  return HashtagDisposition::kRemove;
}

std::vector<std::string> segment_hashtag(std::string_view hashtag,
                                         const Vocabulary& vocab) {
  std::string_view body = hashtag;
  if (!body.empty() && body.front() == '#') body.remove_prefix(1);
  const std::u32string cps = decode_utf8(body);
  if (cps.empty()) return {};
  const std::vector<size_t> cuts = segment_cuts(cps, vocab);
  std::vector<std::string> out;
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    out.push_back(encode_utf8(
        std::u32string_view(cps).substr(cuts[k], cuts[k + 1] - cuts[k])));
  }
  return out;
}

NormalizedTweet normalize(const Tweet& tweet, const Vocabulary& vocab,
                          const NormalizerConfig& cfg) {
  NormalizedTweet norm;
  norm.source_id = tweet.id;
  const std::vector<Token> raw = tokenize(tweet.text);
  norm.original_count = raw.size();
  const std::vector<Token> social = rewrite_social(strip_noise(raw, cfg));

  size_t dropped = raw.size() - social.size();
  for (size_t i = 0; i < social.size(); ++i) {
    const Token& t = social[i];
    if (t.kind != TokenKind::kHashtag) {
      norm.tokens.push_back(t);
      continue;
    }
    if (hashtag_disposition(social, i, cfg) == HashtagDisposition::kRemove) {
      ++dropped;
      continue;
    }
    const std::u32string body = decode_utf8(t.surface).substr(1);
    const std::vector<size_t> cuts = segment_cuts(body, vocab);
    const size_t base = t.origin->start + 1;
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
      const size_t b = k == 0 ? t.origin->start : base + cuts[k];
      norm.tokens.push_back(Token{
          encode_utf8(std::u32string_view(body).substr(cuts[k],
                                                       cuts[k + 1] - cuts[k])),
          TokenKind::kHashtag, CharRange{b, base + cuts[k + 1]}});
    }
  }
  norm.removed_count = dropped;
  return norm;
}

std::string render_normalized(const NormalizedTweet& norm) {
  std::string out;
  for (size_t i = 0; i < norm.tokens.size(); ++i) {
    if (i) out.push_back(' ');
    const Token& t = norm.tokens[i];
    if (t.kind == TokenKind::kHashtag && t.surface.front() != '#') {
      out.push_back('#');
    }
    out.append(t.surface);
  }
  return out;
}

std::string detokenize(const NormalizedTweet& norm) {
  std::vector<std::string> parts;
  parts.reserve(norm.tokens.size());
  for (const Token& t : norm.tokens) parts.push_back(t.surface);
  return join(parts, " ");
}

double token_reduction(const std::vector<NormalizedTweet>& tweets) {
  size_t before = 0, after = 0;
  for (const NormalizedTweet& n : tweets) {
    before += n.original_count;
    after += n.tokens.size();
  }
  return before == 0 ? 0.0 : 1.0 - static_cast<double>(after) / before;
}

}  // namespace targetner
