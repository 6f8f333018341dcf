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

#ifndef TARGETNER_CONFIG_H_
#define TARGETNER_CONFIG_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace targetner {

// Sectioned key-value configuration. The accepted syntax is the common subset
// of INI and TOML: `[section]` headers, `key = value` lines, `#`/`;` comments,
// quoted strings, `true`/`false`, numbers and bracketed lists of strings.
//
// Keys are addressed either as (section, key) or with a dotted path:
// get("features.k") finds a top-level key literally named "features.k" or the
// key "k" in section [features].
class Config {
 public:
  Config() = default;

  static Config load(const std::string& path);
  static Config parse(std::string_view text,
                      const std::string& source = "<config>");

  std::optional<std::string> get(std::string_view section,
                                 std::string_view key) const;
  std::optional<std::string> get(std::string_view dotted) const;

  std::string get_string(std::string_view dotted, std::string fallback) const;
  bool get_bool(std::string_view dotted, bool fallback) const;
  long get_int(std::string_view dotted, long fallback) const;
  double get_double(std::string_view dotted, double fallback) const;
  std::vector<std::string> get_list(std::string_view dotted,
                                    std::vector<std::string> fallback) const;

  // Section names in file order; the unnamed top-level section is excluded.
  std::vector<std::string> sections() const;
  // Keys of one section in file order ("" for top level).
  std::vector<std::string> keys(std::string_view section) const;

  const std::string& source() const { return source_; }

  // Value conversions shared with flag handling.
  static bool to_bool(const std::string& value, const std::string& key);
  static long to_int(const std::string& value, const std::string& key);
  static double to_double(const std::string& value, const std::string& key);
  static std::vector<std::string> to_list(const std::string& value);

 private:
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
  };

  const Section* find_section(std::string_view name) const;

  std::string source_;
  std::vector<Section> sections_;  // sections_[0] is the top level
};

}  // namespace targetner

#endif  // TARGETNER_CONFIG_H_
