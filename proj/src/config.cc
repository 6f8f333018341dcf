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

#include "targetner/config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "targetner/errors.h"
#include "targetner/text.h"

namespace targetner {

namespace {

std::string unquote(std::string_view v) {
  v = trim(v);
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                        (v.front() == '\'' && v.back() == '\''))) {
    return std::string(v.substr(1, v.size() - 2));
  }
  return std::string(v);
}

// Strips TOML-style trailing comments outside of quotes.
std::string strip_comment(const std::string& v) {
  char quote = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    const char ch = v[i];
    if (quote) {
      if (ch == quote) quote = 0;
    } else if (ch == '"' || ch == '\'') {
      quote = ch;
    } else if (ch == '#' && (i == 0 || v[i - 1] == ' ' || v[i - 1] == '\t')) {
      return std::string(trim(std::string_view(v).substr(0, i)));
    }
  }
  return v;
}

}  // namespace

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

Config Config::parse(std::string_view text, const std::string& source) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(source, e.line(), e.message());
  }

  Config cfg;
  cfg.source_ = source;
  cfg.sections_.push_back(Section{});
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      cfg.sections_[0].entries.emplace_back(name,
                                            strip_comment(node.data()));
      continue;
    }
    Section section;
    section.name = unquote(name);
    for (const auto& [key, value] : node) {
      section.entries.emplace_back(key, strip_comment(value.data()));
    }
    cfg.sections_.push_back(std::move(section));
  }
  return cfg;
}

const Config::Section* Config::find_section(std::string_view name) const {
  for (const Section& s : sections_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::optional<std::string> Config::get(std::string_view section,
                                       std::string_view key) const {
  const Section* s = find_section(section);
  if (!s) return std::nullopt;
  for (const auto& [k, v] : s->entries) {
    if (k == key) return unquote(v);
  }
  return std::nullopt;
}

std::optional<std::string> Config::get(std::string_view dotted) const {
  if (auto v = get("", dotted)) return v;
  // Try every split point so section names may themselves contain dots.
  for (size_t pos = dotted.rfind('.'); pos != std::string_view::npos && pos;
       pos = dotted.rfind('.', pos - 1)) {
    if (auto v = get(dotted.substr(0, pos), dotted.substr(pos + 1))) return v;
    if (pos == 0) break;
  }
  return std::nullopt;
}

std::string Config::get_string(std::string_view dotted,
                               std::string fallback) const {
  auto v = get(dotted);
  return v ? *v : std::move(fallback);
}

bool Config::get_bool(std::string_view dotted, bool fallback) const {
  auto v = get(dotted);
  return v ? to_bool(*v, std::string(dotted)) : fallback;
}

long Config::get_int(std::string_view dotted, long fallback) const {
  auto v = get(dotted);
  return v ? to_int(*v, std::string(dotted)) : fallback;
}

double Config::get_double(std::string_view dotted, double fallback) const {
  auto v = get(dotted);
  return v ? to_double(*v, std::string(dotted)) : fallback;
}

std::vector<std::string> Config::get_list(
    std::string_view dotted, std::vector<std::string> fallback) const {
  auto v = get(dotted);
  return v ? to_list(*v) : std::move(fallback);
}

std::vector<std::string> Config::sections() const {
  std::vector<std::string> out;
  for (size_t i = 1; i < sections_.size(); ++i) {
    out.push_back(sections_[i].name);
  }
  return out;
}

std::vector<std::string> Config::keys(std::string_view section) const {
  std::vector<std::string> out;
  if (const Section* s = find_section(section)) {
    for (const auto& kv : s->entries) out.push_back(kv.first);
  }
  return out;
}

bool Config::to_bool(const std::string& value, const std::string& key) {
  const std::string v = to_lower(trim(value));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + value +
                    "'");
}

long Config::to_int(const std::string& value, const std::string& key) {
  const std::string v(trim(value));
  char* end = nullptr;
  errno = 0;
  const long n = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || errno) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + value +
                      "'");
  }
  return n;
}

double Config::to_double(const std::string& value, const std::string& key) {
  const std::string v(trim(value));
  char* end = nullptr;
  errno = 0;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno) {
    throw ConfigError("key '" + key + "': expected a number, got '" + value +
                      "'");
  }
  return d;
}

std::vector<std::string> Config::to_list(const std::string& value) {
  std::string_view v = trim(value);
  if (v.size() >= 2 && v.front() == '[' && v.back() == ']') {
    v = v.substr(1, v.size() - 2);
  }
  std::vector<std::string> out;
  if (trim(v).empty()) return out;
  for (const std::string& item : split(v, ',')) {
    std::string s = unquote(item);
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace targetner
