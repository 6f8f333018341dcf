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


#include "support.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace targetner::testing {

std::string fixture(const std::string& name) {
  return std::string(TARGETNER_FIXTURES) + "/" + name;
}

TempDir::TempDir() {
  std::random_device rd;
  std::mt19937_64 gen(rd());
  const auto base = std::filesystem::temp_directory_path();
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto candidate = base / ("targetner-test-" + std::to_string(gen()));
    if (std::filesystem::create_directory(candidate)) {
      path_ = candidate.string();
      return;
    }
  }
  throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string TempDir::file(const std::string& name) const {
  return path_ + "/" + name;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const SynthCorpus& desk_corpus() {
  static const SynthCorpus corpus = generate_desk_corpus();
  return corpus;
}

namespace {

const std::vector<std::string>& word_pool() {
  static const std::vector<std::string> pool = {
      "lord",  "of",    "rings", "dark", "night", "rises", "frozen", "heat",
      "in",    "love",  "star",  "wars", "king",  "lion",  "return", "city",
      "angel", "ride",  "along", "her",  "day",   "after", "big",    "sky"};
  return pool;
}

}  // namespace

std::string random_title(std::mt19937& rng) {
  const auto& pool = word_pool();
  std::uniform_int_distribution<size_t> word(0, pool.size() - 1);
  std::uniform_int_distribution<int> len(1, 4);
  std::uniform_int_distribution<int> roll(0, 9);
  auto words = [&](int n) {
    std::string out;
    for (int i = 0; i < n; ++i) {
      if (i) out += ' ';
      out += pool[word(rng)];
    }
    return out;
  };
  std::string title = words(len(rng));
  const int r = roll(rng);
  if (r == 0) title += " " + std::to_string(2 + roll(rng) % 3);
  if (r == 1) title += " II";
  if (r <= 3) title += ": " + words(len(rng));
  if (r == 4) title = "The " + title;
  return title;
}

std::vector<std::string> random_query(std::mt19937& rng,
                                      const std::vector<std::string>& titles) {
  const auto& pool = word_pool();
  std::uniform_int_distribution<size_t> title(0, titles.size() - 1);
  std::uniform_int_distribution<size_t> word(0, pool.size() - 1);
  std::uniform_int_distribution<int> roll(0, 9);
  std::vector<std::string> out;
  const int pieces = 1 + roll(rng) % 4;
  for (int p = 0; p < pieces; ++p) {
    if (roll(rng) < 6) {
      std::istringstream in(titles[title(rng)]);
      std::string tok;
      const int cut = roll(rng) < 3 ? 1 + roll(rng) % 3 : 99;
      for (int i = 0; i < cut && in >> tok; ++i) {
        if (tok.back() == ':') tok.pop_back();
        out.push_back(tok);
      }
    } else {
      out.push_back(pool[word(rng)]);
    }
  }
  for (std::string& tok : out) {
    const int r = roll(rng);
    if (r == 0) {
      for (char& ch : tok) ch = static_cast<char>(toupper(ch));
    } else if (r == 1) {
      tok[0] = static_cast<char>(toupper(tok[0]));
    } else if (r == 2) {
      tok = "#" + tok;
    }
  }
  return out;
}

}  // namespace targetner::testing
