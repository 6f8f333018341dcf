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


#ifndef TARGETNER_TESTS_SUPPORT_H_
#define TARGETNER_TESTS_SUPPORT_H_

#include <random>
#include <string>
#include <vector>

#include "targetner/synthetic.h"

namespace targetner::testing {

// Path of a file under tests/fixtures.
std::string fixture(const std::string& name);

// Fresh directory under the system temp directory, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }
  std::string file(const std::string& name) const;

 private:
  std::string path_;
};

void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

// Default-parameter desk corpus, generated once per process.
const SynthCorpus& desk_corpus();

// Random title over a small word pool so titles share prefixes and nest;
// some carry a colon subtitle or a trailing numeral.
std::string random_title(std::mt19937& rng);
// Random query: title fragments mixed with pool words, in random case and
// sometimes '#'-prefixed.
std::vector<std::string> random_query(std::mt19937& rng,
                                      const std::vector<std::string>& titles);

}  // namespace targetner::testing

#endif  // TARGETNER_TESTS_SUPPORT_H_
