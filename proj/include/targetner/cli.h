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


#ifndef TARGETNER_CLI_H_
#define TARGETNER_CLI_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "targetner/classifier.h"
#include "targetner/features.h"
#include "targetner/normalizer.h"

namespace targetner {

class Config;

struct CliPaths {
  std::string corpus;
  std::string gazetteer;
  std::string embeddings;
  std::string parses;
  std::string model;
  std::string report;
  std::string split;
};

// Settings shared by the subcommands. Defaults, then the config file, then
// flags; the seed lives in train.seed.
struct CliConfig {
  CliPaths paths;
  FeatureConfig features;
  TrainParams train;
  NormalizerConfig normalizer;
  size_t jobs = 1;

  // Reads `[paths]` (relative to the file's directory), `features.*`,
  // `train.*`, `collection_year` and the normalizer keys.
  static CliConfig from_config(const Config& cfg, const CliConfig& base);
};

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace targetner

#endif  // TARGETNER_CLI_H_
