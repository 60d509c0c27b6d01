// Copyright 2026 The agots Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Strict JSON loading of ExperimentConfig. Unknown keys, type mismatches
// and constraint violations raise ConfigError naming the key.

#ifndef AGOTS_CONFIG_H_
#define AGOTS_CONFIG_H_

#include <filesystem>
#include <string>

#include "agots/experiments.h"

namespace agots {

ExperimentConfig config_load(const std::filesystem::path& path);
ExperimentConfig config_parse(const std::string& json_text);

// Resolved config as a JSON document with every field present. Keys and
// number formatting are stable, so the text can be hashed.
std::string config_to_json(const ExperimentConfig& cfg, int indent = 2);

// Help text listing every config key and its default.
std::string config_keys_help();

}  // namespace agots

#endif  // AGOTS_CONFIG_H_
