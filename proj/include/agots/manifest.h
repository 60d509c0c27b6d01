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


// Run manifest written next to every output directory.

#ifndef AGOTS_MANIFEST_H_
#define AGOTS_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace agots {

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(const std::string& bytes);

// ISO-8601 UTC timestamp with second resolution.
std::string utc_timestamp();

struct RunManifest {
  std::string version;
  std::string subcommand;
  // Resolved config as a JSON document.
  std::string config_json;
  std::uint64_t master_seed = 0;
  std::string started_at;
  std::string finished_at;
  // File names relative to the output directory.
  std::vector<std::string> outputs;

  // Digests every output and writes `dir`/manifest.json.
  void write(const std::filesystem::path& dir) const;
};

}  // namespace agots

#endif  // AGOTS_MANIFEST_H_
