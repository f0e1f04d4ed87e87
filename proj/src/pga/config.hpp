// Copyright 2026 The PGA Authors
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
//
// Run configuration: a flat key=value text file ('#' starts a comment,
// blank lines ignored). Unknown keys are rejected so a typo cannot
// silently fall back to a default. Command-line flags override file
// values through set().

#ifndef PGA_CONFIG_HPP
#define PGA_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pga/types.hpp"

namespace pga {

class RunConfig {
 public:
  RunConfig() = default;

  // Merges the file into the current values (later wins).
  void load_file(const std::string& path);
  // Throws Error(config) for unknown keys.
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  // Missing key -> Error(config).
  std::string require(const std::string& key) const;

  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

  static const std::vector<std::string>& known_keys();

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace pga

#endif  // PGA_CONFIG_HPP
