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

#ifndef PGA_UTIL_HPP
#define PGA_UTIL_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace pga {

using json = nlohmann::ordered_json;

// Hex-encoded SHA-256.
std::string sha256_hex(const std::string& data);

// Shortest round-trip decimal form; stable across platforms.
std::string format_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
void append_line(const std::string& path, const std::string& line);

// Calls fn(record, line_number) for every non-empty line; line numbers are
// 1-based. Throws Error(parse) with the line number on malformed JSON and
// Error(io) when the file cannot be opened.
void for_each_json_line(const std::string& path,
                        const std::function<void(const json&, int)>& fn);

std::string trim(const std::string& s);
// Collapses internal whitespace runs to single spaces and trims the ends.
std::string collapse_whitespace(const std::string& s);

// Deterministic selection of n positions out of size, uniform without
// replacement, returned in increasing order. Partial Fisher-Yates over a
// std::mt19937_64 seeded with `seed`; the j-th draw is
// i + rng() % (size - i). Frozen: golden tests depend on the sequence.
std::vector<std::size_t> seeded_subset(std::size_t size, std::size_t n, std::uint64_t seed);

// Retries fn up to `attempts` times. On failure fn throws; `retryable`
// decides whether to keep going; `delay_ms(k)` is the sleep before attempt
// k+1 (k is 1-based attempt just failed).
void retry_with_backoff(int attempts,
                        const std::function<void()>& fn,
                        const std::function<bool(const std::exception&)>& retryable,
                        const std::function<std::int64_t(int)>& delay_ms);

std::string iso8601_utc_now();

}  // namespace pga

#endif  // PGA_UTIL_HPP
