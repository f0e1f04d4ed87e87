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

#include "pga/util.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "pga/types.hpp"

namespace pga {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorClass::internal, "sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error(ErrorClass::internal, "to_chars failed");
  return std::string(buf, p);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorClass::io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorClass::io, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(ErrorClass::io, "write to '" + path + "' failed");
}

void append_line(const std::string& path, const std::string& line) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error(ErrorClass::io, "cannot open '" + path + "' for appending");
  out << line << '\n';
  if (!out) throw Error(ErrorClass::io, "append to '" + path + "' failed");
}

void for_each_json_line(const std::string& path,
                        const std::function<void(const json&, int)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorClass::io, "cannot open '" + path + "' for reading");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const std::exception& e) {
      throw Error(ErrorClass::parse,
                  path + ":" + std::to_string(lineno) + ": malformed record: " + e.what());
    }
    fn(rec, lineno);
  }
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string collapse_whitespace(const std::string& s) {
  std::string out;
  bool in_space = true;  // leading spaces dropped
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
    } else {
      if (in_space && !out.empty()) out += ' ';
      in_space = false;
      out += c;
    }
  }
  return out;
}

std::vector<std::size_t> seeded_subset(std::size_t size, std::size_t n, std::uint64_t seed) {
  if (n > size) {
    throw Error(ErrorClass::validation,
                "subset size " + std::to_string(n) + " exceeds population " + std::to_string(size));
  }
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng() % (size - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  return idx;
}

void retry_with_backoff(int attempts,
                        const std::function<void()>& fn,
                        const std::function<bool(const std::exception&)>& retryable,
                        const std::function<std::int64_t(int)>& delay_ms) {
  for (int attempt = 1;; ++attempt) {
    try {
      fn();
      return;
    } catch (const std::exception& e) {
      if (attempt >= attempts || !retryable(e)) throw;
      std::int64_t ms = delay_ms(attempt);
      if (ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(ms));
    }
  }
}

std::string iso8601_utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

}  // namespace pga
