// Copyright 2026 The entroflux Authors
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

#pragma once

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "entroflux/dynamics.hpp"

namespace entroflux {

inline constexpr std::string_view kCsvHeader = "t,entropy,flux,flux_rate,alpha,sigma,sigma_bound,gap";

/// Shortest-safe decimal with 17 significant digits; locale independent.
inline void append_number(std::string& out, double v) {
  if (v == 0.0) v = 0.0;  // print -0 as 0
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  out.append(buf.data(), res.ptr);
}

inline std::string format_csv(const TrajectoryRecord& record) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const Sample& s : record.samples()) {
    const double row[] = {s.t, s.entropy, s.flux, s.flux_rate, s.alpha, s.sigma, s.sigma_bound, s.gap};
    for (std::size_t k = 0; k < std::size(row); ++k) {
      if (k > 0) out += ',';
      append_number(out, row[k]);
    }
    out += '\n';
  }
  return out;
}

inline void write_csv(const TrajectoryRecord& record, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  const std::string text = format_csv(record);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

/// Parses CSV text produced by `format_csv` back into samples.
inline std::vector<Sample> parse_csv(std::string_view text) {
  std::vector<Sample> rows;
  std::size_t pos = text.find('\n');
  if (pos == std::string_view::npos || text.substr(0, pos) != kCsvHeader) {
    throw Error(ErrorCode::ParseError, "missing or unexpected CSV header");
  }
  ++pos;
  std::size_t line = 1;
  while (pos < text.size()) {
    ++line;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(pos, end - pos);
    pos = end + 1;
    if (row.empty()) continue;
    double v[8];
    std::size_t k = 0;
    const char* p = row.data();
    const char* const stop = row.data() + row.size();
    for (; k < 8; ++k) {
      auto res = std::from_chars(p, stop, v[k]);
      if (res.ec != std::errc()) {
        throw Error(ErrorCode::ParseError, "bad number on CSV line " + std::to_string(line));
      }
      p = res.ptr;
      if (k < 7) {
        if (p == stop || *p != ',') {
          throw Error(ErrorCode::ParseError, "too few columns on CSV line " + std::to_string(line));
        }
        ++p;
      }
    }
    if (p != stop) throw Error(ErrorCode::ParseError, "extra data on CSV line " + std::to_string(line));
    rows.push_back(Sample{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], 0.0});
  }
  return rows;
}

}  // namespace entroflux
