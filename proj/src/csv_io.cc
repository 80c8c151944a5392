// Copyright 2026 The xaimat Authors.
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

#include "xaimat/csv_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <vector>

namespace xaimat {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_field(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("csv line " + std::to_string(line) + ": '" +
                     std::string(field) + "' is not a number");
  }
  if (!std::isfinite(value)) {
    throw ParseError("csv line " + std::to_string(line) + ": '" +
                     std::string(field) + "' is not finite");
  }
  return value;
}

}  // namespace

RealMatrix parse_matrix_csv(std::string_view text) {
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (trim(line).empty()) continue;

    std::size_t fields = 0;
    while (true) {
      const auto comma = line.find(',');
      values.push_back(parse_field(line.substr(0, comma), line_no));
      ++fields;
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (rows == 0) {
      cols = fields;
    } else if (fields != cols) {
      throw ParseError("csv line " + std::to_string(line_no) + ": expected " +
                       std::to_string(cols) + " fields, found " +
                       std::to_string(fields));
    }
    ++rows;
  }
  if (rows == 0) throw ParseError("csv: no data rows");
  return RealMatrix(rows, cols, std::move(values));
}

RealMatrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  try {
    return parse_matrix_csv(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_matrix_csv(const RealMatrix& m) {
  std::string out;
  char buf[64];
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0) out.push_back(',');
      const auto res = std::to_chars(buf, buf + sizeof(buf), m(r, c));
      out.append(buf, res.ptr);
    }
    out.push_back('\n');
  }
  return out;
}

void write_matrix_csv(const std::string& path, const RealMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << format_matrix_csv(m);
}

}  // namespace xaimat
