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

#ifndef XAIMAT_CSV_IO_H_
#define XAIMAT_CSV_IO_H_

#include <string>
#include <string_view>

#include "xaimat/matrix.h"

namespace xaimat {

// Headerless, row-major CSV of decimal numbers. Blank lines are ignored;
// every row must have the same number of fields. Throws ParseError.
RealMatrix parse_matrix_csv(std::string_view text);
RealMatrix read_matrix_csv(const std::string& path);

// Shortest round-trip representation of every value, one row per line.
std::string format_matrix_csv(const RealMatrix& m);
void write_matrix_csv(const std::string& path, const RealMatrix& m);

}  // namespace xaimat

#endif  // XAIMAT_CSV_IO_H_
