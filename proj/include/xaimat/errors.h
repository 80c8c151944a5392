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

#ifndef XAIMAT_ERRORS_H_
#define XAIMAT_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xaimat {

// Root of every error thrown by the library. The CLI maps subclasses to
// process exit codes, so keep the hierarchy flat and specific.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes are incompatible.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Argument outside the accepted domain (zero block size, negative lambda...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// Exact spectral division hit a zero denominator.
class SingularSpectrumError : public Error {
 public:
  SingularSpectrumError(std::size_t row, std::size_t col, const std::string& msg)
      : Error(msg), row_(row), col_(col) {}

  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// Problem size exceeds a hard cap (polynomial degree, player count, n!).
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// Per-slice results could not be reassembled.
class MergeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace xaimat

#endif  // XAIMAT_ERRORS_H_
