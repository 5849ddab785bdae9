// Copyright 2026 The greedymrf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GREEDYMRF_ERRORS_HPP
#define GREEDYMRF_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmrf {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. `row()` is the 1-based line number (header = 1),
/// or 0 when the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row)
      : Error(what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// A token or value outside the declared domain (e.g. explicit alphabet).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A dataset with no rows or no columns left.
class EmptyDatasetError : public Error {
 public:
  using Error::Error;
};

/// Variable or vertex index out of range.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument combination (duplicate variables, i in A, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds an enumeration cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace gmrf

#endif  // GREEDYMRF_ERRORS_HPP
