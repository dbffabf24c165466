//
// Copyright 2026 The CADEC Authors
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
//

#ifndef CADEC_ERROR_H_
#define CADEC_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cadec {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data. Carries the source name and the
// 1-based line number when the problem can be pinned to a line.
class DataError : public Error {
 public:
  explicit DataError(const std::string& message, std::string source = {},
                     std::size_t line = 0);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  std::string source_;
  std::size_t line_;
  std::string message_;
};

// A NaN or infinity showed up where only finite values are allowed.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Bad invocation: missing or contradictory options.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace cadec

#endif  // CADEC_ERROR_H_
