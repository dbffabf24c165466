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

#include "cadec/error.h"

#include <cmath>
#include <string>

#include "cadec/types.h"

namespace cadec {
namespace {

std::string format_location(const std::string& message,
                            const std::string& source, std::size_t line) {
  if (source.empty()) return message;
  if (line == 0) return source + ": " + message;
  return source + ":" + std::to_string(line) + ": " + message;
}

}  // namespace

DataError::DataError(const std::string& message, std::string source,
                     std::size_t line)
    : Error(format_location(message, source, line)),
      source_(std::move(source)),
      line_(line),
      message_(message) {}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw NumericError(std::string("non-finite ") + what);
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw NumericError(std::string("non-finite ") + what);
}

}  // namespace cadec
