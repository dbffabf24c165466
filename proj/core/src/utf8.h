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

#ifndef CADEC_SRC_UTF8_H_
#define CADEC_SRC_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace cadec::internal {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes one code point at `pos` and advances it. Invalid sequences decode
// to U+FFFD and consume a single byte.
char32_t decode_utf8(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

bool is_unicode_space(char32_t cp);
bool is_unicode_punct(char32_t cp);
char32_t to_lower_cp(char32_t cp);

}  // namespace cadec::internal

#endif  // CADEC_SRC_UTF8_H_
