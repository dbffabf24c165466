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

#ifndef CADEC_SRC_JSON_UTIL_H_
#define CADEC_SRC_JSON_UTIL_H_

#include <json.hpp>

#include "cadec/corpus.h"

namespace cadec::internal {

// Corpus record in the JSON Lines schema, keys in a fixed order.
nlohmann::ordered_json utterance_to_json(const Utterance& u);

}  // namespace cadec::internal

#endif  // CADEC_SRC_JSON_UTIL_H_
