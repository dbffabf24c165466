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

#ifndef CADEC_CHECKPOINT_H_
#define CADEC_CHECKPOINT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "cadec/model.h"
#include "cadec/types.h"

namespace cadec {

// Everything needed to embed and classify: the autoencoder and, after
// Stage 2, the K x d_h centroids (zero rows before that).
struct Checkpoint {
  Autoencoder model;
  Matrix centroids;

  // d_b: the encoder input is d_b backbone dims plus 5 BE5 dims.
  std::size_t backbone_dim() const;
  std::size_t embedding_dim() const { return model.embedding_dim(); }
  std::size_t cluster_count() const {
    return static_cast<std::size_t>(centroids.rows());
  }

  friend bool operator==(const Checkpoint& a, const Checkpoint& b) {
    return a.model == b.model && a.centroids.rows() == b.centroids.rows() &&
           a.centroids.cols() == b.centroids.cols() &&
           a.centroids == b.centroids;
  }
};

std::uint32_t crc32(std::string_view bytes);

// Layout, little-endian: "CADECKPT", u32 version, u32 d_b, u32 d_h,
// u32 encoder layer-dim count, the dims as u32, encoder then decoder
// parameters as f64 (per layer: weight row-major out x in, then bias),
// u32 K, K x d_h centroids as f64, and a u32 CRC32 of every preceding byte.
std::string serialize_checkpoint(const Checkpoint& checkpoint);
Checkpoint deserialize_checkpoint(std::string_view bytes,
                                  const std::string& source = "<checkpoint>");

// Atomic: writes a temporary file and renames it.
void save_checkpoint(const std::filesystem::path& path,
                     const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace cadec

#endif  // CADEC_CHECKPOINT_H_
