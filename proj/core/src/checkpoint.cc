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

#include "cadec/checkpoint.h"

#include <zlib.h>

#include <vector>

#include "binary_io.h"
#include "cadec/error.h"
#include "cadec/lexicon.h"

namespace cadec {
namespace {

constexpr std::string_view kMagic = "CADECKPT";
constexpr std::uint32_t kVersion = 1;

void write_mlp(internal::ByteWriter& w, const Mlp& mlp) {
  for (const auto& tensor : mlp.parameters()) {
    for (double x : tensor) w.f64(x);
  }
}

void read_mlp(internal::ByteReader& r, Mlp& mlp) {
  for (const auto& tensor : mlp.parameters()) {
    for (double& x : tensor) x = r.f64();
  }
}

}  // namespace

std::size_t Checkpoint::backbone_dim() const {
  return model.input_dim() - kBe5Size;
}

std::uint32_t crc32(std::string_view bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks for very large payloads.
  constexpr std::size_t kChunk = 1u << 30;
  for (std::size_t pos = 0; pos < bytes.size(); pos += kChunk) {
    const std::size_t n = std::min(kChunk, bytes.size() - pos);
    crc = ::crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + pos),
                  static_cast<uInt>(n));
  }
  return static_cast<std::uint32_t>(crc);
}

std::string serialize_checkpoint(const Checkpoint& checkpoint) {
  const Autoencoder& model = checkpoint.model;
  const auto& dims = model.encoder.dims();
  if (dims.front() <= kBe5Size) {
    throw Error("encoder input dim must exceed the BE5 block");
  }
  std::vector<std::size_t> mirrored(dims.rbegin(), dims.rend());
  if (model.decoder.dims() != mirrored) {
    throw Error("decoder dims must mirror the encoder dims");
  }
  if (checkpoint.centroids.rows() > 0 &&
      static_cast<std::size_t>(checkpoint.centroids.cols()) !=
          model.embedding_dim()) {
    throw Error("centroid dim does not match the embedding dim");
  }
  internal::ByteWriter w;
  w.bytes(kMagic);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(checkpoint.backbone_dim()));
  w.u32(static_cast<std::uint32_t>(model.embedding_dim()));
  w.u32(static_cast<std::uint32_t>(dims.size()));
  for (std::size_t d : dims) w.u32(static_cast<std::uint32_t>(d));
  write_mlp(w, model.encoder);
  write_mlp(w, model.decoder);
  w.u32(static_cast<std::uint32_t>(checkpoint.cluster_count()));
  for (Eigen::Index i = 0; i < checkpoint.centroids.size(); ++i) {
    w.f64(checkpoint.centroids.data()[i]);
  }
  std::string bytes = w.data();
  internal::ByteWriter tail;
  tail.u32(crc32(bytes));
  bytes += tail.data();
  return bytes;
}

Checkpoint deserialize_checkpoint(std::string_view bytes,
                                  const std::string& source) {
  if (bytes.size() < kMagic.size() + 4) {
    throw DataError("truncated checkpoint", source);
  }
  if (bytes.substr(0, kMagic.size()) != kMagic) {
    throw DataError("not a checkpoint (bad magic)", source);
  }
  const std::string_view payload = bytes.substr(0, bytes.size() - 4);
  internal::ByteReader crc_reader(bytes.substr(bytes.size() - 4), source);
  if (crc_reader.u32() != crc32(payload)) {
    throw DataError("checkpoint CRC mismatch (file is corrupt or truncated)",
                    source);
  }

  internal::ByteReader r(payload, source);
  r.bytes(kMagic.size());
  if (const auto version = r.u32(); version != kVersion) {
    throw DataError("unsupported checkpoint version " +
                        std::to_string(version),
                    source);
  }
  const std::uint32_t d_b = r.u32();
  const std::uint32_t d_h = r.u32();
  const std::uint32_t n_dims = r.u32();
  if (n_dims < 2 || n_dims > 64) {
    throw DataError("implausible layer count " + std::to_string(n_dims),
                    source);
  }
  std::vector<std::size_t> dims(n_dims);
  for (std::size_t& d : dims) d = r.u32();
  if (dims.front() != d_b + kBe5Size || dims.back() != d_h) {
    throw DataError("layer dims disagree with the d_b/d_h header", source);
  }
  for (std::size_t d : dims) {
    if (d == 0 || d > (1u << 20)) {
      throw DataError("implausible layer dim " + std::to_string(d), source);
    }
  }
  Checkpoint ckpt;
  ckpt.model.encoder = Mlp(dims);
  ckpt.model.decoder = Mlp(std::vector<std::size_t>(dims.rbegin(), dims.rend()));
  read_mlp(r, ckpt.model.encoder);
  read_mlp(r, ckpt.model.decoder);
  const std::uint32_t k = r.u32();
  if (static_cast<std::uint64_t>(k) * d_h * 8 > r.remaining()) {
    throw DataError("truncated centroid block", source);
  }
  ckpt.centroids.resize(k, d_h);
  for (Eigen::Index i = 0; i < ckpt.centroids.size(); ++i) {
    ckpt.centroids.data()[i] = r.f64();
  }
  if (r.remaining() != 0) throw DataError("trailing bytes", source);
  return ckpt;
}

void save_checkpoint(const std::filesystem::path& path,
                     const Checkpoint& checkpoint) {
  write_file_atomic(path, serialize_checkpoint(checkpoint));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return deserialize_checkpoint(internal::read_file(path), path.string());
}

}  // namespace cadec
