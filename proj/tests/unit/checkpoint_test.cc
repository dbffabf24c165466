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

#include <gtest/gtest.h>

#include <filesystem>

#include "cadec/error.h"
#include "oracles.h"
#include "test_util.h"

namespace cadec {
namespace {

Checkpoint sample(std::size_t clusters) {
  Checkpoint c;
  c.model = init_autoencoder({12, 9, 4}, 77);
  Rng rng(5);
  for (auto* mlp : {&c.model.encoder, &c.model.decoder}) {
    for (auto& layer : mlp->layers()) {
      for (Eigen::Index i = 0; i < layer.bias.size(); ++i) {
        layer.bias[i] = rng.normal();
      }
    }
  }
  c.centroids = oracle::random_matrix(rng, static_cast<Eigen::Index>(clusters), 4);
  return c;
}

TEST(Checkpoint, Crc32KnownValue) {
  EXPECT_EQ(crc32("123456789"), 0xCBF43926u);
  EXPECT_EQ(crc32(""), 0u);
}

TEST(Checkpoint, RoundTripIsBitwise) {
  for (std::size_t k : {0u, 1u, 5u}) {
    const Checkpoint c = sample(k);
    const std::string bytes = serialize_checkpoint(c);
    const Checkpoint back = deserialize_checkpoint(bytes);
    EXPECT_TRUE(back == c);
    EXPECT_EQ(serialize_checkpoint(back), bytes);
    EXPECT_EQ(back.backbone_dim(), 7u);
    EXPECT_EQ(back.embedding_dim(), 4u);
    EXPECT_EQ(back.cluster_count(), k);
  }
}

TEST(Checkpoint, LayoutHeader) {
  const std::string bytes = serialize_checkpoint(sample(3));
  EXPECT_EQ(bytes.substr(0, 8), "CADECKPT");
  // magic + version + d_b + d_h + n_dims + 3 dims + params + K + centroids
  // + crc
  const std::size_t params = (12 * 9 + 9 + 9 * 4 + 4) + (4 * 9 + 9 + 9 * 12 + 12);
  EXPECT_EQ(bytes.size(), 8 + 4 * 4 + 3 * 4 + 8 * params + 4 + 8 * 12 + 4);
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 1u);  // little-endian 1
}

TEST(Checkpoint, CorruptionIsRejected) {
  const std::string bytes = serialize_checkpoint(sample(2));
  for (std::size_t pos : {std::size_t{20}, bytes.size() / 2, bytes.size() - 1}) {
    std::string bad = bytes;
    bad[pos] = static_cast<char>(bad[pos] ^ 0x10);
    EXPECT_THROW(deserialize_checkpoint(bad), DataError) << pos;
  }
  EXPECT_THROW(deserialize_checkpoint(bytes.substr(0, bytes.size() - 9)),
               DataError);
  EXPECT_THROW(deserialize_checkpoint("CADECKP"), DataError);
  std::string magic = bytes;
  magic[0] = 'X';
  EXPECT_THROW(deserialize_checkpoint(magic), DataError);
}

TEST(Checkpoint, SaveLoadGivesIdenticalEncodings) {
  testing::TempDir dir("ckpt");
  const Checkpoint c = sample(3);
  save_checkpoint(dir / "model.ckpt", c);
  EXPECT_FALSE(std::filesystem::exists(dir / "model.ckpt.tmp"));
  const Checkpoint back = load_checkpoint(dir / "model.ckpt");
  Rng rng(1);
  const Matrix r = oracle::random_matrix(rng, 6, 12);
  EXPECT_EQ(encode(back.model, r), encode(c.model, r));
  EXPECT_EQ(decode(back.model, encode(back.model, r)),
            decode(c.model, encode(c.model, r)));
}

TEST(Checkpoint, MissingFile) {
  EXPECT_THROW(load_checkpoint("/nonexistent/dir/x.ckpt"), DataError);
}

}  // namespace
}  // namespace cadec
