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

#include <benchmark/benchmark.h>

#include "cadec/cluster.h"
#include "cadec/losses.h"
#include "cadec/model.h"
#include "cadec/rng.h"

namespace cadec {
namespace {

Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal();
  return m;
}

void BM_ContrastiveLoss(benchmark::State& state) {
  Rng rng(1);
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const Matrix h = random_matrix(rng, n, 64);
  const Matrix h_aug = random_matrix(rng, n, 64);
  const LossConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(contrastive_loss(h, h_aug, config));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ContrastiveLoss)->Arg(32)->Arg(128)->Arg(512);

void BM_SoftAssign(benchmark::State& state) {
  Rng rng(2);
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const Matrix h = random_matrix(rng, n, 64);
  const Matrix mu = random_matrix(rng, 5, 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(target_distribution(soft_assign(h, mu, 1.0)));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SoftAssign)->Arg(1000)->Arg(10000);

void BM_Encode(benchmark::State& state) {
  Rng rng(3);
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const Autoencoder model = init_autoencoder({773, 256, 64}, 4);
  const Matrix r = random_matrix(rng, n, 773);
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode(model, r));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Encode)->Arg(32)->Arg(1024);

}  // namespace
}  // namespace cadec

BENCHMARK_MAIN();
