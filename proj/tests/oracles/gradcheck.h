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

// Finite-difference gradient checks of each loss composed with the MLP
// autoencoder. Shared by the unit tests and the acceptance binary.
//
// Analytic gradients come from the library; the difference quotient
// evaluates the independent oracles in scalar type S. With S = double the
// rounding in the loss value (about eps * |L| / step) can exceed the 1e-6
// relative tolerance on small gradient components; S = long double keeps it
// well below.
#ifndef CADEC_TESTS_GRADCHECK_H_
#define CADEC_TESTS_GRADCHECK_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "cadec/cluster.h"
#include "cadec/losses.h"
#include "cadec/model.h"
#include "cadec/rng.h"
#include "oracles.h"

namespace cadec::oracle {

struct GradCheck {
  std::size_t probes = 0;
  std::size_t failures = 0;
  double max_relative_error = 0.0;
};

struct Probe {
  double* value;
  double analytic;
};

inline void add_params(Mlp& mlp, const Mlp& grads, std::vector<Probe>& out) {
  auto values = mlp.parameters();
  const auto g = grads.parameters();
  for (std::size_t t = 0; t < values.size(); ++t) {
    for (std::size_t i = 0; i < values[t].size(); ++i) {
      out.push_back({&values[t][i], g[t][i]});
    }
  }
}

inline void add_matrix(Matrix& m, const Matrix& grads, std::vector<Probe>& out) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    out.push_back({m.data() + i, grads.data()[i]});
  }
}

// Probes `count` randomly chosen coordinates. Coordinates whose analytic
// gradient is exactly zero (dead ReLU paths, which a difference quotient
// straddling the kink cannot resolve) are not drawn.
inline GradCheck run_probes(std::vector<Probe> candidates,
                            const std::function<long double()>& loss,
                            std::size_t count, std::uint64_t seed,
                            double step, double tolerance) {
  std::vector<Probe> live;
  for (const Probe& p : candidates) {
    if (p.analytic != 0.0) live.push_back(p);
  }
  Rng rng(seed);
  rng.shuffle(live);
  GradCheck result;
  for (std::size_t i = 0; i < live.size() && result.probes < count; ++i) {
    const double numeric = central_difference(*live[i].value, loss, step);
    const double err = relative_error(live[i].analytic, numeric);
    result.max_relative_error = std::max(result.max_relative_error, err);
    if (!(err < tolerance)) ++result.failures;
    ++result.probes;
  }
  return result;
}

inline Mlp accumulate(const Mlp& a, const Mlp& b) {
  Mlp out = a;
  auto dst = out.parameters();
  const auto src = b.parameters();
  for (std::size_t t = 0; t < dst.size(); ++t) {
    for (std::size_t i = 0; i < dst[t].size(); ++i) dst[t][i] += src[t][i];
  }
  return out;
}

struct GradCheckOptions {
  std::size_t probes = 60;
  double step = 1e-6;
  double tolerance = 1e-6;
};

// L = contrastive(enc(R), enc(R~)) over encoder parameters and inputs.
template <typename S = double>
GradCheck check_contrastive(std::uint64_t seed, ContrastiveMode mode,
                                   const GradCheckOptions& opt = {}) {
  Rng rng(seed);
  Mlp enc = init_params({7, 9, 5}, derive_seed(seed, "encoder"));
  Matrix r = random_matrix(rng, 8, 7);
  Matrix r_aug = random_matrix(rng, 8, 7);
  LossConfig config;
  config.tau = 0.5;
  config.contrastive_mode = mode;

  const bool symmetric = mode == ContrastiveMode::kSymmetric;
  const auto loss = [&] {
    return contrastive<S>(
        mlp_forward<S>(enc, r.cast<S>()),
        mlp_forward<S>(enc, r_aug.cast<S>()), config.tau,
        symmetric);
  };
  const ForwardCache ca = forward(enc, r);
  const ForwardCache cb = forward(enc, r_aug);
  const ContrastiveLoss l = contrastive_loss(ca.output, cb.output, config);
  const MlpGradients ga = backward(enc, ca, l.grad_anchors);
  const MlpGradients gb = backward(enc, cb, l.grad_positives);
  std::vector<Probe> candidates;
  add_params(enc, accumulate(ga.params, gb.params), candidates);
  add_matrix(r, ga.input, candidates);
  add_matrix(r_aug, gb.input, candidates);
  return run_probes(candidates, loss, opt.probes, derive_seed(seed, "probe"),
                    opt.step, opt.tolerance);
}

// L = KL(P || Q(enc(R), mu)) with P held fixed, over encoder parameters and
// centroids.
template <typename S = double>
GradCheck check_clustering(std::uint64_t seed, double alpha,
                                  const GradCheckOptions& opt = {}) {
  Rng rng(seed);
  Mlp enc = init_params({6, 8, 3}, derive_seed(seed, "encoder"));
  Matrix r = random_matrix(rng, 10, 6);
  Matrix mu = random_matrix(rng, 4, 3);
  const Matrix p = target_distribution(soft_assign(apply(enc, r), mu, alpha));

  const MatrixT<S> p_ext = p.cast<S>();
  const auto loss = [&] {
    return kl<S>(
        p_ext, soft_assign<S>(
                   mlp_forward<S>(enc, r.cast<S>()),
                   mu.cast<S>(), alpha));
  };
  const ForwardCache cache = forward(enc, r);
  const ClusteringLoss l = clustering_loss(cache.output, mu, p, alpha);
  const MlpGradients g = backward(enc, cache, l.grad_embeddings);
  std::vector<Probe> candidates;
  add_params(enc, g.params, candidates);
  add_matrix(mu, l.grad_centroids, candidates);
  return run_probes(candidates, loss, opt.probes, derive_seed(seed, "probe"),
                    opt.step, opt.tolerance);
}

// L = sum ||r - dec(enc(r))||^2 over encoder and decoder parameters.
template <typename S = double>
GradCheck check_reconstruction(std::uint64_t seed,
                                      const GradCheckOptions& opt = {}) {
  Rng rng(seed);
  Autoencoder model = init_autoencoder({6, 8, 3}, seed);
  const Matrix r = random_matrix(rng, 5, 6);

  const MatrixT<S> r_ext = r.cast<S>();
  const auto loss = [&] {
    return reconstruction<S>(
        r_ext, mlp_forward<S>(
                   model.decoder, mlp_forward<S>(model.encoder, r_ext)));
  };
  const ForwardCache ce = forward(model.encoder, r);
  const ForwardCache cd = forward(model.decoder, ce.output);
  const ReconstructionLoss l = reconstruction_loss(r, cd.output);
  const MlpGradients gd = backward(model.decoder, cd, l.grad_reconstruction);
  const MlpGradients ge = backward(model.encoder, ce, gd.input);
  std::vector<Probe> candidates;
  add_params(model.encoder, ge.params, candidates);
  add_params(model.decoder, gd.params, candidates);
  return run_probes(candidates, loss, opt.probes, derive_seed(seed, "probe"),
                    opt.step, opt.tolerance);
}

}  // namespace cadec::oracle

#endif  // CADEC_TESTS_GRADCHECK_H_
