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

#include "cadec/model.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "cadec/error.h"
#include "cadec/rng.h"

namespace cadec {

Mlp::Mlp(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.size() < 2) throw UsageError("an MLP needs at least two dims");
  for (std::size_t d : dims_) {
    if (d == 0) throw UsageError("MLP layer dims must be positive");
  }
  for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
    const auto in = static_cast<Eigen::Index>(dims_[l]);
    const auto out = static_cast<Eigen::Index>(dims_[l + 1]);
    layers_.push_back({Matrix::Zero(out, in), Vector::Zero(out)});
  }
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const DenseLayer& layer : layers_) {
    n += static_cast<std::size_t>(layer.weight.size() + layer.bias.size());
  }
  return n;
}

std::vector<std::span<double>> Mlp::parameters() {
  std::vector<std::span<double>> out;
  for (DenseLayer& layer : layers_) {
    out.emplace_back(layer.weight.data(),
                     static_cast<std::size_t>(layer.weight.size()));
    out.emplace_back(layer.bias.data(),
                     static_cast<std::size_t>(layer.bias.size()));
  }
  return out;
}

std::vector<std::span<const double>> Mlp::parameters() const {
  std::vector<std::span<const double>> out;
  for (const DenseLayer& layer : layers_) {
    out.emplace_back(layer.weight.data(),
                     static_cast<std::size_t>(layer.weight.size()));
    out.emplace_back(layer.bias.data(),
                     static_cast<std::size_t>(layer.bias.size()));
  }
  return out;
}

void Mlp::set_zero() {
  for (DenseLayer& layer : layers_) {
    layer.weight.setZero();
    layer.bias.setZero();
  }
}

Mlp init_params(const std::vector<std::size_t>& dims, std::uint64_t seed) {
  Mlp mlp(dims);
  Rng rng(seed);
  for (DenseLayer& layer : mlp.layers()) {
    const double limit = std::sqrt(
        6.0 / static_cast<double>(layer.weight.rows() + layer.weight.cols()));
    for (Eigen::Index i = 0; i < layer.weight.size(); ++i) {
      layer.weight.data()[i] = rng.uniform(-limit, limit);
    }
  }
  return mlp;
}

ForwardCache forward(const Mlp& mlp, const Matrix& x) {
  if (static_cast<std::size_t>(x.cols()) != mlp.input_dim()) {
    throw Error("MLP input has dim " + std::to_string(x.cols()) +
                ", expected " + std::to_string(mlp.input_dim()));
  }
  ForwardCache cache;
  cache.inputs.reserve(mlp.layer_count());
  Matrix a = x;
  const auto& layers = mlp.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    cache.inputs.push_back(a);
    Matrix z = a * layers[l].weight.transpose();
    z.rowwise() += layers[l].bias.transpose();
    if (l + 1 < layers.size()) z = z.cwiseMax(0.0);
    a = std::move(z);
  }
  cache.output = std::move(a);
  return cache;
}

Matrix apply(const Mlp& mlp, const Matrix& x) {
  return forward(mlp, x).output;
}

Vector apply(const Mlp& mlp, const Vector& x) {
  const Matrix row = x.transpose();
  return apply(mlp, row).row(0).transpose();
}

MlpGradients backward(const Mlp& mlp, const ForwardCache& cache,
                      const Matrix& upstream) {
  const auto& layers = mlp.layers();
  if (cache.inputs.size() != layers.size()) {
    throw Error("forward cache has " + std::to_string(cache.inputs.size()) +
                " layers, MLP has " + std::to_string(layers.size()));
  }
  const Eigen::Index batch = cache.output.rows();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    if (cache.inputs[l].cols() != layers[l].weight.cols() ||
        cache.inputs[l].rows() != batch) {
      throw Error("stale forward cache at layer " + std::to_string(l));
    }
  }
  if (cache.output.cols() != layers.back().weight.rows() ||
      upstream.rows() != batch || upstream.cols() != cache.output.cols()) {
    throw Error("upstream gradient shape does not match the forward cache");
  }

  MlpGradients grads{mlp.zeros_like(), Matrix()};
  Matrix delta = upstream;
  for (std::size_t l = layers.size(); l-- > 0;) {
    DenseLayer& g = grads.params.layers()[l];
    g.weight.noalias() = delta.transpose() * cache.inputs[l];
    g.bias = delta.colwise().sum().transpose();
    Matrix below = delta * layers[l].weight;
    if (l > 0) {
      // inputs[l] is the ReLU output of layer l - 1; it is positive exactly
      // where the pre-activation was.
      below = below.cwiseProduct(
          (cache.inputs[l].array() > 0.0).cast<double>().matrix());
    }
    delta = std::move(below);
  }
  grads.input = std::move(delta);
  return grads;
}

Autoencoder init_autoencoder(const std::vector<std::size_t>& encoder_dims,
                             std::uint64_t seed) {
  std::vector<std::size_t> decoder_dims(encoder_dims.rbegin(),
                                        encoder_dims.rend());
  return {init_params(encoder_dims, derive_seed(seed, "encoder")),
          init_params(decoder_dims, derive_seed(seed, "decoder"))};
}

Vector encode(const Autoencoder& model, const Vector& r) {
  return apply(model.encoder, r);
}
Matrix encode(const Autoencoder& model, const Matrix& r) {
  return apply(model.encoder, r);
}
Vector decode(const Autoencoder& model, const Vector& h) {
  return apply(model.decoder, h);
}
Matrix decode(const Autoencoder& model, const Matrix& h) {
  return apply(model.decoder, h);
}

void adam_step(std::span<const std::span<double>> params,
               std::span<const std::span<const double>> grads,
               AdamState& state, double lr) {
  if (params.size() != grads.size()) {
    throw Error("adam_step: parameter and gradient counts differ");
  }
  for (std::size_t t = 0; t < params.size(); ++t) {
    if (params[t].size() != grads[t].size()) {
      throw Error("adam_step: shape mismatch for tensor " + std::to_string(t));
    }
    for (double g : grads[t]) {
      if (!std::isfinite(g)) {
        throw NumericError("non-finite gradient in tensor " +
                           std::to_string(t));
      }
    }
  }
  if (state.step_ == 0 && state.first_.empty()) {
    for (const auto& p : params) {
      state.first_.emplace_back(p.size(), 0.0);
      state.second_.emplace_back(p.size(), 0.0);
    }
  }
  if (state.first_.size() != params.size()) {
    throw Error("adam_step: optimizer state was built for a different model");
  }
  for (std::size_t t = 0; t < params.size(); ++t) {
    if (state.first_[t].size() != params[t].size()) {
      throw Error("adam_step: optimizer state shape mismatch");
    }
  }

  ++state.step_;
  const AdamConfig& c = state.config_;
  const double step = static_cast<double>(state.step_);
  const double correction1 = 1.0 - std::pow(c.beta1, step);
  const double correction2 = 1.0 - std::pow(c.beta2, step);
  for (std::size_t t = 0; t < params.size(); ++t) {
    auto& m = state.first_[t];
    auto& v = state.second_[t];
    for (std::size_t i = 0; i < params[t].size(); ++i) {
      const double g = grads[t][i];
      m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * g;
      v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * g * g;
      const double m_hat = m[i] / correction1;
      const double v_hat = v[i] / correction2;
      params[t][i] -= lr * m_hat / (std::sqrt(v_hat) + c.epsilon);
    }
  }
}

}  // namespace cadec
