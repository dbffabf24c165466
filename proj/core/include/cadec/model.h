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

#ifndef CADEC_MODEL_H_
#define CADEC_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cadec/types.h"

namespace cadec {

// y = x W^T + b, with W stored out x in.
struct DenseLayer {
  Matrix weight;
  Vector bias;

  friend bool operator==(const DenseLayer& a, const DenseLayer& b) {
    return a.weight == b.weight && a.bias == b.bias;
  }
};

// Fully connected net: ReLU after every layer but the last, which is linear.
// Gradients use the same type, so an Mlp doubles as a gradient container.
class Mlp {
 public:
  Mlp() = default;

  // All-zero parameters. Throws UsageError for fewer than two dims or a
  // zero dim.
  explicit Mlp(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t input_dim() const { return dims_.front(); }
  std::size_t output_dim() const { return dims_.back(); }
  std::size_t layer_count() const { return layers_.size(); }
  std::size_t parameter_count() const;

  std::vector<DenseLayer>& layers() { return layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }

  // Flat views in a fixed order: W0, b0, W1, b1, ...
  std::vector<std::span<double>> parameters();
  std::vector<std::span<const double>> parameters() const;

  void set_zero();
  Mlp zeros_like() const { return Mlp(dims_); }

  friend bool operator==(const Mlp& a, const Mlp& b) {
    return a.dims_ == b.dims_ && a.layers_ == b.layers_;
  }

 private:
  std::vector<std::size_t> dims_;
  std::vector<DenseLayer> layers_;
};

// Glorot-uniform weights in (-a, a), a = sqrt(6 / (fan_in + fan_out));
// zero biases.
Mlp init_params(const std::vector<std::size_t>& dims, std::uint64_t seed);

struct ForwardCache {
  std::vector<Matrix> inputs;  // input of each layer
  Matrix output;
};

ForwardCache forward(const Mlp& mlp, const Matrix& x);
Matrix apply(const Mlp& mlp, const Matrix& x);
Vector apply(const Mlp& mlp, const Vector& x);

struct MlpGradients {
  Mlp params;
  Matrix input;
};

// Reverse pass for the batch that produced `cache`. Throws Error when the
// cache or the upstream gradient does not match the net.
MlpGradients backward(const Mlp& mlp, const ForwardCache& cache,
                      const Matrix& upstream);

// Encoder maps r to the style embedding h; decoder maps h back to r'.
struct Autoencoder {
  Mlp encoder;
  Mlp decoder;

  std::size_t input_dim() const { return encoder.input_dim(); }
  std::size_t embedding_dim() const { return encoder.output_dim(); }

  friend bool operator==(const Autoencoder&, const Autoencoder&) = default;
};

// encoder_dims runs from the input dim to the embedding dim; the decoder
// mirrors it.
Autoencoder init_autoencoder(const std::vector<std::size_t>& encoder_dims,
                             std::uint64_t seed);

Vector encode(const Autoencoder& model, const Vector& r);
Matrix encode(const Autoencoder& model, const Matrix& r);
Vector decode(const Autoencoder& model, const Vector& h);
Matrix decode(const Autoencoder& model, const Matrix& h);

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

class AdamState {
 public:
  explicit AdamState(AdamConfig config = {}) : config_(config) {}

  const AdamConfig& config() const { return config_; }
  std::uint64_t step() const { return step_; }

 private:
  friend void adam_step(std::span<const std::span<double>> params,
                        std::span<const std::span<const double>> grads,
                        AdamState& state, double lr);

  AdamConfig config_;
  std::uint64_t step_ = 0;
  std::vector<std::vector<double>> first_;
  std::vector<std::vector<double>> second_;
};

// One bias-corrected Adam update. Moments are allocated on the first call;
// later calls must pass tensors of the same shapes. Throws NumericError
// before touching anything when a gradient is not finite.
void adam_step(std::span<const std::span<double>> params,
               std::span<const std::span<const double>> grads,
               AdamState& state, double lr);

}  // namespace cadec

#endif  // CADEC_MODEL_H_
