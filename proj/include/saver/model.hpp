#ifndef SAVER_MODEL_HPP
#define SAVER_MODEL_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "saver/common.hpp"
#include "saver/parallel.hpp"
#include "saver/rng.hpp"
#include "saver/sdf.hpp"

namespace saver {

enum class Activation { relu, identity };

struct Layer {
  Matrix weights;  // [out x in]
  Vector bias;     // [out]
  Activation activation = Activation::relu;
};

// A dense feedforward network. Layer dimensions must chain.
class NetworkSpec {
 public:
  explicit NetworkSpec(std::vector<Layer> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) throw spec_error("network needs at least one layer");
    for (std::size_t k = 0; k < layers_.size(); ++k) {
      const Layer& layer = layers_[k];
      if (layer.weights.rows() < 1 || layer.weights.cols() < 1) {
        throw spec_error("layer " + std::to_string(k) + " has an empty weight matrix");
      }
      if (layer.weights.rows() != layer.bias.size()) {
        throw spec_error("layer " + std::to_string(k) + " bias length " +
                         std::to_string(layer.bias.size()) + " does not match " +
                         std::to_string(layer.weights.rows()) + " output rows");
      }
      if (!all_finite(layer.weights) || !all_finite(layer.bias)) {
        throw spec_error("layer " + std::to_string(k) + " has non-finite entries");
      }
      if (k > 0 && layer.weights.cols() != layers_[k - 1].weights.rows()) {
        throw spec_error("layer " + std::to_string(k) + " expects " +
                         std::to_string(layer.weights.cols()) + " inputs but layer " +
                         std::to_string(k - 1) + " produces " +
                         std::to_string(layers_[k - 1].weights.rows()));
      }
    }
  }

  const std::vector<Layer>& layers() const { return layers_; }
  Eigen::Index input_dim() const { return layers_.front().weights.cols(); }
  Eigen::Index output_dim() const { return layers_.back().weights.rows(); }

 private:
  std::vector<Layer> layers_;
};

inline Point forward(const NetworkSpec& net, const Point& x) {
  if (x.size() != net.input_dim()) {
    throw spec_error("network expects " + std::to_string(net.input_dim()) +
                     " inputs, got " + std::to_string(x.size()));
  }
  if (!all_finite(x)) throw input_error("network input must be finite");
  Point h = x;
  for (std::size_t k = 0; k < net.layers().size(); ++k) {
    const Layer& layer = net.layers()[k];
    h = layer.weights * h + layer.bias;
    if (layer.activation == Activation::relu) h = h.cwiseMax(0.0);
    if (!all_finite(h)) {
      throw numeric_error("non-finite activation after layer " + std::to_string(k));
    }
  }
  return h;
}

enum class DistKind { cauchy_standard, gaussian_iid };

// A seeded product distribution over the network input space. The sample
// stream is a pure function of (seed, kind, dimension, n).
struct DistributionSpec {
  DistKind kind = DistKind::cauchy_standard;
  Eigen::Index dimension = 1;
  double mean = 0.0;       // gaussian only
  double variance = 1.0;   // gaussian only
  std::uint64_t seed = 0;
};

inline void validate(const DistributionSpec& dist) {
  if (dist.dimension < 1) throw parameter_error("distribution dimension must be >= 1");
  if (dist.kind == DistKind::gaussian_iid) {
    if (!(dist.variance > 0.0) || !std::isfinite(dist.variance)) {
      throw parameter_error("gaussian variance must be positive and finite");
    }
    if (!std::isfinite(dist.mean)) throw parameter_error("gaussian mean must be finite");
  }
}

namespace detail {

// Coordinate j of point i draws from stream position i*dim + j, so a batch
// can be produced in any order or in parallel and still match the serial
// stream bit for bit.
inline double draw_coordinate(const DistributionSpec& dist, std::uint64_t index) {
  double u = SplitMix64::to_unit_open(SplitMix64::at(dist.seed, index));
  if (dist.kind == DistKind::cauchy_standard) {
    return std::tan(M_PI * (u - 0.5));
  }
  return dist.mean + std::sqrt(dist.variance) * inverse_normal_cdf(u);
}

}  // namespace detail

inline Point sample_input(const DistributionSpec& dist, std::int64_t i) {
  Point x(dist.dimension);
  for (Eigen::Index j = 0; j < dist.dimension; ++j) {
    x(j) = detail::draw_coordinate(
        dist, static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(dist.dimension) +
                  static_cast<std::uint64_t>(j));
  }
  return x;
}

inline std::vector<Point> sample_inputs(const DistributionSpec& dist, std::int64_t n) {
  validate(dist);
  if (n < 1) throw parameter_error("sample count must be >= 1");
  std::vector<Point> points(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n),
               [&](std::size_t i) { points[i] = sample_input(dist, static_cast<std::int64_t>(i)); });
  return points;
}

// Draw n inputs, push them through the network, and evaluate the SDF:
// the i-th result is g(f(x_i)) for the i-th point of the sample stream.
inline std::vector<double> pipeline(const NetworkSpec& net, const DistributionSpec& dist,
                                    const SetSpec& spec, std::int64_t n,
                                    const ProjectionOptions& opts = {}) {
  validate(dist);
  if (n < 1) throw parameter_error("sample count must be >= 1");
  if (dist.dimension != net.input_dim()) {
    throw spec_error("distribution dimension " + std::to_string(dist.dimension) +
                     " does not match network input dimension " +
                     std::to_string(net.input_dim()));
  }
  if (spec.dimension() != net.output_dim()) {
    throw spec_error("set dimension " + std::to_string(spec.dimension()) +
                     " does not match network output dimension " +
                     std::to_string(net.output_dim()));
  }
  std::vector<double> values(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    values[i] = spec.evaluate(forward(net, sample_input(dist, static_cast<std::int64_t>(i))), opts);
  });
  return values;
}

// Random dense ReLU network with weight scale 1/sqrt(fan_in) and zero
// biases; the final layer is linear. Deterministic in the seed.
inline NetworkSpec generate_network(const std::vector<Eigen::Index>& sizes, std::uint64_t seed) {
  if (sizes.size() < 2) throw parameter_error("need at least input and output sizes");
  SplitMix64 rng(seed);
  std::vector<Layer> layers;
  for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
    Eigen::Index fan_in = sizes[k];
    Eigen::Index fan_out = sizes[k + 1];
    if (fan_in < 1 || fan_out < 1) throw parameter_error("layer sizes must be >= 1");
    Layer layer;
    layer.weights = Matrix(fan_out, fan_in);
    double scale = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (Eigen::Index r = 0; r < fan_out; ++r) {
      for (Eigen::Index c = 0; c < fan_in; ++c) {
        layer.weights(r, c) = scale * inverse_normal_cdf(rng.next_unit_open());
      }
    }
    layer.bias = Vector::Zero(fan_out);
    layer.activation = (k + 2 == sizes.size()) ? Activation::identity : Activation::relu;
    layers.push_back(std::move(layer));
  }
  return NetworkSpec(std::move(layers));
}

}  // namespace saver

#endif  // SAVER_MODEL_HPP
