#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "spikewave/core/error.hpp"

namespace spikewave {

// First-spike time inside one wave. Finite values are dimensionless and
// non-negative; "never" is a distinguished sentinel that orders after every
// finite latency.
class Latency {
 public:
  constexpr Latency() = default;
  explicit Latency(double t) : t_(t) {
    if (!(t >= 0.0) || t == kNeverValue) {
      throw ContractViolation("latency must be finite and non-negative");
    }
  }

  static constexpr Latency never() { return Latency{}; }

  constexpr bool is_never() const { return t_ == kNeverValue; }
  constexpr bool fired() const { return !is_never(); }
  // Only meaningful when fired().
  constexpr double value() const { return t_; }

  friend constexpr bool operator==(Latency, Latency) = default;
  friend constexpr auto operator<=>(Latency a, Latency b) {
    return a.t_ <=> b.t_;
  }

 private:
  static constexpr double kNeverValue = std::numeric_limits<double>::infinity();
  double t_ = kNeverValue;
};

// Dense row-major 2D array.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// Grayscale image, intensities in [0, 1].
using Image = Grid<double>;

enum class Layer : std::uint8_t { S1, C1, S2, C2 };

struct SpikeEvent {
  Layer layer = Layer::S1;
  std::uint32_t scale = 0;
  std::uint32_t channel = 0;  // orientation for S1/C1, feature for S2/C2
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  Latency latency;

  friend bool operator==(const SpikeEvent&, const SpikeEvent&) = default;
};

// Latency first, then raster order (scale, row, col, channel).
struct SpikeOrder {
  bool operator()(const SpikeEvent& a, const SpikeEvent& b) const {
    if (a.latency != b.latency) return a.latency < b.latency;
    if (a.scale != b.scale) return a.scale < b.scale;
    if (a.row != b.row) return a.row < b.row;
    if (a.col != b.col) return a.col < b.col;
    return a.channel < b.channel;
  }
};

struct LatencyMap {
  std::uint32_t scale = 0;
  std::uint32_t channel = 0;
  Grid<Latency> grid;
};

struct TensorShape {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t orientations = 0;

  std::size_t size() const { return rows * cols * orientations; }
  std::size_t index(std::size_t r, std::size_t c, std::size_t o) const {
    return (r * cols + c) * orientations + o;
  }
  friend bool operator==(const TensorShape&, const TensorShape&) = default;
};

// The trainable C1->S2 weights: exactly one tensor per feature, shared by
// every S2 position and scale.
class SynapseBank {
 public:
  SynapseBank() = default;
  SynapseBank(std::size_t n_features, TensorShape shape, double fill = 0.0)
      : n_features_(n_features),
        shape_(shape),
        weights_(n_features * shape.size(), fill) {}

  std::size_t n_features() const { return n_features_; }
  const TensorShape& shape() const { return shape_; }

  std::span<double> feature(std::size_t f) {
    return {weights_.data() + f * shape_.size(), shape_.size()};
  }
  std::span<const double> feature(std::size_t f) const {
    return {weights_.data() + f * shape_.size(), shape_.size()};
  }

  double& at(std::size_t f, std::size_t r, std::size_t c, std::size_t o) {
    return weights_[f * shape_.size() + shape_.index(r, c, o)];
  }
  double at(std::size_t f, std::size_t r, std::size_t c, std::size_t o) const {
    return weights_[f * shape_.size() + shape_.index(r, c, o)];
  }

  std::span<double> all() { return weights_; }
  std::span<const double> all() const { return weights_; }

  friend bool operator==(const SynapseBank&, const SynapseBank&) = default;

 private:
  std::size_t n_features_ = 0;
  TensorShape shape_;
  std::vector<double> weights_;
};

}  // namespace spikewave
