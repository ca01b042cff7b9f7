#pragma once

#include <span>
#include <vector>

#include "spikewave/core/config.hpp"
#include "spikewave/core/types.hpp"
#include "spikewave/network/kernels.hpp"

namespace spikewave {

struct NetworkGeometry {
  std::vector<double> scale_factors{1.0, 0.71, 0.5, 0.35, 0.25};
  double s1_threshold = 0.05;
  int c1_window = 4;
  int c1_stride = 3;
  int rf = 8;
  int n_orientations = 4;
  int n_features = 10;
  int inhibition_radius = 3;

  static NetworkGeometry from_config(const RunConfig& cfg);
};

// Oriented edge detection with intensity-to-latency conversion on one
// (already rescaled) image. Per location and orientation the absolute
// response r becomes latency 1 - r / r_max, r_max being the strongest
// response anywhere in the image; responses under threshold * r_max never
// fire. Only the best orientation at each location survives.
// Output: one map per kernel, (rows - k + 1) x (cols - k + 1).
std::vector<LatencyMap> s1_encode(const Image& scaled, std::uint32_t scale,
                                  std::span<const OrientedKernel> kernels,
                                  double threshold = 0.05);

// Per-orientation min-latency pooling over window x window blocks placed
// every `stride` cells.
std::vector<LatencyMap> c1_pool(std::span<const LatencyMap> s1, int window,
                                int stride);

// C1 latencies of one scale, laid out [orientation][row][col].
struct C1Scale {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t orientations = 0;
  std::vector<Latency> latency;

  Latency at(std::size_t o, std::size_t r, std::size_t c) const {
    return latency[(o * rows + r) * cols + c];
  }
};

struct EncodedImage {
  std::vector<C1Scale> scales;     // empty C1Scale when a scale is too small
  std::vector<SpikeEvent> events;  // every C1 spike, in SpikeOrder
};

C1Scale to_c1_scale(std::span<const LatencyMap> c1);
std::vector<SpikeEvent> c1_events(std::span<const C1Scale> scales);

// S1 -> C1 over every scale. Scales whose rescaled image cannot hold a
// kernel, or whose S1 map cannot hold a C1 window, contribute nothing.
EncodedImage encode_image(const Image& image, const NetworkGeometry& geom,
                          std::span<const OrientedKernel> kernels);

}  // namespace spikewave
