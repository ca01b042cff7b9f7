#include "spikewave/network/encoding.hpp"

#include <algorithm>
#include <cmath>

#include "spikewave/ingestion/image_io.hpp"

namespace spikewave {
namespace {

// Responses this small are rounding noise of a zero-mean kernel.
constexpr double kResponseFloor = 1e-9;

}  // namespace

NetworkGeometry NetworkGeometry::from_config(const RunConfig& cfg) {
  NetworkGeometry g;
  g.scale_factors = cfg.scale_factors;
  g.s1_threshold = cfg.s1_threshold;
  g.c1_window = cfg.c1_window;
  g.c1_stride = cfg.c1_stride;
  g.rf = cfg.s2_rf;
  g.n_orientations = cfg.n_orientations;
  g.n_features = cfg.n_features;
  g.inhibition_radius = cfg.inhibition_radius;
  return g;
}

std::vector<LatencyMap> s1_encode(const Image& scaled, std::uint32_t scale,
                                  std::span<const OrientedKernel> kernels,
                                  double threshold) {
  if (kernels.empty()) throw ContractViolation("s1_encode needs kernels");
  const std::size_t k = kernels.front().kernel.rows();
  if (scaled.empty() || scaled.rows() < k || scaled.cols() < k) {
    throw DimensionError("image is smaller than the S1 kernel");
  }
  const std::size_t rows = scaled.rows() - k + 1;
  const std::size_t cols = scaled.cols() - k + 1;
  const std::size_t n = kernels.size();

  // |response| per orientation
  std::vector<Grid<double>> resp(n, Grid<double>(rows, cols));
  double r_max = 0.0;
  for (std::size_t o = 0; o < n; ++o) {
    const Grid<double>& ker = kernels[o].kernel;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        double acc = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) {
            acc += ker(i, j) * scaled(r + i, c + j);
          }
        }
        acc = std::abs(acc);
        if (acc < kResponseFloor) acc = 0.0;
        resp[o](r, c) = acc;
        r_max = std::max(r_max, acc);
      }
    }
  }

  std::vector<LatencyMap> maps(n);
  for (std::size_t o = 0; o < n; ++o) {
    maps[o].scale = scale;
    maps[o].channel = static_cast<std::uint32_t>(o);
    maps[o].grid = Grid<Latency>(rows, cols);
  }
  if (r_max <= 0.0) return maps;

  const double cutoff = threshold * r_max;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      // WTA across orientations; ties keep the lowest channel.
      std::size_t best = 0;
      for (std::size_t o = 1; o < n; ++o) {
        if (resp[o](r, c) > resp[best](r, c)) best = o;
      }
      const double v = resp[best](r, c);
      if (v > 0.0 && v >= cutoff) {
        maps[best].grid(r, c) = Latency(std::max(0.0, 1.0 - v / r_max));
      }
    }
  }
  return maps;
}

std::vector<LatencyMap> c1_pool(std::span<const LatencyMap> s1, int window,
                                int stride) {
  if (window < stride || stride < 1) {
    throw ContractViolation("c1_pool requires window >= stride >= 1");
  }
  std::vector<LatencyMap> out;
  out.reserve(s1.size());
  for (const LatencyMap& in : s1) {
    const auto w = static_cast<std::size_t>(window);
    const auto st = static_cast<std::size_t>(stride);
    if (in.grid.rows() < w || in.grid.cols() < w) {
      throw DimensionError("C1 window is larger than the S1 map");
    }
    const std::size_t rows = (in.grid.rows() - w) / st + 1;
    const std::size_t cols = (in.grid.cols() - w) / st + 1;
    LatencyMap m{in.scale, in.channel, Grid<Latency>(rows, cols)};
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        Latency best = Latency::never();
        for (std::size_t i = 0; i < w; ++i) {
          for (std::size_t j = 0; j < w; ++j) {
            best = std::min(best, in.grid(r * st + i, c * st + j));
          }
        }
        m.grid(r, c) = best;
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

C1Scale to_c1_scale(std::span<const LatencyMap> c1) {
  C1Scale s;
  if (c1.empty()) return s;
  s.rows = c1.front().grid.rows();
  s.cols = c1.front().grid.cols();
  s.orientations = c1.size();
  s.latency.reserve(s.orientations * s.rows * s.cols);
  for (const LatencyMap& m : c1) {
    if (m.grid.rows() != s.rows || m.grid.cols() != s.cols) {
      throw DimensionError("C1 maps of one scale must share dimensions");
    }
    s.latency.insert(s.latency.end(), m.grid.data().begin(), m.grid.data().end());
  }
  return s;
}

std::vector<SpikeEvent> c1_events(std::span<const C1Scale> scales) {
  std::vector<SpikeEvent> events;
  for (std::size_t s = 0; s < scales.size(); ++s) {
    const C1Scale& sc = scales[s];
    for (std::size_t o = 0; o < sc.orientations; ++o) {
      for (std::size_t r = 0; r < sc.rows; ++r) {
        for (std::size_t c = 0; c < sc.cols; ++c) {
          const Latency t = sc.at(o, r, c);
          if (t.is_never()) continue;
          events.push_back({Layer::C1, static_cast<std::uint32_t>(s),
                            static_cast<std::uint32_t>(o),
                            static_cast<std::uint32_t>(r),
                            static_cast<std::uint32_t>(c), t});
        }
      }
    }
  }
  std::sort(events.begin(), events.end(), SpikeOrder{});
  return events;
}

EncodedImage encode_image(const Image& image, const NetworkGeometry& geom,
                          std::span<const OrientedKernel> kernels) {
  if (image.empty()) throw DimensionError("cannot encode an empty image");
  const std::size_t k = kernels.front().kernel.rows();
  EncodedImage enc;
  enc.scales.resize(geom.scale_factors.size());
  for (std::size_t s = 0; s < geom.scale_factors.size(); ++s) {
    const double f = geom.scale_factors[s];
    const auto rows = static_cast<std::size_t>(
        std::lround(static_cast<double>(image.rows()) * f));
    const auto cols = static_cast<std::size_t>(
        std::lround(static_cast<double>(image.cols()) * f));
    if (rows < k || cols < k) continue;
    const std::size_t s1_rows = rows - k + 1;
    const std::size_t s1_cols = cols - k + 1;
    const auto w = static_cast<std::size_t>(geom.c1_window);
    if (s1_rows < w || s1_cols < w) continue;
    const Image scaled = resize_bilinear(image, rows, cols);
    const auto s1 = s1_encode(scaled, static_cast<std::uint32_t>(s), kernels,
                              geom.s1_threshold);
    const auto c1 = c1_pool(s1, geom.c1_window, geom.c1_stride);
    enc.scales[s] = to_c1_scale(c1);
  }
  enc.events = c1_events(enc.scales);
  return enc;
}

}  // namespace spikewave
