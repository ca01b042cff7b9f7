#include "spikewave/network/reconstruct.hpp"

#include <algorithm>
#include <cmath>

namespace spikewave {

Grid<double> reconstruct_raw(std::span<const double> tensor,
                             const TensorShape& shape,
                             std::span<const OrientedKernel> kernels) {
  if (tensor.size() != shape.size()) {
    throw DimensionError("tensor size does not match its shape");
  }
  if (kernels.size() != shape.orientations) {
    throw DimensionError("need one kernel per orientation plane");
  }
  const std::size_t k = kernels.front().kernel.rows();
  Grid<double> out(shape.rows + k - 1, shape.cols + k - 1);
  for (std::size_t o = 0; o < shape.orientations; ++o) {
    const Grid<double>& ker = kernels[o].kernel;
    for (std::size_t r = 0; r < shape.rows; ++r) {
      for (std::size_t c = 0; c < shape.cols; ++c) {
        const double w = tensor[shape.index(r, c, o)];
        if (w == 0.0) continue;
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) out(r + i, c + j) += w * ker(i, j);
        }
      }
    }
  }
  return out;
}

Grid<std::uint8_t> reconstruct_feature(std::span<const double> tensor,
                                       const TensorShape& shape,
                                       std::span<const OrientedKernel> kernels) {
  const Grid<double> raw = reconstruct_raw(tensor, shape, kernels);
  Grid<std::uint8_t> out(raw.rows(), raw.cols(), 0);
  const auto [lo, hi] = std::minmax_element(raw.data().begin(), raw.data().end());
  const double span = *hi - *lo;
  if (!(span > 0.0)) return out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double x = (raw.data()[i] - *lo) / span * 255.0;
    out.data()[i] = static_cast<std::uint8_t>(std::lround(std::clamp(x, 0.0, 255.0)));
  }
  return out;
}

}  // namespace spikewave
