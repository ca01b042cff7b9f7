#pragma once

#include <vector>

#include "spikewave/core/types.hpp"

namespace spikewave {

// Zero-mean, unit-norm oriented bar. Orientation k is at k * 45 degrees:
// 0 horizontal, 1 rising diagonal, 2 vertical, 3 falling diagonal.
struct OrientedKernel {
  int orientation = 0;
  double angle_deg = 0.0;
  Grid<double> kernel;
};

inline constexpr int kKernelSize = 5;

std::vector<OrientedKernel> make_oriented_kernels(int n_orientations = 4,
                                                  int size = kKernelSize);

}  // namespace spikewave
