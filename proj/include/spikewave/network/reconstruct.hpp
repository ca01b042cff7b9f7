#pragma once

#include <cstdint>
#include <span>

#include "spikewave/core/types.hpp"
#include "spikewave/network/kernels.hpp"

namespace spikewave {

// Visualizes one feature tensor: each orientation plane is fully convolved
// with its oriented bar and the planes are summed. The result is stretched
// linearly to 0..255; a flat result maps to 0 everywhere.
// Output size: (rows + k - 1) x (cols + k - 1).
Grid<std::uint8_t> reconstruct_feature(std::span<const double> tensor,
                                       const TensorShape& shape,
                                       std::span<const OrientedKernel> kernels);

// Unnormalized sum of the per-orientation convolutions.
Grid<double> reconstruct_raw(std::span<const double> tensor,
                             const TensorShape& shape,
                             std::span<const OrientedKernel> kernels);

}  // namespace spikewave
