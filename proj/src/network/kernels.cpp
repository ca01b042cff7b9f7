#include "spikewave/network/kernels.hpp"

#include <cmath>
#include <numbers>

namespace spikewave {

std::vector<OrientedKernel> make_oriented_kernels(int n_orientations,
                                                  int size) {
  constexpr double kProfileSigma = 1.0;
  const double centre = (size - 1) / 2.0;
  std::vector<OrientedKernel> out;
  for (int k = 0; k < n_orientations; ++k) {
    OrientedKernel ok;
    ok.orientation = k;
    ok.angle_deg = 180.0 * k / n_orientations;
    ok.kernel = Grid<double>(static_cast<std::size_t>(size),
                             static_cast<std::size_t>(size));
    const double theta = ok.angle_deg * std::numbers::pi / 180.0;
    // Bar direction in (row, col) is (-sin, cos); rows grow downwards.
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    double mean = 0.0;
    for (int r = 0; r < size; ++r) {
      for (int col = 0; col < size; ++col) {
        const double dr = r - centre;
        const double dc = col - centre;
        const double across = dr * c + dc * s;
        const double v = std::exp(-across * across / (2 * kProfileSigma * kProfileSigma));
        ok.kernel(r, col) = v;
        mean += v;
      }
    }
    mean /= size * size;
    double norm = 0.0;
    for (double& v : ok.kernel.data()) {
      v -= mean;
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (double& v : ok.kernel.data()) v /= norm;
    out.push_back(std::move(ok));
  }
  return out;
}

}  // namespace spikewave
