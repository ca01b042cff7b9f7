#include "spikewave/ingestion/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spikewave/core/error.hpp"

namespace spikewave {
namespace {

// Motif bar centres relative to the box origin, and the box extent.
struct MotifLayout {
  std::vector<Bar> bars;
  double box_rows = 0.0;
  double box_cols = 0.0;
};

MotifLayout motif_layout(const SyntheticParams& p) {
  const double len = p.bar_length;
  const double half_t = (p.bar_thickness - 1) / 2.0;
  const double gap = p.bar_thickness;  // space between stacked bars
  const double h1 = half_t;
  const double h2 = h1 + p.bar_thickness + gap;
  const double v_top = h2 + half_t + 1 + gap;
  MotifLayout m;
  m.bars = {
      {h1, (len - 1) / 2.0, 0},
      {h2, (len - 1) / 2.0, 0},
      {v_top + (len - 1) / 2.0, std::floor((len - 1) / 2.0), 2},
  };
  m.box_rows = v_top + len;
  m.box_cols = len;
  return m;
}

constexpr int kPlacementAttempts = 200;

// True when bar b overlaps a pixel already marked in `used`.
bool touches(const Grid<std::uint8_t>& used, const Bar& b,
             const SyntheticParams& p);

}  // namespace

std::vector<Bar> canonical_motif(const SyntheticParams& p) {
  MotifLayout m = motif_layout(p);
  const double r0 = std::floor((p.size - m.box_rows) / 2.0);
  const double c0 = std::floor((p.size - m.box_cols) / 2.0);
  for (Bar& b : m.bars) {
    b.center_row += r0;
    b.center_col += c0;
  }
  return m.bars;
}

void draw_bars(Image& image, const std::vector<Bar>& bars, int length,
               int thickness, double intensity) {
  constexpr double kSlack = 1e-9;
  const double half_len = (length - 1) / 2.0 + kSlack;
  const double half_thick = (thickness - 1) / 2.0 + kSlack;
  for (const Bar& b : bars) {
    const double theta = b.orientation * std::numbers::pi / 4.0;
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    for (std::size_t r = 0; r < image.rows(); ++r) {
      const double dr = static_cast<double>(r) - b.center_row;
      for (std::size_t col = 0; col < image.cols(); ++col) {
        const double dc = static_cast<double>(col) - b.center_col;
        const double along = -dr * s + dc * c;
        const double across = dr * c + dc * s;
        if (std::abs(along) <= half_len && std::abs(across) <= half_thick) {
          image(r, col) = intensity;
        }
      }
    }
  }
}

namespace {

bool touches(const Grid<std::uint8_t>& used, const Bar& b,
             const SyntheticParams& p) {
  Image mask(used.rows(), used.cols(), 0.0);
  draw_bars(mask, {b}, p.bar_length, p.bar_thickness, 1.0);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask.data()[i] > 0.0 && used.data()[i] != 0) return true;
  }
  return false;
}

}  // namespace

Image generate_synthetic(SyntheticClass cls, const SyntheticParams& p,
                         Rng& rng) {
  if (p.size < 32) throw ContractViolation("synthetic images need size >= 32");
  const auto shift = [&] {
    return static_cast<double>(rng.below(2 * static_cast<std::uint64_t>(p.jitter) + 1)) -
           p.jitter;
  };
  const double dr = shift();
  const double dc = shift();
  const double contrast = rng.uniform(p.contrast_lo, p.contrast_hi);

  const auto n = static_cast<std::size_t>(p.size);
  Grid<std::uint8_t> used(n, n, 0);
  const auto mark = [&](const Bar& b) {
    Image mask(n, n, 0.0);
    draw_bars(mask, {b}, p.bar_length, p.bar_thickness + 2, 1.0);
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask.data()[i] > 0.0) used.data()[i] = 1;
    }
  };
  // Uniform non-touching position anywhere the bar fits.
  const double margin = (p.bar_length - 1) / 2.0;
  const auto place = [&](Bar& b) {
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      b.center_row = std::round(margin + rng.uniform() * (p.size - 1 - 2 * margin));
      b.center_col = std::round(margin + rng.uniform() * (p.size - 1 - 2 * margin));
      if (!touches(used, b, p)) break;
    }
    mark(b);
  };

  std::vector<Bar> bars = canonical_motif(p);
  if (cls == SyntheticClass::Target) {
    for (Bar& b : bars) {
      b.center_row += dr;
      b.center_col += dc;
      mark(b);
    }
  } else {
    // The motif's bars with shuffled orientations at independent positions.
    std::vector<int> orient;
    for (const Bar& b : bars) orient.push_back(b.orientation);
    rng.shuffle(orient);
    for (std::size_t k = 0; k < bars.size(); ++k) {
      bars[k].orientation = orient[k];
      place(bars[k]);
    }
  }
  for (int k = 0; k < p.distractors; ++k) {
    Bar b;
    b.orientation = static_cast<int>(rng.below(4));
    place(b);
    bars.push_back(b);
  }

  Image img(static_cast<std::size_t>(p.size), static_cast<std::size_t>(p.size),
            p.background);
  draw_bars(img, bars, p.bar_length, p.bar_thickness, p.background + contrast);
  if (p.noise_sigma > 0.0) {
    for (double& px : img.data()) {
      px = std::clamp(px + p.noise_sigma * rng.normal(), 0.0, 1.0);
    }
  }
  return img;
}

}  // namespace spikewave
