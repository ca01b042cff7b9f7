#pragma once

#include "spikewave/core/rng.hpp"
#include "spikewave/core/types.hpp"

namespace spikewave {

enum class SyntheticClass { Target, Clutter };

// Desk-scale stand-in for an object/background task. Targets carry a fixed
// motif (two horizontal bars stacked over one vertical bar) shifted by up to
// `jitter` pixels; clutter images carry the motif's bars with shuffled
// orientations at independent random positions. Both classes add the same
// number of randomly placed, randomly oriented distractor bars, and no two
// bars touch. All bars of an image share one contrast.
struct SyntheticParams {
  int size = 64;
  int bar_length = 16;
  int bar_thickness = 3;
  int jitter = 8;            // max |shift| of the motif box, pixels
  double background = 0.1;
  double contrast_lo = 0.4;  // bar intensity above background
  double contrast_hi = 0.9;
  double noise_sigma = 0.02;
  int distractors = 4;       // extra random bars in both classes
};

struct Bar {
  double center_row = 0.0;
  double center_col = 0.0;
  int orientation = 0;  // 0: horizontal, 1: 45 deg, 2: vertical, 3: 135 deg
};

// Motif bars with the box centred in the image and no jitter.
std::vector<Bar> canonical_motif(const SyntheticParams& p);

// Draws bars (intensity background + contrast) onto a background image.
void draw_bars(Image& image, const std::vector<Bar>& bars, int length,
               int thickness, double intensity);

Image generate_synthetic(SyntheticClass cls, const SyntheticParams& p,
                         Rng& rng);

}  // namespace spikewave
