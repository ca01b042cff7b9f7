#pragma once

#include <filesystem>

#include "spikewave/core/rng.hpp"
#include "spikewave/core/types.hpp"

namespace spikewave {

// Reads binary or ASCII PGM (P5/P2) and binary PPM (P6, converted with
// Rec. 601 luminance weights). Values are scaled by 1/maxval into [0, 1].
Image load_grayscale(const std::filesystem::path& path);

// Writes an 8-bit binary PGM; values are clamped to [0, 1] and rounded.
void save_pgm(const Image& image, const std::filesystem::path& path);
// Writes raw 0..255 levels (already quantized), used by reconstructions.
void save_pgm_levels(const Grid<std::uint8_t>& levels,
                     const std::filesystem::path& path);

// Bilinear resampling to the given size (pixel-center aligned).
Image resize_bilinear(const Image& image, std::size_t rows, std::size_t cols);

// Rescales so the longest side equals `longest`, preserving aspect ratio.
Image fit_longest_side(const Image& image, std::size_t longest);

// Unclamped i.i.d. N(0, sigma^2) field.
Grid<double> gaussian_noise(std::size_t rows, std::size_t cols, double sigma,
                            Rng& rng);

// image + gaussian_noise(...), clamped to [0, 1].
Image add_gaussian_noise(const Image& image, double sigma, Rng& rng);

}  // namespace spikewave
