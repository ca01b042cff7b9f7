#include "spikewave/ingestion/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "spikewave/core/error.hpp"

namespace spikewave {
namespace {

// Minimal netpbm header tokenizer: whitespace separated, '#' to end of line
// is a comment.
class PnmReader {
 public:
  explicit PnmReader(std::vector<unsigned char> bytes) : bytes_(std::move(bytes)) {}

  std::string token() {
    skip_space_and_comments();
    std::string out;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_])) {
      out.push_back(static_cast<char>(bytes_[pos_++]));
    }
    return out;
  }

  long number(const char* what) {
    const std::string t = token();
    if (t.empty() || !std::all_of(t.begin(), t.end(), ::isdigit)) {
      throw IoError(std::string("bad PNM ") + what);
    }
    return std::stol(t);
  }

  // Exactly one whitespace byte separates the header from raster data.
  void skip_single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw IoError("bad PNM header terminator");
    }
    ++pos_;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }
  unsigned char byte() { return bytes_[pos_++]; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::vector<unsigned char> bytes_;
  std::size_t pos_ = 0;
};

double read_sample(PnmReader& r, long maxval) {
  if (maxval < 256) {
    if (r.remaining() < 1) throw IoError("PNM raster is truncated");
    return r.byte();
  }
  if (r.remaining() < 2) throw IoError("PNM raster is truncated");
  const unsigned hi = r.byte();
  const unsigned lo = r.byte();
  return static_cast<double>((hi << 8) | lo);
}

}  // namespace

Image load_grayscale(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image " + path.string());
  std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in), {}};
  PnmReader r(std::move(bytes));

  const std::string magic = r.token();
  if (magic != "P5" && magic != "P2" && magic != "P6") {
    throw IoError("unsupported image format in " + path.string() +
                  " (expected PGM P5/P2 or PPM P6)");
  }
  const long cols = r.number("width");
  const long rows = r.number("height");
  const long maxval = r.number("maxval");
  if (cols <= 0 || rows <= 0) {
    throw IoError("zero-dimension image " + path.string());
  }
  if (maxval <= 0 || maxval > 65535) throw IoError("bad PNM maxval");

  Image img(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  const double scale = 1.0 / static_cast<double>(maxval);
  if (magic == "P2") {
    for (double& px : img.data()) {
      const long v = r.number("sample");
      if (v > maxval) throw IoError("PGM sample exceeds maxval");
      px = static_cast<double>(v) * scale;
    }
    return img;
  }
  r.skip_single_space();
  for (double& px : img.data()) {
    if (magic == "P5") {
      px = read_sample(r, maxval) * scale;
    } else {
      const double red = read_sample(r, maxval);
      const double green = read_sample(r, maxval);
      const double blue = read_sample(r, maxval);
      px = (0.299 * red + 0.587 * green + 0.114 * blue) * scale;
    }
    px = std::clamp(px, 0.0, 1.0);
  }
  return img;
}

void save_pgm_levels(const Grid<std::uint8_t>& levels,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write image " + path.string());
  out << "P5\n" << levels.cols() << " " << levels.rows() << "\n255\n";
  out.write(reinterpret_cast<const char*>(levels.data().data()),
            static_cast<std::streamsize>(levels.size()));
}

void save_pgm(const Image& image, const std::filesystem::path& path) {
  Grid<std::uint8_t> levels(image.rows(), image.cols());
  for (std::size_t i = 0; i < image.size(); ++i) {
    levels.data()[i] = static_cast<std::uint8_t>(
        std::lround(std::clamp(image.data()[i], 0.0, 1.0) * 255.0));
  }
  save_pgm_levels(levels, path);
}

Image resize_bilinear(const Image& image, std::size_t rows, std::size_t cols) {
  if (image.empty() || rows == 0 || cols == 0) {
    throw DimensionError("resize of an empty image");
  }
  if (rows == image.rows() && cols == image.cols()) return image;
  Image out(rows, cols);
  const double sy = static_cast<double>(image.rows()) / static_cast<double>(rows);
  const double sx = static_cast<double>(image.cols()) / static_cast<double>(cols);
  const auto max_r = static_cast<double>(image.rows() - 1);
  const auto max_c = static_cast<double>(image.cols() - 1);
  for (std::size_t r = 0; r < rows; ++r) {
    const double y = std::clamp((static_cast<double>(r) + 0.5) * sy - 0.5, 0.0, max_r);
    const auto y0 = static_cast<std::size_t>(y);
    const std::size_t y1 = std::min(y0 + 1, image.rows() - 1);
    const double fy = y - static_cast<double>(y0);
    for (std::size_t c = 0; c < cols; ++c) {
      const double x = std::clamp((static_cast<double>(c) + 0.5) * sx - 0.5, 0.0, max_c);
      const auto x0 = static_cast<std::size_t>(x);
      const std::size_t x1 = std::min(x0 + 1, image.cols() - 1);
      const double fx = x - static_cast<double>(x0);
      const double top = image(y0, x0) * (1 - fx) + image(y0, x1) * fx;
      const double bottom = image(y1, x0) * (1 - fx) + image(y1, x1) * fx;
      out(r, c) = top * (1 - fy) + bottom * fy;
    }
  }
  return out;
}

Image fit_longest_side(const Image& image, std::size_t longest) {
  if (image.empty()) throw DimensionError("resize of an empty image");
  const std::size_t big = std::max(image.rows(), image.cols());
  const auto scaled = [&](std::size_t n) {
    return std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(static_cast<double>(n) *
                                                static_cast<double>(longest) /
                                                static_cast<double>(big))));
  };
  return resize_bilinear(image, scaled(image.rows()), scaled(image.cols()));
}

Grid<double> gaussian_noise(std::size_t rows, std::size_t cols, double sigma,
                            Rng& rng) {
  if (!(sigma >= 0.0)) throw ContractViolation("noise sigma must be >= 0");
  Grid<double> noise(rows, cols);
  for (double& v : noise.data()) v = sigma * rng.normal();
  return noise;
}

Image add_gaussian_noise(const Image& image, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw ContractViolation("noise sigma must be >= 0");
  Image out = image;
  if (sigma == 0.0) return out;
  const Grid<double> noise = gaussian_noise(image.rows(), image.cols(), sigma, rng);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.data()[i] = std::clamp(out.data()[i] + noise.data()[i], 0.0, 1.0);
  }
  return out;
}

}  // namespace spikewave
