#include "vistain/features.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vistain/rng.hpp"

namespace vistain {

namespace {

constexpr int kPool = 32;
constexpr int kHistBins = 16;
constexpr int kRawDim = kPool * kPool * 3 + 3 * kHistBins;

// Block boundaries that cover [0, extent) with kPool contiguous spans; spans
// repeat pixels when extent < kPool.
inline int block_lo(int i, int extent) { return std::min(i * extent / kPool, extent - 1); }
inline int block_hi(int i, int extent) { return std::max((i + 1) * extent / kPool, block_lo(i, extent) + 1); }

Eigen::VectorXd raw_descriptor(const RgbImage& img) {
  Eigen::VectorXd raw(kRawDim);
  Eigen::Index k = 0;
  for (int by = 0; by < kPool; ++by) {
    const int y0 = block_lo(by, img.height);
    const int y1 = block_hi(by, img.height);
    for (int bx = 0; bx < kPool; ++bx) {
      const int x0 = block_lo(bx, img.width);
      const int x1 = block_hi(bx, img.width);
      Eigen::Vector3d acc = Eigen::Vector3d::Zero();
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) acc += img.pixels.row(img.index(x, y)).transpose();
      acc /= static_cast<double>((y1 - y0) * (x1 - x0));
      raw.segment<3>(k) = acc;
      k += 3;
    }
  }
  for (int c = 0; c < 3; ++c) {
    Eigen::VectorXd hist = Eigen::VectorXd::Zero(kHistBins);
    for (Eigen::Index p = 0; p < img.pixel_count(); ++p) {
      int b = static_cast<int>(img.pixels(p, c) * kHistBins);
      if (b >= kHistBins) b = kHistBins - 1;
      hist[b] += 1.0;
    }
    raw.segment(k, kHistBins) = hist / static_cast<double>(img.pixel_count());
    k += kHistBins;
  }
  return raw;
}

}  // namespace

FeatureCollection toy_feature_extractor(const std::vector<RgbImage>& imgs, int out_dim,
                                        std::uint64_t seed) {
  if (imgs.empty()) throw InvalidInputError("toy_feature_extractor: empty image list");
  if (out_dim < 8) throw InvalidInputError("toy_feature_extractor: out_dim must be >= 8");
  for (const RgbImage& img : imgs) {
    img.validate("toy_feature_extractor");
    if (img.width != imgs.front().width || img.height != imgs.front().height)
      throw DimensionError("toy_feature_extractor: images must share dimensions");
  }

  SplitMix64 rng(seed);
  Eigen::MatrixXd projection(out_dim, kRawDim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(kRawDim));
  for (int r = 0; r < out_dim; ++r)
    for (int c = 0; c < kRawDim; ++c) projection(r, c) = rng.normal() * scale;

  FeatureCollection out;
  out.data.resize(static_cast<Eigen::Index>(imgs.size()), out_dim);
  for (std::size_t i = 0; i < imgs.size(); ++i)
    out.data.row(static_cast<Eigen::Index>(i)) = (projection * raw_descriptor(imgs[i])).transpose();
  return out;
}

void write_features_csv(const std::string& path, const FeatureCollection& features) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw IoError("cannot open feature CSV for writing: " + path);
  std::fprintf(f, "%" PRId64 ",%" PRId64 "\n", static_cast<std::int64_t>(features.n()),
               static_cast<std::int64_t>(features.d()));
  for (Eigen::Index i = 0; i < features.n(); ++i) {
    for (Eigen::Index j = 0; j < features.d(); ++j)
      std::fprintf(f, j == 0 ? "%.17g" : ",%.17g", features.data(i, j));
    std::fputc('\n', f);
  }
  if (std::fclose(f) != 0) throw IoError("failed writing feature CSV: " + path);
}

FeatureCollection read_features_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open feature CSV for reading: " + path);

  std::string line;
  if (!std::getline(in, line))
    throw ParseError(path + ":1: missing n,d header");
  std::int64_t n = 0, d = 0;
  char trailing = 0;
  if (std::sscanf(line.c_str(), "%" SCNd64 ",%" SCNd64 "%c", &n, &d, &trailing) != 2 ||
      n < 0 || d <= 0)
    throw ParseError(path + ":1: malformed header, expected \"n,d\"");

  FeatureCollection out;
  out.data.resize(n, d);
  for (std::int64_t i = 0; i < n; ++i) {
    const int line_no = static_cast<int>(i) + 2;
    if (!std::getline(in, line))
      throw ParseError(path + ":" + std::to_string(line_no) + ": missing feature row");
    std::stringstream ss(line);
    std::string cell;
    std::int64_t j = 0;
    while (std::getline(ss, cell, ',')) {
      if (j >= d)
        throw ParseError(path + ":" + std::to_string(line_no) + ": row has more than " +
                         std::to_string(d) + " values");
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
      if (used != cell.size())
        throw ParseError(path + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
      out.data(i, j++) = v;
    }
    if (j != d)
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(d) +
                       " values, got " + std::to_string(j));
  }
  return out;
}

}  // namespace vistain
