#ifndef VISTAIN_TISSUE_HPP
#define VISTAIN_TISSUE_HPP

#include <vector>

#include "vistain/color.hpp"
#include "vistain/image.hpp"

namespace vistain {

// Mean-pools factor x factor blocks; edge blocks average over the pixels
// available. Output dimensions are ceil(H/factor) x ceil(W/factor).
template <typename Scalar>
RgbImageT<Scalar> downsample_mean(const RgbImageT<Scalar>& img, int factor) {
  if (factor < 1) throw InvalidInputError("downsample_mean: factor must be >= 1");
  if (factor == 1) return img;

  RgbImageT<Scalar> out;
  out.width = (img.width + factor - 1) / factor;
  out.height = (img.height + factor - 1) / factor;
  out.pixels.setZero(static_cast<Eigen::Index>(out.width) * out.height, 3);

  for (int oy = 0; oy < out.height; ++oy) {
    const int y0 = oy * factor;
    const int y1 = std::min(y0 + factor, img.height);
    for (int ox = 0; ox < out.width; ++ox) {
      const int x0 = ox * factor;
      const int x1 = std::min(x0 + factor, img.width);
      Eigen::Matrix<Scalar, 1, 3> acc = Eigen::Matrix<Scalar, 1, 3>::Zero();
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) acc += img.pixels.row(img.index(x, y));
      out.pixels.row(out.index(ox, oy)) = acc / Scalar((y1 - y0) * (x1 - x0));
    }
  }
  return out;
}

// Otsu's threshold over a 256-bin histogram spanning [min, max] of the data.
// Returns the boundary value between the two classes; values strictly below
// it belong to the lower class. Throws when the histogram has no spread.
inline double otsu_threshold(const Eigen::Ref<const Eigen::VectorXd>& values) {
  if (values.size() == 0) throw InvalidInputError("otsu_threshold: no samples");
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  if (!(hi - lo > 1e-12))
    throw DegenerateHistogramError("otsu_threshold: all samples share one value");

  constexpr int kBins = 256;
  const double bin_width = (hi - lo) / kBins;
  std::vector<std::int64_t> hist(kBins, 0);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    int b = static_cast<int>((values[i] - lo) / bin_width);
    if (b >= kBins) b = kBins - 1;
    ++hist[static_cast<std::size_t>(b)];
  }

  const double total = static_cast<double>(values.size());
  double sum_all = 0.0;
  for (int b = 0; b < kBins; ++b) sum_all += hist[static_cast<std::size_t>(b)] * (b + 0.5);

  double w0 = 0.0, sum0 = 0.0, best = -1.0;
  int best_bin = 0;
  for (int b = 0; b < kBins - 1; ++b) {
    w0 += hist[static_cast<std::size_t>(b)];
    if (w0 == 0.0) continue;
    const double w1 = total - w0;
    if (w1 == 0.0) break;
    sum0 += hist[static_cast<std::size_t>(b)] * (b + 0.5);
    const double mu0 = sum0 / w0;
    const double mu1 = (sum_all - sum0) / w1;
    const double between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
    if (between > best) {
      best = between;
      best_bin = b;
    }
  }
  return lo + (best_bin + 1) * bin_width;
}

// Tissue is darker than the white slide background: mask = L < Otsu(L) on a
// mean-pooled low-resolution view of the image. Mask dimensions are
// ceil(H/downsample) x ceil(W/downsample).
template <typename Scalar>
TissueMask tissue_mask(const RgbImageT<Scalar>& img, int downsample = 1) {
  const RgbImageT<Scalar> low = downsample_mean(img, downsample);
  const LabImageT<Scalar> lab = rgb_to_lab(low);
  const Eigen::VectorXd lum = lab.values.col(0).template cast<double>();
  const double threshold = otsu_threshold(lum);

  TissueMask mask;
  mask.width = low.width;
  mask.height = low.height;
  mask.data = lum.array() < threshold;
  return mask;
}

// Nearest-neighbour upscale of a low-resolution mask back onto a full
// resolution grid (each full-res pixel takes the mask value of the block it
// was pooled into).
inline TissueMask upsample_mask(const TissueMask& mask, int factor, int width, int height) {
  if (factor < 1) throw InvalidInputError("upsample_mask: factor must be >= 1");
  if ((width + factor - 1) / factor != mask.width ||
      (height + factor - 1) / factor != mask.height)
    throw DimensionError("upsample_mask: target dimensions do not match mask grid");

  TissueMask out;
  out.width = width;
  out.height = height;
  out.data.resize(static_cast<Eigen::Index>(width) * height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      out.data[static_cast<Eigen::Index>(y) * width + x] = mask.at(x / factor, y / factor);
  return out;
}

}  // namespace vistain

#endif
