#ifndef VISTAIN_SDC_HPP
#define VISTAIN_SDC_HPP

#include <array>
#include <cstdint>

#include "vistain/stain.hpp"

namespace vistain {

struct BinaryMask {
  int width = 0;
  int height = 0;
  Eigen::Array<bool, Eigen::Dynamic, 1> data;

  std::int64_t count() const { return data.count(); }
};

// Mask r is true where the concentration of stain r reaches its threshold.
inline std::array<BinaryMask, 2> stain_masks(const ConcentrationMap& cm,
                                             const Eigen::Vector2d& thresholds) {
  if (!(thresholds.array() > 0.0).all())
    throw InvalidInputError("stain_masks: thresholds must be positive");
  std::array<BinaryMask, 2> masks;
  for (int s = 0; s < 2; ++s) {
    masks[static_cast<std::size_t>(s)].width = cm.width;
    masks[static_cast<std::size_t>(s)].height = cm.height;
    masks[static_cast<std::size_t>(s)].data = cm.values.col(s).array() >= thresholds[s];
  }
  return masks;
}

// Sorensen-Dice overlap, 2|X n Y| / (|X| + |Y|). Two empty masks agree
// perfectly on the absence of stain, so that case is defined as 1.
inline double dice(const BinaryMask& x, const BinaryMask& y) {
  if (x.width != y.width || x.height != y.height)
    throw DimensionError("dice: mask dimensions differ");
  const std::int64_t nx = x.count();
  const std::int64_t ny = y.count();
  if (nx + ny == 0) return 1.0;
  const std::int64_t inter = (x.data && y.data).count();
  return 2.0 * static_cast<double>(inter) / static_cast<double>(nx + ny);
}

struct SdcStainReport {
  double threshold = 0.0;
  std::int64_t target_positive = 0;
  std::int64_t virtual_positive = 0;
  std::int64_t intersection = 0;
  double dice = 0.0;
};

struct SdcReport {
  std::array<SdcStainReport, 2> stains;
};

struct SdcOptions {
  double i0 = 1.0;
  double eps = 1.0 / 255.0;
};

// Deconvolves both images through the same stain basis (masks are only
// comparable over a shared basis), thresholds each stain channel, and scores
// the overlap.
inline SdcReport staining_dice_coefficient(const RgbImage& virtual_img,
                                           const RgbImage& target_img, const StainMatrix& sm,
                                           const Eigen::Vector2d& thresholds,
                                           const SdcOptions& opts = {}) {
  if (virtual_img.width != target_img.width || virtual_img.height != target_img.height)
    throw DimensionError("staining_dice_coefficient: image dimensions differ");

  const ConcentrationMap cv = concentrations(rgb_to_od(virtual_img, opts.i0, opts.eps), sm);
  const ConcentrationMap ct = concentrations(rgb_to_od(target_img, opts.i0, opts.eps), sm);
  const auto mv = stain_masks(cv, thresholds);
  const auto mt = stain_masks(ct, thresholds);

  SdcReport report;
  for (std::size_t s = 0; s < 2; ++s) {
    SdcStainReport& r = report.stains[s];
    r.threshold = thresholds[static_cast<int>(s)];
    r.target_positive = mt[s].count();
    r.virtual_positive = mv[s].count();
    r.intersection = (mt[s].data && mv[s].data).count();
    r.dice = dice(mt[s], mv[s]);
  }
  return report;
}

}  // namespace vistain

#endif
