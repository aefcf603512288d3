#ifndef VISTAIN_NORMALIZE_HPP
#define VISTAIN_NORMALIZE_HPP

#include "vistain/stain.hpp"

namespace vistain {

struct VahadaneOptions {
  int sample_count = 4000;
  double percentile = 99.0;
  StainEstimationOptions estimation;
};

// Structure-preserving normalization: deconvolve the source through its own
// stain basis, rescale each stain channel to the reference concentration
// scale, and re-render through the reference basis. Relative concentrations
// within a channel are untouched.
inline RgbImage normalize_vahadane(const RgbImage& src, const TissueMask& src_mask,
                                   const NormalizationReference& ref, std::uint64_t seed,
                                   const VahadaneOptions& opts = {}) {
  ref.validate();
  const StainMatrix src_sm =
      estimate_stain_matrix(src, src_mask, opts.sample_count, seed, opts.estimation);
  const OdImage od = rgb_to_od(src, opts.estimation.i0, opts.estimation.eps);
  ConcentrationMap cm = concentrations(od, src_sm);
  const MaxConcentration src_scale = max_concentration(cm, opts.percentile);

  for (int s = 0; s < 2; ++s)
    cm.values.col(s) *= ref.max_concentration[s] / src_scale.value[s];

  return od_to_rgb(render_od(cm, ref.stain_matrix), opts.estimation.i0);
}

struct ReinhardStats {
  Eigen::Vector3d mean;
  Eigen::Vector3d stddev;  // population standard deviation
  // Set where the channel had zero spread and the deviation was floored.
  std::array<bool, 3> stddev_floored{false, false, false};
};

// Per-LAB-channel mean and population standard deviation over tissue pixels.
// Background is excluded so the white slide does not drag channel means
// toward grey.
inline ReinhardStats reinhard_stats(const RgbImage& img, const TissueMask& mask) {
  if (mask.width != img.width || mask.height != img.height)
    throw DimensionError("reinhard_stats: mask dimensions do not match image");
  const Eigen::Index n = mask.tissue_count();
  if (n < 2) throw InsufficientTissueError("reinhard_stats: need at least 2 tissue pixels");

  const LabImage lab = rgb_to_lab(img);
  ReinhardStats stats;
  stats.mean.setZero();
  for (Eigen::Index p = 0; p < lab.pixel_count(); ++p)
    if (mask.data[p]) stats.mean += lab.values.row(p).transpose();
  stats.mean /= static_cast<double>(n);

  Eigen::Vector3d var = Eigen::Vector3d::Zero();
  for (Eigen::Index p = 0; p < lab.pixel_count(); ++p)
    if (mask.data[p]) {
      const Eigen::Vector3d d = lab.values.row(p).transpose() - stats.mean;
      var += d.cwiseProduct(d);
    }
  var /= static_cast<double>(n);

  for (int c = 0; c < 3; ++c) {
    stats.stddev[c] = std::sqrt(var[c]);
    // Constant tissue accumulates only round-off variance; floor it.
    if (stats.stddev[c] < 1e-6) {
      stats.stddev[c] = 1e-6;
      stats.stddev_floored[static_cast<std::size_t>(c)] = true;
    }
  }
  return stats;
}

// Shifts the LAB mean and deviation of the source tissue onto the target
// statistics. Background pixels pass through unchanged.
inline RgbImage reinhard_normalize(const RgbImage& src, const TissueMask& src_mask,
                                   const ReinhardStats& target) {
  if (!(target.stddev.array() > 0.0).all())
    throw InvalidInputError("reinhard_normalize: target stddev must be positive");
  const ReinhardStats source = reinhard_stats(src, src_mask);

  LabImage lab = rgb_to_lab(src);
  for (Eigen::Index p = 0; p < lab.pixel_count(); ++p) {
    if (!src_mask.data[p]) continue;
    for (int c = 0; c < 3; ++c)
      lab.values(p, c) = (lab.values(p, c) - source.mean[c]) *
                             (target.stddev[c] / source.stddev[c]) +
                         target.mean[c];
  }
  RgbImage out = lab_to_rgb(lab);
  for (Eigen::Index p = 0; p < out.pixel_count(); ++p)
    if (!src_mask.data[p]) out.pixels.row(p) = src.pixels.row(p);
  return out;
}

}  // namespace vistain

#endif
