#ifndef VISTAIN_STAIN_HPP
#define VISTAIN_STAIN_HPP

#include <Eigen/Dense>
#include <array>
#include <cstdint>

#include "vistain/color.hpp"
#include "vistain/image.hpp"
#include "vistain/nmf.hpp"
#include "vistain/tissue.hpp"

namespace vistain {

// Two stains, one unit-norm OD colour vector per row. Rows are ordered so
// that row 0 carries the larger blue-channel OD component; that fixes the
// permutation ambiguity of the factorization. For H&E this puts
// haematoxylin first.
struct StainMatrix {
  Eigen::Matrix<double, 2, 3> rows;

  void validate() const {
    if (!rows.allFinite() || (rows.array() < 0.0).any())
      throw InvalidInputError("StainMatrix: entries must be finite and nonnegative");
    for (int r = 0; r < 2; ++r)
      if (std::abs(rows.row(r).norm() - 1.0) > 1e-9)
        throw InvalidInputError("StainMatrix: row " + std::to_string(r) + " is not unit norm");
    if (rows(0, 2) < rows(1, 2))
      throw InvalidInputError("StainMatrix: rows not in canonical (blue-descending) order");
  }

  static StainMatrix from_unnormalized(const Eigen::Matrix<double, 2, 3>& m) {
    Eigen::Matrix<double, 2, 3> h = m;
    for (int r = 0; r < 2; ++r) {
      const double n = h.row(r).norm();
      if (!(n > 0.0))
        throw DegenerateInputError("StainMatrix: zero stain vector");
      h.row(r) /= n;
    }
    if (h(0, 2) < h(1, 2)) h.row(0).swap(h.row(1));
    StainMatrix sm{h};
    sm.validate();
    return sm;
  }
};

// Per-pixel stain intensities in OD units, one column per stain.
struct ConcentrationMap {
  int width = 0;
  int height = 0;
  Eigen::Matrix<double, Eigen::Dynamic, 2> values;

  Eigen::Index pixel_count() const { return static_cast<Eigen::Index>(width) * height; }
};

struct StainEstimationOptions {
  double i0 = 1.0;
  double eps = 1.0 / 255.0;
  // Pixels whose maximum-channel OD falls below this are treated as
  // background and excluded from the factorization.
  double min_od = 0.05;
  NmfOptions nmf;
};

// Subsamples tissue pixels, converts them to OD, drops near-background
// pixels, and factorizes the remainder into two stain vectors.
inline StainMatrix estimate_stain_matrix(const RgbImage& img, const TissueMask& mask,
                                         int sample_count, std::uint64_t seed,
                                         StainEstimationOptions opts = {}) {
  if (mask.width != img.width || mask.height != img.height)
    throw DimensionError("estimate_stain_matrix: mask dimensions do not match image");
  if (sample_count < 100)
    throw InvalidInputError("estimate_stain_matrix: sample_count must be >= 100");
  const Eigen::Index tissue = mask.tissue_count();
  if (tissue < 100)
    throw InsufficientTissueError("estimate_stain_matrix: fewer than 100 tissue pixels");

  std::vector<Eigen::Index> tissue_idx;
  tissue_idx.reserve(static_cast<std::size_t>(tissue));
  for (Eigen::Index p = 0; p < mask.pixel_count(); ++p)
    if (mask.data[p]) tissue_idx.push_back(p);

  SplitMix64 rng(seed);
  const Eigen::Index take = std::min<Eigen::Index>(sample_count, tissue);
  const std::vector<std::int64_t> draw =
      rng.sample_without_replacement(static_cast<std::int64_t>(tissue), take);

  Eigen::MatrixXd od(take, 3);
  const double log10e = 1.0 / std::numbers::ln10;
  Eigen::Index kept = 0;
  for (Eigen::Index i = 0; i < take; ++i) {
    const Eigen::Index p = tissue_idx[static_cast<std::size_t>(draw[static_cast<std::size_t>(i)])];
    Eigen::RowVector3d row;
    for (int c = 0; c < 3; ++c) {
      const double v = img.pixels(p, c);
      row[c] = std::max(0.0, -std::log((v + opts.eps) / opts.i0) * log10e);
    }
    if (row.maxCoeff() >= opts.min_od) od.row(kept++) = row;
  }
  if (kept < 100)
    throw InsufficientTissueError(
        "estimate_stain_matrix: fewer than 100 usable stained pixels after OD filtering");
  od.conservativeResize(kept, 3);

  NmfOptions nmf_opts = opts.nmf;
  nmf_opts.seed = seed;
  const NmfResult nmf = nmf_factorize(od, 2, nmf_opts);
  return StainMatrix::from_unnormalized(nmf.h);
}

// Deconvolution via the Moore-Penrose pseudo-inverse of the stain matrix,
// clamped to nonnegative intensities. od_pixel ~ c^T * sm.
inline ConcentrationMap concentrations(const OdImage& od, const StainMatrix& sm) {
  if (od.channels() != 3)
    throw DimensionError("concentrations: OD image must have 3 channels");
  sm.validate();

  Eigen::JacobiSVD<Eigen::Matrix<double, 2, 3>> svd(sm.rows);
  const auto& sv = svd.singularValues();
  if (!(sv(1) > 0.0) || sv(0) / sv(1) > 1e8)
    throw SingularMatrixError("concentrations: stain vectors are linearly dependent");

  // Right pseudo-inverse: pinv = sm^T (sm sm^T)^-1, 3 x 2.
  const Eigen::Matrix2d gram = sm.rows * sm.rows.transpose();
  const Eigen::Matrix<double, 3, 2> pinv = sm.rows.transpose() * gram.inverse();

  ConcentrationMap cm;
  cm.width = od.width;
  cm.height = od.height;
  cm.values = (od.values * pinv).cwiseMax(0.0);
  return cm;
}

// Renders concentrations back through a stain basis.
inline OdImage render_od(const ConcentrationMap& cm, const StainMatrix& sm) {
  OdImage od;
  od.width = cm.width;
  od.height = cm.height;
  od.values = cm.values * sm.rows;
  return od;
}

struct MaxConcentration {
  Eigen::Vector2d value;
  // Set where the channel had no usable signal and the scale fell back to 1.
  std::array<bool, 2> degenerate{false, false};
};

// Robust per-stain scale: the nearest-rank percentile of concentrations over
// pixels above 0.01, falling back to the channel maximum when fewer than 100
// such pixels exist, and to 1.0 when even the maximum is zero.
inline MaxConcentration max_concentration(const ConcentrationMap& cm, double percentile = 99.0) {
  if (!(percentile > 0.0) || percentile > 100.0)
    throw InvalidInputError("max_concentration: percentile must be in (0, 100]");

  MaxConcentration out;
  for (int s = 0; s < 2; ++s) {
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(cm.values.rows()));
    for (Eigen::Index p = 0; p < cm.values.rows(); ++p)
      if (cm.values(p, s) > 0.01) vals.push_back(cm.values(p, s));

    if (vals.size() >= 100) {
      std::sort(vals.begin(), vals.end());
      const std::size_t rank = static_cast<std::size_t>(
          std::ceil(percentile / 100.0 * static_cast<double>(vals.size())));
      out.value[s] = vals[std::min(rank, vals.size()) - 1];
    } else {
      const double max_all = cm.values.rows() > 0 ? cm.values.col(s).maxCoeff() : 0.0;
      if (max_all > 0.0) {
        out.value[s] = max_all;
      } else {
        out.value[s] = 1.0;
        out.degenerate[static_cast<std::size_t>(s)] = true;
      }
    }
  }
  return out;
}

// Stain basis plus the concentration scale of the slide it came from; the
// target half of a normalization.
struct NormalizationReference {
  StainMatrix stain_matrix;
  Eigen::Vector2d max_concentration;

  void validate() const {
    stain_matrix.validate();
    if (!(max_concentration.array() > 0.0).all())
      throw InvalidInputError("NormalizationReference: max_concentration must be positive");
  }
};

// Convenience: estimate the stain matrix of an image and measure its
// concentration scale in one pass.
inline NormalizationReference fit_reference(const RgbImage& img, const TissueMask& mask,
                                            int sample_count, std::uint64_t seed,
                                            double percentile = 99.0,
                                            const StainEstimationOptions& opts = {}) {
  NormalizationReference ref;
  ref.stain_matrix = estimate_stain_matrix(img, mask, sample_count, seed, opts);
  const OdImage od = rgb_to_od(img, opts.i0, opts.eps);
  const ConcentrationMap cm = concentrations(od, ref.stain_matrix);
  ref.max_concentration = max_concentration(cm, percentile).value;
  ref.validate();
  return ref;
}

}  // namespace vistain

#endif
