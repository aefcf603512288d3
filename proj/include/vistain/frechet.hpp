#ifndef VISTAIN_FRECHET_HPP
#define VISTAIN_FRECHET_HPP

#include <Eigen/Dense>

#include "vistain/errors.hpp"

namespace vistain {

// n feature vectors of dimension d, one per row.
struct FeatureCollection {
  Eigen::MatrixXd data;

  Eigen::Index n() const { return data.rows(); }
  Eigen::Index d() const { return data.cols(); }
};

struct GaussianStats {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

// Sample mean and unbiased (1/(n-1)) covariance, symmetrized.
inline GaussianStats gaussian_stats(const FeatureCollection& f) {
  if (f.n() < 2)
    throw InsufficientSamplesError("gaussian_stats: need at least 2 samples, got " +
                                   std::to_string(f.n()));
  if (!f.data.allFinite())
    throw InvalidInputError("gaussian_stats: non-finite feature value");

  GaussianStats g;
  g.mean = f.data.colwise().mean();
  const Eigen::MatrixXd centered = f.data.rowwise() - g.mean.transpose();
  g.cov = centered.transpose() * centered / static_cast<double>(f.n() - 1);
  g.cov = 0.5 * (g.cov + g.cov.transpose()).eval();
  return g;
}

// Symmetric PSD square root by eigendecomposition; slightly negative
// eigenvalues from round-off clamp to zero.
inline Eigen::MatrixXd sqrtm_psd(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw DimensionError("sqrtm_psd: matrix must be square");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (((a - a.transpose()).cwiseAbs().maxCoeff()) > 1e-8 * scale)
    throw InvalidInputError("sqrtm_psd: matrix is not symmetric within tolerance");

  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success)
    throw NumericError("sqrtm_psd: eigendecomposition failed");
  const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
}

// Squared Frechet distance between two Gaussians,
// |mu1 - mu2|^2 + tr(s1 + s2 - 2 (s1^1/2 s2 s1^1/2)^1/2).
// The symmetric-product form equals tr(sqrt(s1 s2)) for PSD inputs and keeps
// the inner matrix symmetric; round-off below zero clamps to zero.
inline double frechet_distance(const GaussianStats& g1, const GaussianStats& g2) {
  if (g1.mean.size() != g2.mean.size() || g1.cov.rows() != g2.cov.rows())
    throw DimensionError("frechet_distance: dimension mismatch");

  const Eigen::MatrixXd s1_half = sqrtm_psd(g1.cov);
  Eigen::MatrixXd inner = s1_half * g2.cov * s1_half;
  inner = 0.5 * (inner + inner.transpose()).eval();
  const Eigen::MatrixXd cross = sqrtm_psd(inner);

  const double mean_term = (g1.mean - g2.mean).squaredNorm();
  const double trace_term = (g1.cov + g2.cov - 2.0 * cross).trace();
  return std::max(0.0, mean_term + trace_term);
}

}  // namespace vistain

#endif
