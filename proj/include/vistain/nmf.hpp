#ifndef VISTAIN_NMF_HPP
#define VISTAIN_NMF_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "vistain/errors.hpp"
#include "vistain/rng.hpp"

namespace vistain {

struct NmfOptions {
  int max_iters = 400;
  // Stop when the relative decrease of the objective falls below tol.
  double tol = 1e-9;
  std::uint64_t seed = 0;
  // Uniform-positive initialization range. A narrow band keeps the initial
  // factor cone tight, so the multiplicative updates expand the basis rows
  // outward only as far as the data requires; a wide random band can start
  // outside the data cone and stall on a slack factorization.
  double init_lo = 0.9;
  double init_hi = 1.1;
};

struct NmfResult {
  Eigen::MatrixXd w;  // P x rank
  Eigen::MatrixXd h;  // rank x M
  // 0.5 * ||V - WH||_F^2 recorded after every iteration.
  std::vector<double> objective;
  double reconstruction_error = 0.0;  // final ||V - WH||_F
  int iterations = 0;
};

// Lee-Seung multiplicative updates for the Frobenius objective
// 0.5 * ||V - WH||_F^2, alternating H then W each iteration. Deterministic
// given the seed.
inline NmfResult nmf_factorize(const Eigen::MatrixXd& v, int rank, const NmfOptions& opts = {}) {
  if (rank < 1) throw InvalidInputError("nmf_factorize: rank must be >= 1");
  if (v.rows() < rank)
    throw DimensionError("nmf_factorize: need at least `rank` rows, got " +
                         std::to_string(v.rows()));
  if (!v.allFinite() || (v.array() < 0.0).any())
    throw InvalidInputError("nmf_factorize: input must be finite and nonnegative");
  if ((v.array() == 0.0).all())
    throw DegenerateInputError("nmf_factorize: input is identically zero");

  const Eigen::Index p = v.rows();
  const Eigen::Index m = v.cols();
  SplitMix64 rng(opts.seed);

  Eigen::MatrixXd w(p, rank), h(rank, m);
  for (Eigen::Index i = 0; i < p; ++i)
    for (int r = 0; r < rank; ++r) w(i, r) = rng.uniform(opts.init_lo, opts.init_hi);
  for (int r = 0; r < rank; ++r)
    for (Eigen::Index j = 0; j < m; ++j) h(r, j) = rng.uniform(opts.init_lo, opts.init_hi);

  constexpr double kDenomFloor = 1e-12;
  NmfResult res;
  res.objective.reserve(static_cast<std::size_t>(opts.max_iters));

  double prev = -1.0;
  for (int it = 0; it < opts.max_iters; ++it) {
    h.array() *= (w.transpose() * v).array() /
                 (w.transpose() * w * h).array().max(kDenomFloor);
    w.array() *= (v * h.transpose()).array() /
                 (w * (h * h.transpose())).array().max(kDenomFloor);

    const double obj = 0.5 * (v - w * h).squaredNorm();
    res.objective.push_back(obj);
    res.iterations = it + 1;
    if (prev >= 0.0 && prev > 0.0 && (prev - obj) / prev < opts.tol) break;
    prev = obj;
  }

  res.w = std::move(w);
  res.h = std::move(h);
  res.reconstruction_error = (v - res.w * res.h).norm();
  return res;
}

}  // namespace vistain

#endif
