#ifndef VISTAIN_IMAGE_HPP
#define VISTAIN_IMAGE_HPP

#include <Eigen/Dense>
#include <string>

#include "vistain/errors.hpp"

namespace vistain {

// Raster containers. Pixels are stored as one row per pixel in row-major
// raster order (index = y * width + x), one column per channel. Column-major
// Eigen storage keeps each channel contiguous, so per-channel expressions
// (`img.pixels.col(c)`) are cheap.

template <typename Scalar>
struct RgbImageT {
  int width = 0;
  int height = 0;
  // H*W x 3, samples in [0, 1].
  Eigen::Matrix<Scalar, Eigen::Dynamic, 3> pixels;

  Eigen::Index pixel_count() const { return static_cast<Eigen::Index>(width) * height; }

  Eigen::Index index(int x, int y) const {
    return static_cast<Eigen::Index>(y) * width + x;
  }

  static RgbImageT constant(int width, int height, Scalar value) {
    RgbImageT img;
    img.width = width;
    img.height = height;
    img.pixels.setConstant(static_cast<Eigen::Index>(width) * height, 3, value);
    return img;
  }

  void validate(const std::string& what = "RgbImage") const {
    if (width < 1 || height < 1)
      throw InvalidInputError(what + ": dimensions must be at least 1x1");
    if (pixels.rows() != pixel_count())
      throw InvalidInputError(what + ": pixel buffer does not match dimensions");
    if (!pixels.allFinite())
      throw InvalidInputError(what + ": non-finite sample");
    if ((pixels.array() < Scalar(0)).any() || (pixels.array() > Scalar(1)).any())
      throw InvalidInputError(what + ": sample outside [0, 1]");
  }
};

template <typename Scalar>
struct OdImageT {
  int width = 0;
  int height = 0;
  // H*W x C, nonnegative optical densities. C is 3 for raw colour OD.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> values;

  int channels() const { return static_cast<int>(values.cols()); }
  Eigen::Index pixel_count() const { return static_cast<Eigen::Index>(width) * height; }
};

template <typename Scalar>
struct LabImageT {
  int width = 0;
  int height = 0;
  // H*W x 3: L in [0, 100], then a, b.
  Eigen::Matrix<Scalar, Eigen::Dynamic, 3> values;

  Eigen::Index pixel_count() const { return static_cast<Eigen::Index>(width) * height; }
};

struct TissueMask {
  int width = 0;
  int height = 0;
  // true = tissue.
  Eigen::Array<bool, Eigen::Dynamic, 1> data;

  Eigen::Index pixel_count() const { return static_cast<Eigen::Index>(width) * height; }
  Eigen::Index tissue_count() const { return data.count(); }

  bool at(int x, int y) const { return data[static_cast<Eigen::Index>(y) * width + x]; }

  static TissueMask full(int width, int height, bool value = true) {
    TissueMask m;
    m.width = width;
    m.height = height;
    m.data.setConstant(static_cast<Eigen::Index>(width) * height, value);
    return m;
  }
};

using RgbImage = RgbImageT<double>;
using OdImage = OdImageT<double>;
using LabImage = LabImageT<double>;

}  // namespace vistain

#endif
