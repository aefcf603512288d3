#ifndef VISTAIN_NNET_TENSOR_HPP
#define VISTAIN_NNET_TENSOR_HPP

#include <Eigen/Dense>
#include <numeric>
#include <string>
#include <vector>

#include "vistain/errors.hpp"

namespace vistain::nnet {

// Dense tensor with NHWC layout for image batches; flat index
// ((n*H + h)*W + w)*C + c. Rank is free, only layers assign meaning.
template <typename Scalar>
struct Tensor {
  std::vector<int> shape;
  Eigen::Array<Scalar, Eigen::Dynamic, 1> data;

  Tensor() = default;
  explicit Tensor(std::vector<int> s) : shape(std::move(s)) {
    data.setZero(numel_of(shape));
  }

  static Eigen::Index numel_of(const std::vector<int>& s) {
    Eigen::Index n = 1;
    for (int d : s) n *= d;
    return n;
  }

  Eigen::Index numel() const { return data.size(); }
  int dim(std::size_t i) const { return shape[i]; }
  bool same_shape(const Tensor& other) const { return shape == other.shape; }

  Scalar& operator()(int n, int h, int w, int c) {
    return data[((static_cast<Eigen::Index>(n) * shape[1] + h) * shape[2] + w) * shape[3] + c];
  }
  Scalar operator()(int n, int h, int w, int c) const {
    return data[((static_cast<Eigen::Index>(n) * shape[1] + h) * shape[2] + w) * shape[3] + c];
  }

  // Row-major [rows, cols] matrix view over the flat buffer.
  using MatrixMap =
      Eigen::Map<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  using ConstMatrixMap =
      Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

  MatrixMap as_matrix(Eigen::Index rows, Eigen::Index cols) {
    return MatrixMap(data.data(), rows, cols);
  }
  ConstMatrixMap as_matrix(Eigen::Index rows, Eigen::Index cols) const {
    return ConstMatrixMap(data.data(), rows, cols);
  }

  std::string shape_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < shape.size(); ++i)
      s += (i ? "x" : "") + std::to_string(shape[i]);
    return s + "]";
  }

  template <typename Other>
  Tensor<Other> cast() const {
    Tensor<Other> out;
    out.shape = shape;
    out.data = data.template cast<Other>();
    return out;
  }
};

template <typename Scalar>
struct Parameter {
  std::string name;
  Tensor<Scalar> value;
  Tensor<Scalar> grad;

  explicit Parameter(std::string n, std::vector<int> shape)
      : name(std::move(n)), value(shape), grad(std::move(shape)) {}
};

enum class Mode {
  train,    // batch statistics, running buffers updated
  eval,     // running statistics, no state change
  measure,  // batch statistics, no state change (pure loss evaluation)
};

}  // namespace vistain::nnet

#endif
