#ifndef VISTAIN_NNET_LAYERS_HPP
#define VISTAIN_NNET_LAYERS_HPP

#include <cmath>
#include <memory>
#include <utility>

#include "vistain/nnet/tensor.hpp"
#include "vistain/rng.hpp"

namespace vistain::nnet {

template <typename Scalar>
class Layer {
public:
  explicit Layer(std::string name) : name_(std::move(name)) {}
  virtual ~Layer() = default;

  virtual Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode mode) = 0;
  // Consumes the cached activations of the last forward; accumulates into
  // parameter grads and returns the input gradient.
  virtual Tensor<Scalar> backward(const Tensor<Scalar>& grad_out) = 0;

  virtual std::vector<Parameter<Scalar>*> params() { return {}; }
  virtual std::vector<std::pair<std::string, Tensor<Scalar>*>> buffers() { return {}; }
  virtual void init(SplitMix64&) {}

  const std::string& name() const { return name_; }

protected:
  void require_cache(bool have) const {
    if (!have) throw StateError(name_ + ": backward called before forward");
  }
  void require(bool cond, const std::string& msg) const {
    if (!cond) throw DimensionError(name_ + ": " + msg);
  }

private:
  std::string name_;
};

namespace detail {

struct ConvGeometry {
  int in_h = 0, in_w = 0, out_h = 0, out_w = 0;
  int pad_top = 0, pad_left = 0;
  int kernel = 0, stride = 0;

  // Same-padding with the ceil rule: out = ceil(in / stride), spare padding
  // goes to the bottom/right.
  static ConvGeometry same(int in_h, int in_w, int kernel, int stride) {
    ConvGeometry g;
    g.in_h = in_h;
    g.in_w = in_w;
    g.kernel = kernel;
    g.stride = stride;
    g.out_h = (in_h + stride - 1) / stride;
    g.out_w = (in_w + stride - 1) / stride;
    const int pad_h = std::max((g.out_h - 1) * stride + kernel - in_h, 0);
    const int pad_w = std::max((g.out_w - 1) * stride + kernel - in_w, 0);
    g.pad_top = pad_h / 2;
    g.pad_left = pad_w / 2;
    return g;
  }
};

// Patch matrix: one row per output position, one column per (ky, kx, ci).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> im2col(
    const Tensor<Scalar>& x, const ConvGeometry& g) {
  const int n = x.shape[0], c = x.shape[3];
  const int k = g.kernel;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> cols(
      static_cast<Eigen::Index>(n) * g.out_h * g.out_w, static_cast<Eigen::Index>(k) * k * c);
  cols.setZero();
  for (int b = 0; b < n; ++b)
    for (int oy = 0; oy < g.out_h; ++oy)
      for (int ox = 0; ox < g.out_w; ++ox) {
        const Eigen::Index row =
            (static_cast<Eigen::Index>(b) * g.out_h + oy) * g.out_w + ox;
        for (int ky = 0; ky < k; ++ky) {
          const int iy = oy * g.stride - g.pad_top + ky;
          if (iy < 0 || iy >= g.in_h) continue;
          for (int kx = 0; kx < k; ++kx) {
            const int ix = ox * g.stride - g.pad_left + kx;
            if (ix < 0 || ix >= g.in_w) continue;
            const Eigen::Index src =
                ((static_cast<Eigen::Index>(b) * g.in_h + iy) * g.in_w + ix) * c;
            const Eigen::Index dst = (static_cast<Eigen::Index>(ky) * k + kx) * c;
            for (int ci = 0; ci < c; ++ci) cols(row, dst + ci) = x.data[src + ci];
          }
        }
      }
  return cols;
}

// Adjoint of im2col: scatter-adds patch rows back onto the image grid.
template <typename Scalar>
Tensor<Scalar> col2im(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>& cols, int n,
    int c, const ConvGeometry& g) {
  Tensor<Scalar> x({n, g.in_h, g.in_w, c});
  const int k = g.kernel;
  for (int b = 0; b < n; ++b)
    for (int oy = 0; oy < g.out_h; ++oy)
      for (int ox = 0; ox < g.out_w; ++ox) {
        const Eigen::Index row =
            (static_cast<Eigen::Index>(b) * g.out_h + oy) * g.out_w + ox;
        for (int ky = 0; ky < k; ++ky) {
          const int iy = oy * g.stride - g.pad_top + ky;
          if (iy < 0 || iy >= g.in_h) continue;
          for (int kx = 0; kx < k; ++kx) {
            const int ix = ox * g.stride - g.pad_left + kx;
            if (ix < 0 || ix >= g.in_w) continue;
            const Eigen::Index dst =
                ((static_cast<Eigen::Index>(b) * g.in_h + iy) * g.in_w + ix) * c;
            const Eigen::Index src = (static_cast<Eigen::Index>(ky) * k + kx) * c;
            for (int ci = 0; ci < c; ++ci) x.data[dst + ci] += cols(row, src + ci);
          }
        }
      }
  return x;
}

}  // namespace detail

// Strided 2-D convolution with same-padding. Weight layout [kh, kw, Cin,
// Cout], flattened row-major so the GEMM view is [kh*kw*Cin, Cout].
template <typename Scalar>
class Conv2d : public Layer<Scalar> {
public:
  Conv2d(std::string name, int in_ch, int out_ch, int kernel = 3, int stride = 2)
      : Layer<Scalar>(std::move(name)),
        in_ch_(in_ch),
        out_ch_(out_ch),
        kernel_(kernel),
        stride_(stride),
        weight_(this->name() + ".weight", {kernel, kernel, in_ch, out_ch}),
        bias_(this->name() + ".bias", {out_ch}) {}

  void init(SplitMix64& rng) override {
    const double fan_in = static_cast<double>(kernel_) * kernel_ * in_ch_;
    const double stddev = std::sqrt(2.0 / fan_in);
    for (Eigen::Index i = 0; i < weight_.value.numel(); ++i)
      weight_.value.data[i] = static_cast<Scalar>(rng.normal() * stddev);
    bias_.value.data.setZero();
  }

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode) override {
    this->require(x.shape.size() == 4 && x.shape[3] == in_ch_,
                  "expected NHWC input with " + std::to_string(in_ch_) + " channels, got " +
                      x.shape_string());
    geom_ = detail::ConvGeometry::same(x.shape[1], x.shape[2], kernel_, stride_);
    batch_ = x.shape[0];
    cols_ = detail::im2col(x, geom_);
    has_cache_ = true;

    Tensor<Scalar> y({batch_, geom_.out_h, geom_.out_w, out_ch_});
    auto w = weight_.value.as_matrix(static_cast<Eigen::Index>(kernel_) * kernel_ * in_ch_, out_ch_);
    auto ymat = y.as_matrix(cols_.rows(), out_ch_);
    ymat.noalias() = cols_ * w;
    ymat.rowwise() += bias_.value.as_matrix(1, out_ch_).row(0);
    return y;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& grad_out) override {
    this->require_cache(has_cache_);
    this->require(grad_out.shape ==
                      std::vector<int>({batch_, geom_.out_h, geom_.out_w, out_ch_}),
                  "upstream gradient shape " + grad_out.shape_string() + " does not match output");
    auto g = grad_out.as_matrix(cols_.rows(), out_ch_);
    auto w = weight_.value.as_matrix(cols_.cols(), out_ch_);
    auto dw = weight_.grad.as_matrix(cols_.cols(), out_ch_);
    dw.noalias() += cols_.transpose() * g;
    bias_.grad.as_matrix(1, out_ch_).row(0) += g.colwise().sum();

    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> dcols =
        g * w.transpose();
    return detail::col2im(dcols, batch_, in_ch_, geom_);
  }

  std::vector<Parameter<Scalar>*> params() override { return {&weight_, &bias_}; }

private:
  int in_ch_, out_ch_, kernel_, stride_;
  Parameter<Scalar> weight_, bias_;
  detail::ConvGeometry geom_;
  int batch_ = 0;
  bool has_cache_ = false;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> cols_;
};

// Transposed convolution, the exact adjoint of Conv2d with the same geometry:
// its forward is Conv2d's backward-data pass, so stride 2 doubles the spatial
// dimensions. Weight layout matches the adjoint conv: [kh, kw, Cout, Cin].
template <typename Scalar>
class ConvTranspose2d : public Layer<Scalar> {
public:
  ConvTranspose2d(std::string name, int in_ch, int out_ch, int kernel = 3, int stride = 2)
      : Layer<Scalar>(std::move(name)),
        in_ch_(in_ch),
        out_ch_(out_ch),
        kernel_(kernel),
        stride_(stride),
        weight_(this->name() + ".weight", {kernel, kernel, out_ch, in_ch}),
        bias_(this->name() + ".bias", {out_ch}) {}

  void init(SplitMix64& rng) override {
    const double fan_in = static_cast<double>(kernel_) * kernel_ * in_ch_;
    const double stddev = std::sqrt(2.0 / fan_in);
    for (Eigen::Index i = 0; i < weight_.value.numel(); ++i)
      weight_.value.data[i] = static_cast<Scalar>(rng.normal() * stddev);
    bias_.value.data.setZero();
  }

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode) override {
    this->require(x.shape.size() == 4 && x.shape[3] == in_ch_,
                  "expected NHWC input with " + std::to_string(in_ch_) + " channels, got " +
                      x.shape_string());
    batch_ = x.shape[0];
    const int out_h = x.shape[1] * stride_;
    const int out_w = x.shape[2] * stride_;
    geom_ = detail::ConvGeometry::same(out_h, out_w, kernel_, stride_);
    // The adjoint conv must map [out_h, out_w] down to exactly the input grid.
    this->require(geom_.out_h == x.shape[1] && geom_.out_w == x.shape[2],
                  "inconsistent transpose geometry");
    x_cache_ = x;
    has_cache_ = true;

    const Eigen::Index k_cols = static_cast<Eigen::Index>(kernel_) * kernel_ * out_ch_;
    auto xmat = x.as_matrix(static_cast<Eigen::Index>(batch_) * x.shape[1] * x.shape[2], in_ch_);
    auto w = weight_.value.as_matrix(k_cols, in_ch_);
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> cols =
        xmat * w.transpose();
    Tensor<Scalar> y = detail::col2im(cols, batch_, out_ch_, geom_);
    auto ymat = y.as_matrix(static_cast<Eigen::Index>(batch_) * out_h * out_w, out_ch_);
    ymat.rowwise() += bias_.value.as_matrix(1, out_ch_).row(0);
    return y;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& grad_out) override {
    this->require_cache(has_cache_);
    this->require(grad_out.shape ==
                      std::vector<int>({batch_, geom_.in_h, geom_.in_w, out_ch_}),
                  "upstream gradient shape " + grad_out.shape_string() + " does not match output");
    const Eigen::Index rows =
        static_cast<Eigen::Index>(batch_) * x_cache_.shape[1] * x_cache_.shape[2];
    const Eigen::Index k_cols = static_cast<Eigen::Index>(kernel_) * kernel_ * out_ch_;

    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> gcols =
        detail::im2col(grad_out, geom_);
    auto xmat = x_cache_.as_matrix(rows, in_ch_);
    auto w = weight_.value.as_matrix(k_cols, in_ch_);
    auto dw = weight_.grad.as_matrix(k_cols, in_ch_);
    dw.noalias() += gcols.transpose() * xmat;
    bias_.grad.as_matrix(1, out_ch_).row(0) +=
        grad_out.as_matrix(static_cast<Eigen::Index>(batch_) * geom_.in_h * geom_.in_w, out_ch_)
            .colwise()
            .sum();

    Tensor<Scalar> dx;
    dx.shape = x_cache_.shape;
    dx.data.resize(x_cache_.numel());
    auto dxmat = dx.as_matrix(rows, in_ch_);
    dxmat.noalias() = gcols * w;
    return dx;
  }

  std::vector<Parameter<Scalar>*> params() override { return {&weight_, &bias_}; }

private:
  int in_ch_, out_ch_, kernel_, stride_;
  Parameter<Scalar> weight_, bias_;
  detail::ConvGeometry geom_;
  int batch_ = 0;
  bool has_cache_ = false;
  Tensor<Scalar> x_cache_;
};

// Per-channel batch normalization over batch and spatial axes with learned
// scale/shift. Running statistics (population variance) feed eval mode.
template <typename Scalar>
class BatchNorm : public Layer<Scalar> {
public:
  explicit BatchNorm(std::string name, int channels, double momentum = 0.1, double eps = 1e-5)
      : Layer<Scalar>(std::move(name)),
        channels_(channels),
        momentum_(static_cast<Scalar>(momentum)),
        eps_(static_cast<Scalar>(eps)),
        gamma_(this->name() + ".gamma", {channels}),
        beta_(this->name() + ".beta", {channels}),
        running_mean_({channels}),
        running_var_({channels}) {
    gamma_.value.data.setOnes();
    running_var_.data.setOnes();
  }

  void init(SplitMix64&) override {
    gamma_.value.data.setOnes();
    beta_.value.data.setZero();
    running_mean_.data.setZero();
    running_var_.data.setOnes();
  }

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode mode) override {
    this->require(x.shape.size() == 4 && x.shape[3] == channels_,
                  "expected NHWC input with " + std::to_string(channels_) + " channels, got " +
                      x.shape_string());
    const Eigen::Index rows = x.numel() / channels_;
    auto xm = x.as_matrix(rows, channels_);

    Eigen::Array<Scalar, 1, Eigen::Dynamic> mean(channels_), var(channels_);
    if (mode == Mode::eval) {
      mean = running_mean_.data.transpose();
      var = running_var_.data.transpose();
    } else {
      mean = xm.colwise().mean().array();
      var = (xm.rowwise() - mean.matrix()).array().square().colwise().mean();
      if (mode == Mode::train) {
        running_mean_.data = (Scalar(1) - momentum_) * running_mean_.data +
                             momentum_ * mean.transpose();
        running_var_.data =
            (Scalar(1) - momentum_) * running_var_.data + momentum_ * var.transpose();
      }
    }

    inv_std_ = (var + eps_).rsqrt();
    xhat_.shape = x.shape;
    xhat_.data.resize(x.numel());
    auto xhm = xhat_.as_matrix(rows, channels_);
    xhm = (xm.rowwise() - mean.matrix()).array().rowwise() * inv_std_;
    has_cache_ = true;
    backward_eval_ = mode == Mode::eval;

    Tensor<Scalar> y;
    y.shape = x.shape;
    y.data.resize(x.numel());
    auto ym = y.as_matrix(rows, channels_);
    ym = (xhm.array().rowwise() * gamma_.value.data.transpose().array()).rowwise() +
         beta_.value.data.transpose().array();
    return y;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& grad_out) override {
    this->require_cache(has_cache_);
    this->require(grad_out.shape == xhat_.shape, "upstream gradient shape mismatch");
    const Eigen::Index rows = grad_out.numel() / channels_;
    auto g = grad_out.as_matrix(rows, channels_);
    auto xh = xhat_.as_matrix(rows, channels_);

    gamma_.grad.data += (g.array() * xh.array()).colwise().sum().transpose();
    beta_.grad.data += g.colwise().sum().transpose().array();

    Tensor<Scalar> dx;
    dx.shape = xhat_.shape;
    dx.data.resize(xhat_.numel());
    auto dxm = dx.as_matrix(rows, channels_);

    Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> dxhat =
        g.array().rowwise() * gamma_.value.data.transpose().array();
    if (backward_eval_) {
      // Statistics are constants in eval mode.
      dxm = (dxhat.rowwise() * inv_std_).matrix();
      return dx;
    }
    const Scalar m = static_cast<Scalar>(rows);
    const Eigen::Array<Scalar, 1, Eigen::Dynamic> sum_dxhat = dxhat.colwise().sum();
    const Eigen::Array<Scalar, 1, Eigen::Dynamic> sum_dxhat_xhat =
        (dxhat * xh.array()).colwise().sum();
    // dx = inv_std/m * (m*dxhat - sum(dxhat) - xhat * sum(dxhat*xhat))
    dxm = ((dxhat * m).rowwise() - sum_dxhat -
           (xh.array().rowwise() * sum_dxhat_xhat)).rowwise() *
          (inv_std_ / m);
    return dx;
  }

  std::vector<Parameter<Scalar>*> params() override { return {&gamma_, &beta_}; }
  std::vector<std::pair<std::string, Tensor<Scalar>*>> buffers() override {
    return {{this->name() + ".running_mean", &running_mean_},
            {this->name() + ".running_var", &running_var_}};
  }

private:
  int channels_;
  Scalar momentum_, eps_;
  Parameter<Scalar> gamma_, beta_;
  Tensor<Scalar> running_mean_, running_var_;
  Tensor<Scalar> xhat_;
  Eigen::Array<Scalar, 1, Eigen::Dynamic> inv_std_;
  bool has_cache_ = false;
  bool backward_eval_ = false;
};

template <typename Scalar>
class LeakyRelu : public Layer<Scalar> {
public:
  explicit LeakyRelu(std::string name, double alpha = 0.2)
      : Layer<Scalar>(std::move(name)), alpha_(static_cast<Scalar>(alpha)) {}

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode) override {
    x_cache_ = x;
    has_cache_ = true;
    Tensor<Scalar> y;
    y.shape = x.shape;
    y.data = (x.data >= Scalar(0)).select(x.data, alpha_ * x.data);
    return y;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& grad_out) override {
    this->require_cache(has_cache_);
    this->require(grad_out.shape == x_cache_.shape, "upstream gradient shape mismatch");
    Tensor<Scalar> dx;
    dx.shape = x_cache_.shape;
    dx.data = (x_cache_.data >= Scalar(0)).select(grad_out.data, alpha_ * grad_out.data);
    return dx;
  }

  Scalar alpha() const { return alpha_; }

private:
  Scalar alpha_;
  Tensor<Scalar> x_cache_;
  bool has_cache_ = false;
};

template <typename Scalar>
class Relu : public Layer<Scalar> {
public:
  explicit Relu(std::string name) : Layer<Scalar>(std::move(name)) {}

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode) override {
    x_cache_ = x;
    has_cache_ = true;
    Tensor<Scalar> y;
    y.shape = x.shape;
    y.data = x.data.max(Scalar(0));
    return y;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& grad_out) override {
    this->require_cache(has_cache_);
    this->require(grad_out.shape == x_cache_.shape, "upstream gradient shape mismatch");
    Tensor<Scalar> dx;
    dx.shape = x_cache_.shape;
    dx.data = (x_cache_.data > Scalar(0)).select(grad_out.data, Scalar(0));
    return dx;
  }

private:
  Tensor<Scalar> x_cache_;
  bool has_cache_ = false;
};

template <typename Scalar>
class Tanh : public Layer<Scalar> {
public:
  explicit Tanh(std::string name) : Layer<Scalar>(std::move(name)) {}

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode) override {
    y_cache_.shape = x.shape;
    y_cache_.data = x.data.tanh();
    has_cache_ = true;
    return y_cache_;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& grad_out) override {
    this->require_cache(has_cache_);
    this->require(grad_out.shape == y_cache_.shape, "upstream gradient shape mismatch");
    Tensor<Scalar> dx;
    dx.shape = y_cache_.shape;
    dx.data = grad_out.data * (Scalar(1) - y_cache_.data.square());
    return dx;
  }

private:
  Tensor<Scalar> y_cache_;
  bool has_cache_ = false;
};

template <typename Scalar>
class Sigmoid : public Layer<Scalar> {
public:
  explicit Sigmoid(std::string name) : Layer<Scalar>(std::move(name)) {}

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode) override {
    y_cache_.shape = x.shape;
    y_cache_.data = (Scalar(1) / (Scalar(1) + (-x.data).exp()));
    has_cache_ = true;
    return y_cache_;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& grad_out) override {
    this->require_cache(has_cache_);
    this->require(grad_out.shape == y_cache_.shape, "upstream gradient shape mismatch");
    Tensor<Scalar> dx;
    dx.shape = y_cache_.shape;
    dx.data = grad_out.data * y_cache_.data * (Scalar(1) - y_cache_.data);
    return dx;
  }

private:
  Tensor<Scalar> y_cache_;
  bool has_cache_ = false;
};

// Flattens everything after the batch axis and applies x W + b.
template <typename Scalar>
class Dense : public Layer<Scalar> {
public:
  Dense(std::string name, int in_dim, int out_dim)
      : Layer<Scalar>(std::move(name)),
        in_dim_(in_dim),
        out_dim_(out_dim),
        weight_(this->name() + ".weight", {in_dim, out_dim}),
        bias_(this->name() + ".bias", {out_dim}) {}

  void init(SplitMix64& rng) override {
    const double stddev = std::sqrt(2.0 / in_dim_);
    for (Eigen::Index i = 0; i < weight_.value.numel(); ++i)
      weight_.value.data[i] = static_cast<Scalar>(rng.normal() * stddev);
    bias_.value.data.setZero();
  }

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode) override {
    const int n = x.shape[0];
    this->require(x.numel() % n == 0 && x.numel() / n == in_dim_,
                  "expected " + std::to_string(in_dim_) + " features per sample, got " +
                      x.shape_string());
    x_cache_ = x;
    has_cache_ = true;

    Tensor<Scalar> y({n, out_dim_});
    auto xm = x.as_matrix(n, in_dim_);
    auto w = weight_.value.as_matrix(in_dim_, out_dim_);
    auto ym = y.as_matrix(n, out_dim_);
    ym.noalias() = xm * w;
    ym.rowwise() += bias_.value.as_matrix(1, out_dim_).row(0);
    return y;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& grad_out) override {
    this->require_cache(has_cache_);
    const int n = x_cache_.shape[0];
    this->require(grad_out.shape == std::vector<int>({n, out_dim_}),
                  "upstream gradient shape mismatch");
    auto g = grad_out.as_matrix(n, out_dim_);
    auto xm = x_cache_.as_matrix(n, in_dim_);
    weight_.grad.as_matrix(in_dim_, out_dim_).noalias() += xm.transpose() * g;
    bias_.grad.as_matrix(1, out_dim_).row(0) += g.colwise().sum();

    Tensor<Scalar> dx;
    dx.shape = x_cache_.shape;
    dx.data.resize(x_cache_.numel());
    dx.as_matrix(n, in_dim_).noalias() = g * weight_.value.as_matrix(in_dim_, out_dim_).transpose();
    return dx;
  }

  std::vector<Parameter<Scalar>*> params() override { return {&weight_, &bias_}; }

private:
  int in_dim_, out_dim_;
  Parameter<Scalar> weight_, bias_;
  Tensor<Scalar> x_cache_;
  bool has_cache_ = false;
};

// y = scale * x + shift; the [0,1] <-> [-1,1] image range adapters.
template <typename Scalar>
class AffineMap : public Layer<Scalar> {
public:
  AffineMap(std::string name, double scale, double shift)
      : Layer<Scalar>(std::move(name)),
        scale_(static_cast<Scalar>(scale)),
        shift_(static_cast<Scalar>(shift)) {}

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode) override {
    shape_ = x.shape;
    has_cache_ = true;
    Tensor<Scalar> y;
    y.shape = x.shape;
    y.data = scale_ * x.data + shift_;
    return y;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& grad_out) override {
    this->require_cache(has_cache_);
    this->require(grad_out.shape == shape_, "upstream gradient shape mismatch");
    Tensor<Scalar> dx;
    dx.shape = shape_;
    dx.data = scale_ * grad_out.data;
    return dx;
  }

private:
  Scalar scale_, shift_;
  std::vector<int> shape_;
  bool has_cache_ = false;
};

}  // namespace vistain::nnet

#endif
