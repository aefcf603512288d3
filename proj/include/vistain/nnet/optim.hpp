#ifndef VISTAIN_NNET_OPTIM_HPP
#define VISTAIN_NNET_OPTIM_HPP

#include <cmath>
#include <numbers>

#include "vistain/nnet/tensor.hpp"

namespace vistain::nnet {

// lr(step) = initial * 0.5 * (1 + cos(pi * step / total)); steps past the end
// clamp to zero.
struct CosineSchedule {
  double initial = 1e-3;
  std::int64_t total_steps = 1;
};

inline double cosine_lr(std::int64_t step, const CosineSchedule& sched) {
  if (!(sched.initial > 0.0) || sched.total_steps < 1)
    throw InvalidInputError("cosine_lr: schedule needs initial > 0 and total_steps >= 1");
  if (step < 0) throw InvalidInputError("cosine_lr: negative step");
  if (step >= sched.total_steps) return 0.0;
  return sched.initial * 0.5 *
         (1.0 + std::cos(std::numbers::pi * static_cast<double>(step) /
                         static_cast<double>(sched.total_steps)));
}

// Adam with bias correction. beta1 defaults to 0.5, the GAN-training setting
// used throughout this project. Grads are zeroed after each applied step.
template <typename Scalar>
class Adam {
public:
  explicit Adam(std::vector<Parameter<Scalar>*> params, double beta1 = 0.5,
                double beta2 = 0.999, double eps = 1e-8)
      : params_(std::move(params)),
        beta1_(static_cast<Scalar>(beta1)),
        beta2_(static_cast<Scalar>(beta2)),
        eps_(static_cast<Scalar>(eps)) {
    m_.reserve(params_.size());
    v_.reserve(params_.size());
    for (Parameter<Scalar>* p : params_) {
      m_.emplace_back(p->value.shape);
      v_.emplace_back(p->value.shape);
    }
  }

  void step(double lr) {
    ++step_count_;
    const Scalar correction1 = Scalar(1) - std::pow(beta1_, static_cast<Scalar>(step_count_));
    const Scalar correction2 = Scalar(1) - std::pow(beta2_, static_cast<Scalar>(step_count_));
    for (std::size_t i = 0; i < params_.size(); ++i) {
      auto& g = params_[i]->grad.data;
      m_[i].data = beta1_ * m_[i].data + (Scalar(1) - beta1_) * g;
      v_[i].data = beta2_ * v_[i].data + (Scalar(1) - beta2_) * g.square();
      params_[i]->value.data -= static_cast<Scalar>(lr) * (m_[i].data / correction1) /
                                ((v_[i].data / correction2).sqrt() + eps_);
      g.setZero();
    }
  }

  void zero_grad() {
    for (Parameter<Scalar>* p : params_) p->grad.data.setZero();
  }

  std::int64_t step_count() const { return step_count_; }

private:
  std::vector<Parameter<Scalar>*> params_;
  std::vector<Tensor<Scalar>> m_, v_;
  Scalar beta1_, beta2_, eps_;
  std::int64_t step_count_ = 0;
};

}  // namespace vistain::nnet

#endif
