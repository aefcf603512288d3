#ifndef VISTAIN_NNET_NET_HPP
#define VISTAIN_NNET_NET_HPP

#include <memory>

#include "vistain/nnet/layers.hpp"

namespace vistain::nnet {

template <typename Scalar>
class Sequential {
public:
  Sequential() = default;
  explicit Sequential(std::string name) : name_(std::move(name)) {}

  template <typename L, typename... Args>
  L& emplace(Args&&... args) {
    auto layer = std::make_unique<L>(std::forward<Args>(args)...);
    L& ref = *layer;
    layers_.push_back(std::move(layer));
    return ref;
  }

  Tensor<Scalar> forward(Tensor<Scalar> x, Mode mode) {
    for (auto& layer : layers_) x = layer->forward(x, mode);
    return x;
  }

  Tensor<Scalar> backward(Tensor<Scalar> grad) {
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) grad = (*it)->backward(grad);
    return grad;
  }

  std::vector<Parameter<Scalar>*> params() {
    std::vector<Parameter<Scalar>*> out;
    for (auto& layer : layers_)
      for (Parameter<Scalar>* p : layer->params()) out.push_back(p);
    return out;
  }

  std::vector<std::pair<std::string, Tensor<Scalar>*>> buffers() {
    std::vector<std::pair<std::string, Tensor<Scalar>*>> out;
    for (auto& layer : layers_)
      for (auto& b : layer->buffers()) out.push_back(b);
    return out;
  }

  void init(SplitMix64& rng) {
    for (auto& layer : layers_) layer->init(rng);
  }

  void zero_grad() {
    for (Parameter<Scalar>* p : params()) p->grad.data.setZero();
  }

  const std::string& name() const { return name_; }
  std::size_t size() const { return layers_.size(); }
  Layer<Scalar>& layer(std::size_t i) { return *layers_[i]; }

private:
  std::string name_;
  std::vector<std::unique_ptr<Layer<Scalar>>> layers_;
};

}  // namespace vistain::nnet

#endif
