#ifndef VISTAIN_NNET_CHECKPOINT_HPP
#define VISTAIN_NNET_CHECKPOINT_HPP

#include <string>
#include <utility>
#include <vector>

#include "vistain/nnet/tensor.hpp"

namespace vistain::nnet {

// Weight checkpoint: magic "VSTCKPT1", a little-endian manifest
// (u32 entry count, then per entry u32 name length, name bytes, u32 rank,
// u32 dims[rank]) followed by the raw float32 payloads in manifest order.
// The loader requires names and shapes to match the expected entries exactly.

using NamedTensors = std::vector<std::pair<std::string, Tensor<float>*>>;

void save_checkpoint(const std::string& path, const NamedTensors& entries);
void load_checkpoint(const std::string& path, const NamedTensors& entries);

}  // namespace vistain::nnet

#endif
