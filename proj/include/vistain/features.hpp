#ifndef VISTAIN_FEATURES_HPP
#define VISTAIN_FEATURES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vistain/frechet.hpp"
#include "vistain/image.hpp"

namespace vistain {

// Deterministic stand-in for a pretrained feature network: each image is
// mean-pooled to 32x32, per-channel 16-bin intensity histograms are appended,
// and the result is projected through a seeded fixed random matrix to
// out_dim dimensions. Identical (image, seed, out_dim) always yields
// identical features.
FeatureCollection toy_feature_extractor(const std::vector<RgbImage>& imgs, int out_dim,
                                        std::uint64_t seed);

// CSV interchange with any external extractor. First line is "n,d", then n
// rows of d comma-separated values printed at 17 significant digits, which
// round-trips IEEE doubles exactly.
void write_features_csv(const std::string& path, const FeatureCollection& features);
FeatureCollection read_features_csv(const std::string& path);

}  // namespace vistain

#endif
