#ifndef VISTAIN_RNG_HPP
#define VISTAIN_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace vistain {

// SplitMix64 (Steele, Lea, Flood 2014). Every seeded computation in the
// toolkit draws from this generator so that results are reproducible from a
// single integer seed. The update and output functions are fixed here and
// must not change between releases; checkpoints and synthetic fixtures depend
// on the exact stream.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller (cosine branch only; the sine half is
  // discarded to keep the stream position independent of call parity).
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Uniform integer in [0, n) by the multiply-shift map. The bias for any n
  // far below 2^64 is unmeasurable at our sample counts.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Fisher-Yates, iterating from the back.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices drawn from [0, population), in draw order
  // (partial Fisher-Yates).
  std::vector<std::int64_t> sample_without_replacement(std::int64_t population,
                                                       std::int64_t k) {
    std::vector<std::int64_t> idx(static_cast<std::size_t>(population));
    for (std::int64_t i = 0; i < population; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) {
      std::int64_t j = i + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(population - i)));
      std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
      out.push_back(idx[static_cast<std::size_t>(i)]);
    }
    return out;
  }

private:
  std::uint64_t state_;
};

}  // namespace vistain

#endif
