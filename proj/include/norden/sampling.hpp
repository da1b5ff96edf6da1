#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "norden/core.hpp"

namespace norden {

/// splitmix64 (Steele, Lea, Flood). Used for every random draw so that a
/// seed reproduces bit-identical points and generated fields on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::uint64_t state_;
};

/// Independent child seed number `stream` of `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 mix(seed ^ (0xd1b54a32d192ed03ULL * (stream + 1)));
  return mix.next();
}

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
};

struct SampleSet {
  std::vector<Point> points;
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(points.size()); }
};

inline constexpr int kMaxSampleAttempts = 100;

/// Draws `count` points uniformly from `box`. Points rejected by `accept`
/// are redrawn, at most kMaxSampleAttempts times per point.
inline SampleSet sample_box(std::span<const Interval> box, int count, std::uint64_t seed,
                            const std::function<bool(std::span<const double>)>& accept = {}) {
  SampleSet out;
  out.seed = seed;
  SplitMix64 rng(seed);
  for (int n = 0; n < count; ++n) {
    bool found = false;
    for (int attempt = 0; attempt < kMaxSampleAttempts && !found; ++attempt) {
      Point p(box.size());
      for (std::size_t i = 0; i < box.size(); ++i) p[i] = rng.uniform(box[i].lo, box[i].hi);
      if (!accept || accept(p)) {
        out.points.push_back(std::move(p));
        found = true;
      }
    }
    if (!found)
      throw InvalidInputError("degenerate structure: no acceptable sample point after " +
                              std::to_string(kMaxSampleAttempts) + " attempts");
  }
  return out;
}

}  // namespace norden
