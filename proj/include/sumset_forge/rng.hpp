#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "sumset_forge/eset.hpp"

namespace sumset_forge {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for the i-th instance of a stream, independent of evaluation order.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

/// mt19937_64 with an unbiased bounded draw that does not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n), n ≥ 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  /// Uniform m-subset of [0, n) (Floyd's algorithm), ascending.
  std::vector<std::uint32_t> subset(std::uint32_t n, std::uint32_t m) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t j = n - m; j < n; ++j) {
      const auto r = static_cast<std::uint32_t>(below(std::uint64_t{j} + 1));
      if (std::find(out.begin(), out.end(), r) == out.end()) {
        out.push_back(r);
      } else {
        out.push_back(j);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Uniform m-subset of the field, or of its nonzero elements.
  ESet random_set(const FieldPtr& ctx, std::uint32_t m, bool exclude_zero) {
    const std::uint32_t offset = exclude_zero ? 1 : 0;
    auto idx = subset(ctx->q() - offset, m);
    for (auto& x : idx) x += offset;
    return ESet::of(ctx, idx);
  }

  Elem nonzero(const Field& f) { return static_cast<Elem>(1 + below(f.q() - 1)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sumset_forge
