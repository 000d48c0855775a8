#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "sumset_forge/field.hpp"

namespace sumset_forge::detail {

// Histogram over field elements: dense for small q, hashed otherwise.
class CountTable {
 public:
  explicit CountTable(std::uint32_t q) : dense_(q <= (1u << 22)) {
    if (dense_) counts_.assign(q, 0);
  }

  void bump(Elem z) {
    if (dense_) {
      ++counts_[z];
    } else {
      ++sparse_[z];
    }
  }

  std::uint64_t get(Elem z) const {
    if (dense_) return counts_[z];
    auto it = sparse_.find(z);
    return it == sparse_.end() ? 0 : it->second;
  }

  std::uint64_t sum_of_squares() const {
    std::uint64_t s = 0;
    if (dense_) {
      for (auto c : counts_) s += std::uint64_t{c} * c;
    } else {
      for (const auto& [z, c] : sparse_) s += c * c;
    }
    return s;
  }

 private:
  bool dense_;
  std::vector<std::uint32_t> counts_;
  std::unordered_map<Elem, std::uint64_t> sparse_;
};

}  // namespace sumset_forge::detail
