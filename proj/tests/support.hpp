#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "bkm/cartan.hpp"

namespace bkm::testing {

inline RootSum rs(std::initializer_list<int> v) { return RootSum(std::vector<int>(v)); }

inline Weight wt(std::initializer_list<long> v) {
  Vec p;
  for (long x : v) p.emplace_back(x);
  return Weight(p);
}

inline CartanMatrix mat(std::vector<std::vector<long>> m) { return CartanMatrix::validate_ints(m); }

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20261015);
  return g;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

}  // namespace bkm::testing
