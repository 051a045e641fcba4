#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "bkm/cartan.hpp"
#include "bkm/weights.hpp"

namespace bkm::verify {

struct HoleInstance {
  CartanMatrix a;
  Weight lambda;
  std::vector<Hole> holes;
};

// Rank <= 3, node types mixed, lambda integrable on a random subset of nodes.
// With nice = true every minimal hole is imaginary or a real singleton.
inline HoleInstance random_hole_instance(std::mt19937_64& g, bool nice, int cutoff, int cap = 3) {
  auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); };
  static const long diag[] = {2, 0, -1, -2};
  HoleInstance inst;
  for (;;) {
    std::size_t n = static_cast<std::size_t>(pick(1, 3));
    std::vector<std::vector<long>> m(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = diag[pick(0, 3)];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = -pick(0, 2);
    inst.a = CartanMatrix::validate_ints(m);

    Vec p(n);
    for (std::size_t i = 0; i < n; ++i) {
      bool integrable = pick(0, 9) < 7;
      Rational half = inst.a(i, i) / 2;
      switch (inst.a.type(i)) {
        case NodeType::Real:
          p[i] = integrable ? Rational(pick(0, 2)) : Rational(-1);
          break;
        case NodeType::Heisenberg:
          p[i] = integrable ? Rational(0) : Rational(1);
          break;
        case NodeType::Negative:
          p[i] = integrable ? half * pick(0, 2) : Rational(pick(1, 2));
          break;
      }
    }
    inst.lambda = Weight(p);

    std::vector<Hole> pool;
    for (auto& h : indep_enumerate(inst.a, inst.lambda, cap, cutoff)) {
      if (h.is_zero()) continue;
      if (nice && !is_nice(inst.a, {h})) continue;
      pool.push_back(h);
    }
    std::shuffle(pool.begin(), pool.end(), g);
    std::size_t k = static_cast<std::size_t>(pick(0, 3));
    inst.holes.assign(pool.begin(), pool.begin() + static_cast<long>(std::min(k, pool.size())));
    std::sort(inst.holes.begin(), inst.holes.end());
    if (!nice && is_nice(inst.a, inst.holes) && pick(0, 9) < 7) continue;
    return inst;
  }
}

}  // namespace bkm::verify
