#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bkm/cartan.hpp"
#include "bkm/lie_engine.hpp"

namespace bkm {

using Point2 = std::pair<long, long>;

enum class QuadVariant { N, H, R };
const char* quad_variant_name(QuadVariant v);

// Norm equality for lambda - X alpha_1 - Y alpha_2 over a rank-2 matrix whose
// first node is Negative. With the symmetrizer folded in the equation reads
//   p X^2 + q Y^2 - p M1 X - q M2 Y + s XY = 0,
// where (N) has both nodes Negative, (H) has q = 0 (second node Heisenberg)
// and (R) has q < 0 (second node Real).
struct QuadraticInstance {
  QuadVariant variant = QuadVariant::N;
  Rational a, b, d;  // matrix [[-b,-a],[-c,-d]]
  long m1 = 1, m2 = 1;
  Rational p, q, s;

  // Built from a validated matrix and lambda in P+-. Throws InvalidInput.
  static QuadraticInstance from_matrix(const CartanMatrix& a, const Weight& lambda);
  // Symmetric (N) with 2a/b given as a single coefficient c on XY.
  static QuadraticInstance symmetric(const Rational& c, long m1, long m2);

  Rational eval(long x, long y) const;
  bool solves(long x, long y) const { return eval(x, y) == 0; }
};

struct Box {
  long x_max = 0;
  long y_max = 0;
};

struct Rank2Solutions {
  std::vector<Point2> points;  // sorted
  Box box;
  std::string closed_form;  // (H) only
};

// Square side for (N): max(p/s, q/s, 1) max(M1, M2), rounded down.
long rank2_bound(const QuadraticInstance& inst);

// (N): exhaustive in the bounding square (an explicit box is ignored).
// (H): box optional; (R): box required, else UnboundedWithoutBox.
Rank2Solutions enumerate_solutions_rank2(const QuadraticInstance& inst, std::optional<Box> box = std::nullopt);

// Solutions with both coordinates positive.
std::vector<Point2> interior_solutions(const QuadraticInstance& inst);

struct Classification22 {
  char tag = 'A';
  std::vector<Point2> extras;  // (1,k2), (k1,1) or ((M1+3)/2, 1)
  std::vector<Point2> solutions;
};
// Requires a symmetric (N) instance (p = q) solved by (2,2); PremiseFails otherwise.
Classification22 classify_22(const QuadraticInstance& inst);

// d^(n)(X) = (X1-1)^2 + sum (X_i + X_{i+1} - 1)^2 + (Xn-1)^2 - (n+1); d^(0) = 0.
long dn_value(const std::vector<int>& x);
int dn_box(std::size_t n);

struct DnSolution {
  std::vector<int> x;
  std::vector<std::vector<int>> blocks;
  bool hole_solution = false;
};
// Exhaustive over 0 <= X_i <= dn_box(n), lex order.
std::vector<DnSolution> enumerate_dn(std::size_t n, bool include_zero);

// Maximal runs of positive entries.
std::vector<std::vector<int>> block_decompose(const std::vector<int>& x);
// Entries in {0,2} with no two adjacent 2s.
bool is_hole_solution(const std::vector<int>& x);
// Non-hole solutions have >= 2 blocks, one all ones and one with an entry > 1.
// Throws NotASolution.
bool block_lemma_check(const std::vector<int>& x);

struct KkStep {
  RootSum beta;
  int n = 1;
};
struct KkResult {
  bool linked = false;
  bool exhausted = false;  // budget ran out before the search finished
  std::vector<KkStep> witness;
};
// Chains sum n_t beta_t = beta with 2(lambda + rho - sum_{t<=i} n_t beta_t, beta_{i+1})
// = n_{i+1} (beta_{i+1}, beta_{i+1}). Roots come from the engine. The witness is
// the least chain with steps ordered by (height, lex) of beta, then n.
KkResult kk_linked(const GradedNilpotent& alg, const Weight& lambda, const RootSum& beta,
                   std::size_t search_budget = 1000000);

// X^2 + Y^2 - M1 X - M2 Y + XY = 0 has exactly one solution with X, Y >= 1.
bool unique_solution_predicate(long m1, long m2);
bool unique_solution_bruteforce(long m1, long m2);
bool is_prime(long n);

}  // namespace bkm
