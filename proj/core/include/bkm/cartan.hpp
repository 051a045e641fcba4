#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bkm/linalg.hpp"
#include "bkm/rational.hpp"

namespace bkm {

enum class NodeType { Real, Heisenberg, Negative };
const char* node_type_name(NodeType t);

using NodeSet = std::vector<std::size_t>;  // sorted, no duplicates

// Multidegree in Z>=0^n. Coefficients are plain ints; heights stay small.
struct RootSum {
  std::vector<int> c;

  RootSum() = default;
  explicit RootSum(std::size_t n) : c(n, 0) {}
  explicit RootSum(std::vector<int> v) : c(std::move(v)) {}
  static RootSum unit(std::size_t n, std::size_t i, int k = 1);

  std::size_t size() const { return c.size(); }
  int operator[](std::size_t i) const { return c[i]; }
  int& operator[](std::size_t i) { return c[i]; }
  int height() const;
  NodeSet support() const;
  bool is_zero() const;
  bool is_nonnegative() const;
  // componentwise <=
  bool leq(const RootSum& o) const;

  RootSum operator+(const RootSum& o) const;
  RootSum operator-(const RootSum& o) const;
  RootSum scaled(int k) const;
  bool operator==(const RootSum& o) const { return c == o.c; }
  bool operator!=(const RootSum& o) const { return c != o.c; }
  bool operator<(const RootSum& o) const { return c < o.c; }
  std::string str() const;
};

// Order used for every printed table: height first, then lexicographic.
bool height_lex_less(const RootSum& a, const RootSum& b);

// All RootSums of the given height / up to the given height, (height, lex) order.
std::vector<RootSum> root_sums_of_height(std::size_t n, int h);
std::vector<RootSum> root_sums_up_to(std::size_t n, int max_height);

// A weight, known only through its coroot pairings lambda(alpha_i^vee).
struct Weight {
  Vec p;

  Weight() = default;
  explicit Weight(Vec v) : p(std::move(v)) {}
  std::size_t size() const { return p.size(); }
  const Rational& operator[](std::size_t i) const { return p[i]; }
  Rational& operator[](std::size_t i) { return p[i]; }
  bool operator==(const Weight& o) const { return p == o.p; }
  std::string str() const;
};

struct WeylWord {
  std::vector<std::size_t> s;
  std::size_t length() const { return s.size(); }
};

class CartanMatrix {
 public:
  CartanMatrix() = default;

  // Throws BkmError(RejectNotBkm) naming the violated rule.
  static CartanMatrix validate(const Mat& raw);
  static CartanMatrix validate_ints(const std::vector<std::vector<long>>& raw);

  std::size_t size() const { return a_.size(); }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i][j]; }
  const Mat& entries() const { return a_; }
  NodeType type(std::size_t i) const { return types_[i]; }
  const std::vector<NodeType>& types() const { return types_; }
  bool is_real(std::size_t i) const { return types_[i] == NodeType::Real; }
  bool is_imaginary(std::size_t i) const { return types_[i] != NodeType::Real; }
  bool adjacent(std::size_t i, std::size_t j) const { return i != j && a_[i][j] != 0; }
  bool has_real_nodes() const;

  bool symmetrizable() const { return d_.has_value(); }
  // Throws BkmError(NotSymmetrizable).
  const Vec& symmetrizer() const;

  // (alpha_i, alpha_j) = d_i A_ij
  Rational form(std::size_t i, std::size_t j) const;

  std::vector<NodeSet> components(const NodeSet& s) const;
  bool is_independent(const NodeSet& s) const;

  // Canonical text of the entries, used as a cache / provenance key.
  std::string canonical_text() const;
  std::string hash_hex() const;

 private:
  Mat a_;
  std::vector<NodeType> types_;
  std::optional<Vec> d_;
};

// [[-b,-a],[-c,-d]]
CartanMatrix rank2(const Rational& b, const Rational& a, const Rational& c, const Rational& d);
// -2 on the diagonal, -1 on the two off-diagonals.
CartanMatrix negative_type_a(std::size_t n);

// (lambda - beta)(alpha_i^vee) = lambda_i - sum_j beta_j A_ij
Weight subtract_roots(const CartanMatrix& a, const Weight& lambda, const RootSum& beta);
Weight add_roots(const CartanMatrix& a, const Weight& lambda, const RootSum& beta);

Weight weyl_vector(const CartanMatrix& a);

// (lambda + 2 rho + mu, lambda - mu) for mu = lambda - beta, which equals
// 2(lambda + rho, beta) - (beta, beta).
Rational bilinear_residual(const CartanMatrix& a, const Weight& lambda, const RootSum& beta);
// (lambda, beta) with (lambda, alpha_j) = d_j lambda_j
Rational pair_weight_root(const CartanMatrix& a, const Weight& lambda, const RootSum& beta);
Rational pair_roots(const CartanMatrix& a, const RootSum& x, const RootSum& y);

struct ConeInfo {
  bool in_p_plus = false;
  bool in_p_pm = false;
  NodeSet j_lambda;
  // Powers M_i on j_lambda; entries outside j_lambda are 0.
  std::vector<Integer> powers;
};
ConeInfo cone_membership(const CartanMatrix& a, const Weight& lambda);

// Weight with pairings A_ii/2 (M_i - 1) for the given powers (M_i = 1 forced
// on Heisenberg nodes).
Weight weight_from_powers(const CartanMatrix& a, const std::vector<long>& powers);

// Simple reflection on pairings: s_i(nu)_k = nu_k - nu_i A_ki.
Weight reflect(const CartanMatrix& a, const Weight& nu, std::size_t i);

}  // namespace bkm
