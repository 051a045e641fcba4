#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bkm/cartan.hpp"
#include "bkm/lie_engine.hpp"

namespace bkm {

// Height-truncated series sum_beta c_beta e^{top - beta}. Only nonzero
// coefficients are stored, and nothing above the cutoff.
class FormalCharacter {
 public:
  FormalCharacter() = default;
  FormalCharacter(std::size_t rank, int cutoff, Weight top = Weight());

  std::size_t rank() const { return rank_; }
  int cutoff() const { return cutoff_; }
  const Weight& top() const { return top_; }
  void set_top(Weight w) { top_ = std::move(w); }

  Integer at(const RootSum& beta) const;
  void add(const RootSum& beta, const Integer& c);
  const std::map<RootSum, Integer>& coeffs() const { return coeffs_; }
  // (height, lex) order
  std::vector<std::pair<RootSum, Integer>> sorted() const;
  FormalCharacter truncated(int cutoff) const;

  bool operator==(const FormalCharacter& o) const { return rank_ == o.rank_ && coeffs_ == o.coeffs_; }
  bool operator!=(const FormalCharacter& o) const { return !(*this == o); }

 private:
  std::size_t rank_ = 0;
  int cutoff_ = 0;
  Weight top_;
  std::map<RootSum, Integer> coeffs_;
};

// Truncated to the smaller cutoff; top weights are not combined.
FormalCharacter operator*(const FormalCharacter& x, const FormalCharacter& y);
FormalCharacter operator+(const FormalCharacter& x, const FormalCharacter& y);
FormalCharacter operator-(const FormalCharacter& x, const FormalCharacter& y);
// Needs coefficient +-1 at 0; checked by multiplying back.
FormalCharacter inverse(const FormalCharacter& x);

// prod_{alpha > 0} (1 - e^{-alpha})^{mult alpha}, multiplicities from the engine.
FormalCharacter denominator(const GradedNilpotent& alg);
FormalCharacter denominator(std::size_t rank, int cutoff, const std::map<RootSum, Integer>& multiplicities);
// sum over independent node sets S of (-1)^|S| e^{-sum_S alpha}
FormalCharacter independent_subset_form(const CartanMatrix& a, int cutoff);

// e^lambda / R, checked against the engine's dim U(n^-)_beta.
FormalCharacter char_verma(const GradedNilpotent& alg, const Weight& lambda);
FormalCharacter char_from_numerator(const FormalCharacter& numerator, const FormalCharacter& r);

// Character read off a dimension table (the oracle side).
FormalCharacter character_from_dims(const std::map<RootSum, std::size_t>& dims, const Weight& lambda, int cutoff);

// Closed-form numerator for L(lambda) over [[-b,-a],[-a,-b]], lambda in P+-.
// Throws CaseNotCovered when none of the three settings applies.
struct Rank2Numerator {
  std::string setting;  // "I", "II" or "III-A" .. "III-D"
  FormalCharacter numerator;
};
Rank2Numerator simple_numerator_rank2(const CartanMatrix& a, const Weight& lambda, int cutoff);
FormalCharacter char_simple_rank2(const GradedNilpotent& alg, const Weight& lambda);

// Over the negative type A(n) matrix with lambda = rho. Each hole is
// 2 * (indicator of an independent set). Throws InvalidInput otherwise.
FormalCharacter thmD_numerator(std::size_t n, const std::vector<RootSum>& holes, int cutoff);
FormalCharacter char_thmD(const GradedNilpotent& alg, const std::vector<RootSum>& holes);

struct WkbTerms {
  FormalCharacter numerator;
  std::size_t weyl_elements = 0;  // group elements with a term below the cutoff
};
// sum_w (-1)^l(w) w(S_lambda) relative to e^{lambda + rho}. Throws NotDominant.
WkbTerms wkb_numerator(const CartanMatrix& a, const Weight& lambda, int cutoff);
FormalCharacter char_wkb(const GradedNilpotent& alg, const Weight& lambda);

struct LabeledNumerator {
  int l = 0, i = 0, j = 0, k = 0;
  FormalCharacter numerator;
};
// Rank-2, both nodes Negative, lambda in P+- whose norm equation has the single
// interior solution (M1, n). Throws HypothesisFails.
std::vector<LabeledNumerator> char_numerators_6r(const CartanMatrix& a, const Weight& lambda, int r, int cutoff);
// The solution (M1, n) checked by char_numerators_6r.
std::pair<long, long> composition_solution(const CartanMatrix& a, const Weight& lambda);

}  // namespace bkm
