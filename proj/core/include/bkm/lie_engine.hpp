#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "bkm/cartan.hpp"
#include "bkm/linalg.hpp"

namespace bkm {

struct EngineOptions {
  int cutoff = 8;
  std::size_t budget_mb = 2048;
  unsigned threads = 1;
};

// Rough bytes needed to build all graded pieces up to the cutoff.
std::size_t estimate_engine_bytes(std::size_t rank, int cutoff);

// U(n^-) and n^- graded by multidegree, up to a height cutoff.
//
// U(n^-)_beta is realized as words of multidegree beta (a word is a string
// whose characters are generator indices; the word w means f_{w[0]} ... f_{w[k-1]})
// modulo the degree-beta piece of the two-sided ideal generated by the Serre
// relators. Words that are not leading words of the ideal (standard words)
// form a basis, and every word has a normal form in that basis.
// n^-_beta is the span of iterated commutators inside U(n^-)_beta.
class GradedNilpotent {
 public:
  static std::shared_ptr<const GradedNilpotent> build(const CartanMatrix& a, const EngineOptions& opt);

  const CartanMatrix& matrix() const { return a_; }
  std::size_t rank() const { return a_.size(); }
  int cutoff() const { return cutoff_; }
  bool in_range(const RootSum& beta) const;
  const std::vector<RootSum>& grades() const { return grades_; }

  std::size_t dim_u(const RootSum& beta) const;
  const std::vector<std::string>& standard_words(const RootSum& beta) const;
  // index among standard words, or -1
  long standard_index(const RootSum& beta, const std::string& word) const;
  // Normal form of an arbitrary word of degree beta, sparse over standard words.
  SparseRow normal_form(const RootSum& beta, const std::string& word) const;
  std::size_t ideal_rank(const RootSum& beta) const;

  // f_j * v and v * f_j for v in U_beta (dense over standard words).
  Vec left_mult(std::size_t j, const RootSum& beta, const Vec& v) const;
  Vec right_mult(const RootSum& beta, const Vec& v, std::size_t j) const;
  Vec multiply(const RootSum& beta, const Vec& u, const RootSum& gamma, const Vec& v) const;

  std::size_t multiplicity(const RootSum& beta) const;
  // Basis of n^-_beta as vectors in U_beta, fully reduced echelon form.
  std::vector<Vec> lie_basis(const RootSum& beta) const;
  // Coordinates of x in lie_basis(beta); throws if x is not in n^-_beta.
  Vec lie_coords(const RootSum& beta, const Vec& x) const;
  // Structure constants: entry [p * m_gamma + q] holds the coordinates of
  // [x_p, y_q] in lie_basis(beta + gamma).
  std::vector<Vec> bracket_table(const RootSum& beta, const RootSum& gamma) const;

  // Positive roots (multiplicity > 0) within the cutoff, (height, lex) order.
  std::vector<RootSum> positive_roots() const;
  // Generalized Kostant partition function from the multiplicities.
  Integer kostant(const RootSum& beta) const;

 private:
  struct Piece {
    std::vector<std::string> words;  // all words, lex order
    std::unordered_map<std::string, std::uint32_t> word_index;
    RowSpace ideal;
    std::vector<std::string> std_words;
    std::vector<long> std_of_col;  // -1 for leading words of the ideal
    RowSpace lie;
  };

  GradedNilpotent(const CartanMatrix& a, int cutoff) : a_(a), cutoff_(cutoff) {}
  std::size_t index_of(const RootSum& beta) const;
  const Piece& piece(const RootSum& beta) const { return pieces_[index_of(beta)]; }
  void build_piece(std::size_t idx);
  void build_lie(std::size_t idx);
  void add_normal_form(const Piece& p, const std::string& word, const Rational& coef, Vec& out) const;

  CartanMatrix a_;
  int cutoff_;
  std::vector<RootSum> grades_;
  std::map<RootSum, std::size_t> grade_index_;
  std::vector<Piece> pieces_;
  std::vector<Integer> kostant_;
};

// Necklace count for free rank-2 n^- (no real nodes, A_12 != 0).
// Throws NotFreeCase otherwise.
Integer witt_multiplicity(const CartanMatrix& a, int x, int y);
Integer necklace_count(int x, int y);

class VermaModel {
 public:
  VermaModel(std::shared_ptr<const GradedNilpotent> alg, Weight lambda);

  const GradedNilpotent& algebra() const { return *alg_; }
  const CartanMatrix& matrix() const { return alg_->matrix(); }
  const Weight& lambda() const { return lambda_; }
  int cutoff() const { return alg_->cutoff(); }
  std::size_t dim(const RootSum& beta) const;

  // e_i on the word (degree beta), as a vector over standard words of beta - alpha_i.
  Vec raise_word(std::size_t i, const RootSum& beta, const std::string& word) const;
  // Matrix of e_i : M_{lambda-beta} -> M_{lambda-beta+alpha_i}; rows index the target.
  // Empty when beta_i = 0.
  Mat raising(std::size_t i, const RootSum& beta) const;
  // Empty when beta_i = 0.
  Vec apply_raising(std::size_t i, const RootSum& beta, const Vec& v) const;
  // f_j v
  Vec lower(std::size_t j, const RootSum& beta, const Vec& v) const;

 private:
  std::shared_ptr<const GradedNilpotent> alg_;
  Weight lambda_;
};

struct MaximalVectors {
  std::size_t dim = 0;
  std::vector<Vec> basis;
};
MaximalVectors maximal_vectors(const VermaModel& vm, const RootSum& beta);

// A graded U(n^-)-submodule of M(lambda), one row space per grade.
class Submodule {
 public:
  explicit Submodule(const VermaModel& vm);
  const RowSpace& at(const RootSum& beta) const;
  RowSpace& at(const RootSum& beta);
  std::size_t quotient_dim(const RootSum& beta) const;
  std::map<RootSum, std::size_t> quotient_dims() const;

 private:
  const VermaModel* vm_;
  std::map<RootSum, RowSpace> spaces_;
};

// Submodule generated by maximal vectors (each generator is checked to be
// maximal, so the U(g)-submodule equals the U(n^-)-span).
Submodule generated_submodule(const VermaModel& vm, const std::vector<std::pair<RootSum, Vec>>& gens);

// Hole monomial prod_h f_h^{m_h} as a vector of M(lambda)_{lambda-gamma}.
Vec hole_vector(const VermaModel& vm, const RootSum& gamma);

// M(lambda) modulo the hole vectors; dims per grade up to the cutoff.
std::map<RootSum, std::size_t> quotient_multiplicities(const VermaModel& vm, const std::vector<RootSum>& holes);

// Maximal proper submodule (radical of the contravariant form).
Submodule radical(const VermaModel& vm);
std::map<RootSum, std::size_t> simple_multiplicities(const VermaModel& vm);

// Contravariant form on M(lambda)_{lambda-beta} in the standard-word basis.
Mat shapovalov_matrix(const VermaModel& vm, const RootSum& beta);

struct ShapovalovCheck {
  bool det_zero = false;
  bool predicted_singular = false;
  bool agree() const { return det_zero == predicted_singular; }
};
// Compares the determinant's vanishing with the product-formula factors
// 2(lambda+rho, b) - r(b, b) over positive roots b and r >= 1 with r b <= beta.
ShapovalovCheck shapovalov_det_check(const VermaModel& vm, const RootSum& beta);

}  // namespace bkm
