#pragma once

#include <vector>

#include "bkm/cartan.hpp"
#include "bkm/lie_engine.hpp"

namespace bkm {

// A hole (H, m_H) is stored as the RootSum sum_h m_H(h) alpha_h; H is its
// support. (H', m') precedes (H, m) exactly when the RootSums compare
// componentwise.
using Hole = RootSum;

struct HoleSet {
  std::vector<Hole> holes;
  int cap = 0;  // bound on Heisenberg powers when enumerating Indep(J_lambda)
};

// Checks (H1) and (H2) for every hole; throws InvalidInput.
void validate_holes(const CartanMatrix& a, const Weight& lambda, const std::vector<Hole>& holes);

std::vector<Hole> minimal_holes(const std::vector<Hole>& holes);
bool is_nice(const CartanMatrix& a, const std::vector<Hole>& holes);
// Minimal holes of L(lambda).
std::vector<Hole> simple_holes(const CartanMatrix& a, const Weight& lambda);

// Indep(J_lambda) truncated to height max_height, Heisenberg powers in 1..cap.
// Contains the zero RootSum (empty support).
std::vector<Hole> indep_enumerate(const CartanMatrix& a, const Weight& lambda, int cap, int max_height);
// Members of indep_enumerate that dominate some hole.
std::vector<Hole> upper_closure(const CartanMatrix& a, const Weight& lambda, const std::vector<Hole>& holes, int cap,
                                int max_height);

// For beta with independent support: whether lambda - beta survives the holes.
bool independent_weight_in_wtV(const CartanMatrix& a, const std::vector<Hole>& holes, const RootSum& beta);

// Real nodes i with ({i}, lambda_i + 1) among the holes.
NodeSet integrability_set(const CartanMatrix& a, const Weight& lambda, const std::vector<Hole>& holes);

// lambda - beta in wt M(lambda, H) for nice H.
bool thmA_membership(const CartanMatrix& a, const Weight& lambda, const std::vector<Hole>& holes,
                     const RootSum& beta);
// All such beta with height <= cutoff, (height, lex) order.
std::vector<RootSum> thmA_enumerate(const CartanMatrix& a, const Weight& lambda, const std::vector<Hole>& holes,
                                    int cutoff);

// The closed form for simple modules (components need a node with nonzero
// pairing; singleton components are bounded by the power there).
bool simple_formula_membership(const CartanMatrix& a, const Weight& lambda, const RootSum& beta);
std::vector<RootSum> simple_formula_enumerate(const CartanMatrix& a, const Weight& lambda, int cutoff);

struct ThmBResult {
  std::vector<RootSum> via_nice_supersets;
  std::vector<RootSum> via_simples;
  bool agree = false;
};
// Weights of M(lambda, H) for an arbitrary hole set, both ways.
ThmBResult thmB_weights(const CartanMatrix& a, const Weight& lambda, const HoleSet& hs, int cutoff);

struct MinkowskiResult {
  bool equal = false;
  std::vector<RootSum> lhs;
  std::vector<RootSum> rhs;
};
// wt V = (wt V restricted to J_V) - Z>=0 (positive roots not supported in J_V),
// with the roots read from the engine.
MinkowskiResult minkowski_check(const CartanMatrix& a, const Weight& lambda, const std::vector<Hole>& holes,
                                const GradedNilpotent& alg, int cutoff);

// Support of a dimension table, (height, lex) order.
std::vector<RootSum> support_of(const std::map<RootSum, std::size_t>& dims, int cutoff);

}  // namespace bkm
