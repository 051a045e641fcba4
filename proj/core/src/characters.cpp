#include "bkm/characters.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "bkm/errors.hpp"
#include "bkm/solver.hpp"
#include "bkm/weights.hpp"

namespace bkm {

FormalCharacter::FormalCharacter(std::size_t rank, int cutoff, Weight top)
    : rank_(rank), cutoff_(cutoff), top_(std::move(top)) {}

Integer FormalCharacter::at(const RootSum& beta) const {
  auto it = coeffs_.find(beta);
  return it == coeffs_.end() ? Integer(0) : it->second;
}

void FormalCharacter::add(const RootSum& beta, const Integer& c) {
  if (beta.size() != rank_) throw std::invalid_argument("FormalCharacter::add: rank mismatch");
  if (c == 0 || beta.height() > cutoff_) return;
  auto [it, fresh] = coeffs_.emplace(beta, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

std::vector<std::pair<RootSum, Integer>> FormalCharacter::sorted() const {
  std::vector<std::pair<RootSum, Integer>> v(coeffs_.begin(), coeffs_.end());
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return height_lex_less(x.first, y.first); });
  return v;
}

FormalCharacter FormalCharacter::truncated(int cutoff) const {
  FormalCharacter out(rank_, std::min(cutoff, cutoff_), top_);
  for (auto& [b, c] : coeffs_) out.add(b, c);
  return out;
}

FormalCharacter operator*(const FormalCharacter& x, const FormalCharacter& y) {
  if (x.rank() != y.rank()) throw std::invalid_argument("character product: rank mismatch");
  FormalCharacter out(x.rank(), std::min(x.cutoff(), y.cutoff()), x.top());
  for (auto& [bx, cx] : x.coeffs()) {
    int hx = bx.height();
    for (auto& [by, cy] : y.coeffs())
      if (hx + by.height() <= out.cutoff()) out.add(bx + by, cx * cy);
  }
  return out;
}

FormalCharacter operator+(const FormalCharacter& x, const FormalCharacter& y) {
  FormalCharacter out(x.rank(), std::min(x.cutoff(), y.cutoff()), x.top());
  for (auto& [b, c] : x.coeffs()) out.add(b, c);
  for (auto& [b, c] : y.coeffs()) out.add(b, c);
  return out;
}

FormalCharacter operator-(const FormalCharacter& x, const FormalCharacter& y) {
  FormalCharacter out(x.rank(), std::min(x.cutoff(), y.cutoff()), x.top());
  for (auto& [b, c] : x.coeffs()) out.add(b, c);
  for (auto& [b, c] : y.coeffs()) out.add(b, -c);
  return out;
}

FormalCharacter inverse(const FormalCharacter& x) {
  const std::size_t n = x.rank();
  Integer c0 = x.at(RootSum(n));
  if (c0 != 1 && c0 != -1) throw std::invalid_argument("inverse: constant term must be +-1");
  FormalCharacter inv(n, x.cutoff());
  std::map<RootSum, Integer> acc;
  for (auto& beta : root_sums_up_to(n, x.cutoff())) {
    Integer v;
    if (beta.is_zero()) {
      v = c0;
    } else {
      Integer s = 0;
      for (auto& [g, cg] : x.coeffs()) {
        if (g.is_zero() || !g.leq(beta)) continue;
        auto it = acc.find(beta - g);
        if (it != acc.end()) s += cg * it->second;
      }
      v = -s * c0;
    }
    if (v != 0) {
      acc.emplace(beta, v);
      inv.add(beta, v);
    }
  }
  FormalCharacter one = x * inv;
  if (one.coeffs().size() != 1 || one.at(RootSum(n)) != 1)
    throw std::logic_error("inverse: re-multiplication check failed");
  return inv;
}

FormalCharacter denominator(const GradedNilpotent& alg) {
  std::map<RootSum, Integer> mult;
  for (auto& alpha : alg.positive_roots()) mult[alpha] = Integer(static_cast<unsigned long>(alg.multiplicity(alpha)));
  return denominator(alg.rank(), alg.cutoff(), mult);
}

FormalCharacter denominator(std::size_t rank, int cutoff, const std::map<RootSum, Integer>& multiplicities) {
  FormalCharacter r(rank, cutoff);
  r.add(RootSum(rank), 1);
  for (auto& [alpha, m] : multiplicities) {
    if (m == 0 || alpha.height() > cutoff) continue;
    FormalCharacter f(rank, cutoff);
    Integer binom = 1;
    for (int k = 0; Integer(k) <= m && k * alpha.height() <= cutoff; ++k) {
      f.add(alpha.scaled(k), (k % 2 ? -binom : binom));
      binom = binom * (m - k) / (k + 1);
    }
    r = r * f;
  }
  return r;
}

FormalCharacter independent_subset_form(const CartanMatrix& a, int cutoff) {
  const std::size_t n = a.size();
  if (n > 24) throw BkmError(ErrorKind::InvalidInput, "too many nodes for subset enumeration");
  FormalCharacter r(n, cutoff);
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    NodeSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(i);
    if (!a.is_independent(s)) continue;
    RootSum beta(n);
    for (auto i : s) beta[i] = 1;
    r.add(beta, s.size() % 2 ? -1 : 1);
  }
  return r;
}

FormalCharacter char_verma(const GradedNilpotent& alg, const Weight& lambda) {
  FormalCharacter ch = inverse(denominator(alg));
  ch.set_top(lambda);
  for (auto& beta : alg.grades())
    if (ch.at(beta) != Integer(static_cast<unsigned long>(alg.dim_u(beta))))
      throw std::logic_error("char_verma: disagrees with dim U(n^-) at " + beta.str());
  return ch;
}

FormalCharacter char_from_numerator(const FormalCharacter& numerator, const FormalCharacter& r) {
  FormalCharacter ch = numerator * inverse(r);
  ch.set_top(numerator.top());
  return ch;
}

FormalCharacter character_from_dims(const std::map<RootSum, std::size_t>& dims, const Weight& lambda, int cutoff) {
  std::size_t n = lambda.size();
  FormalCharacter ch(n, cutoff, lambda);
  for (auto& [b, d] : dims) ch.add(b, Integer(static_cast<unsigned long>(d)));
  return ch;
}

namespace {

RootSum pt(long x, long y) { return RootSum(std::vector<int>{static_cast<int>(x), static_cast<int>(y)}); }

}  // namespace

Rank2Numerator simple_numerator_rank2(const CartanMatrix& a, const Weight& lambda, int cutoff) {
  if (a.size() != 2 || a.type(0) != NodeType::Negative || a.type(1) != NodeType::Negative || a(0, 0) != a(1, 1) ||
      a(0, 1) != a(1, 0) || a(0, 1) == 0)
    throw BkmError(ErrorKind::CaseNotCovered, "needs [[-b,-a],[-a,-b]] with a, b > 0");
  QuadraticInstance inst = QuadraticInstance::from_matrix(a, lambda);
  const long m1 = inst.m1, m2 = inst.m2;
  const Rational c = inst.s / inst.p;  // 2a/b

  Rank2Numerator out;
  FormalCharacter& num = out.numerator;
  num = FormalCharacter(2, cutoff, lambda);
  num.add(pt(0, 0), 1);
  num.add(pt(m1, 0), -1);
  num.add(pt(0, m2), -1);

  if (m1 == 2 && m2 == 2) {
    out.setting = "II";
    if (a(0, 0) == a(0, 1)) num.add(pt(1, 1), -1);
  } else if (c == Rational(m1 + m2 - 2)) {
    out.setting = "I";
    if (std::min(m1, m2) >= 2) num.add(pt(1, 1), -1);
  } else if (c == ratio(m1 + m2, 2) - 2) {
    Classification22 cls = classify_22(inst);
    out.setting = std::string("III-") + cls.tag;
    if (cls.tag == 'A' || cls.tag == 'B') num.add(pt(2, 2), -2);
    if (cls.tag == 'B')
      for (auto& e : cls.extras) num.add(pt(e.first, e.second), -1);
  } else {
    throw BkmError(ErrorKind::CaseNotCovered, "norm equation solved by neither (1,1) nor (2,2), and lambda != rho");
  }
  return out;
}

FormalCharacter char_simple_rank2(const GradedNilpotent& alg, const Weight& lambda) {
  auto num = simple_numerator_rank2(alg.matrix(), lambda, alg.cutoff());
  return char_from_numerator(num.numerator, denominator(alg));
}

FormalCharacter thmD_numerator(std::size_t n, const std::vector<RootSum>& holes, int cutoff) {
  CartanMatrix a = negative_type_a(n);
  std::vector<NodeSet> sets;
  for (auto& h : minimal_holes(holes)) {
    if (h.size() != n) throw BkmError(ErrorKind::InvalidInput, "hole " + h.str() + " has the wrong rank");
    for (std::size_t i = 0; i < n; ++i)
      if (h[i] != 0 && h[i] != 2) throw BkmError(ErrorKind::InvalidInput, "hole " + h.str() + " needs powers 2");
    NodeSet s = h.support();
    if (s.empty() || !a.is_independent(s))
      throw BkmError(ErrorKind::InvalidInput, "hole " + h.str() + " is not independent");
    sets.push_back(std::move(s));
  }
  if (sets.size() > 24) throw BkmError(ErrorKind::InvalidInput, "too many minimal holes");

  FormalCharacter num(n, cutoff, weyl_vector(a));
  num.add(RootSum(n), 1);
  for (unsigned long mask = 1; mask < (1UL << sets.size()); ++mask) {
    std::set<std::size_t> u;
    int count = 0;
    for (std::size_t k = 0; k < sets.size(); ++k)
      if (mask >> k & 1) {
        u.insert(sets[k].begin(), sets[k].end());
        ++count;
      }
    NodeSet s(u.begin(), u.end());
    // a dependent union is not a {0,2}-solution
    if (!a.is_independent(s)) continue;
    RootSum beta(n);
    for (auto i : s) beta[i] = 2;
    num.add(beta, count % 2 ? -1 : 1);
  }
  return num;
}

FormalCharacter char_thmD(const GradedNilpotent& alg, const std::vector<RootSum>& holes) {
  const std::size_t n = alg.rank();
  if (!(alg.matrix().entries() == negative_type_a(n).entries()))
    throw BkmError(ErrorKind::InvalidInput, "engine is not built over the negative type A matrix");
  return char_from_numerator(thmD_numerator(n, holes, alg.cutoff()), denominator(alg));
}

WkbTerms wkb_numerator(const CartanMatrix& a, const Weight& lambda, int cutoff) {
  const std::size_t n = a.size();
  ConeInfo cone = cone_membership(a, lambda);
  if (!cone.in_p_plus) throw BkmError(ErrorKind::NotDominant, "lambda " + lambda.str() + " is not in P+");

  Weight top = lambda;
  Weight rho = weyl_vector(a);
  for (std::size_t i = 0; i < n; ++i) top[i] += rho[i];

  // imaginary independent sets orthogonal to lambda
  std::vector<NodeSet> gammas;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    NodeSet s;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      if (mask >> i & 1) {
        ok = a.is_imaginary(i) && lambda[i] == 0;
        s.push_back(i);
      }
    if (ok && a.is_independent(s)) gammas.push_back(std::move(s));
  }

  struct Node {
    Weight image;                 // w(lambda + rho)
    RootSum offset;               // lambda + rho - w(lambda + rho)
    std::vector<RootSum> simple;  // w(alpha_j), may have negative entries
    int length;
  };
  std::vector<RootSum> ident;
  for (std::size_t j = 0; j < n; ++j) ident.push_back(RootSum::unit(n, j));

  WkbTerms out;
  out.numerator = FormalCharacter(n, cutoff, lambda);
  std::set<RootSum> seen;
  std::deque<Node> queue;
  queue.push_back({top, RootSum(n), ident, 0});
  seen.insert(RootSum(n));
  while (!queue.empty()) {
    Node cur = std::move(queue.front());
    queue.pop_front();
    ++out.weyl_elements;
    for (auto& g : gammas) {
      RootSum beta = cur.offset;
      for (auto j : g) beta = beta + cur.simple[j];
      int sign = ((cur.length + static_cast<int>(g.size())) % 2) ? -1 : 1;
      if (beta.is_nonnegative()) out.numerator.add(beta, sign);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!a.is_real(i) || cur.image[i] <= 0) continue;
      // offset grows by image_i alpha_i; heights only increase along the BFS
      if (!is_integer(cur.image[i])) throw BkmError(ErrorKind::NotDominant, "non-integral real pairing");
      int k = static_cast<int>(to_int64(cur.image[i]));
      RootSum next = cur.offset + RootSum::unit(n, i, k);
      if (next.height() > cutoff || seen.count(next)) continue;
      seen.insert(next);
      Node nx{reflect(a, cur.image, i), next, cur.simple, cur.length + 1};
      for (auto& r : nx.simple) {
        long pair = 0;
        for (std::size_t k2 = 0; k2 < n; ++k2) pair += r[k2] * to_int64(a(i, k2));
        r[i] -= static_cast<int>(pair);
      }
      queue.push_back(std::move(nx));
    }
  }
  return out;
}

FormalCharacter char_wkb(const GradedNilpotent& alg, const Weight& lambda) {
  auto terms = wkb_numerator(alg.matrix(), lambda, alg.cutoff());
  return char_from_numerator(terms.numerator, denominator(alg));
}

std::pair<long, long> composition_solution(const CartanMatrix& a, const Weight& lambda) {
  QuadraticInstance inst;
  try {
    inst = QuadraticInstance::from_matrix(a, lambda);
  } catch (const BkmError& e) {
    throw BkmError(ErrorKind::HypothesisFails, e.detail());
  }
  if (inst.variant != QuadVariant::N) throw BkmError(ErrorKind::HypothesisFails, "both nodes must be Negative");
  Rational n = Rational(inst.m2) - inst.s / inst.q * inst.m1;
  if (!is_integer(n) || n <= 0) throw BkmError(ErrorKind::HypothesisFails, "M2 - (2c/d) M1 is not positive integral");
  std::pair<long, long> sol{inst.m1, to_int64(n)};
  auto interior = interior_solutions(inst);
  if (interior.size() != 1 || interior[0] != sol)
    throw BkmError(ErrorKind::HypothesisFails, "(M1, n) is not the unique interior solution");
  return sol;
}

std::vector<LabeledNumerator> char_numerators_6r(const CartanMatrix& a, const Weight& lambda, int r, int cutoff) {
  if (r < 1) throw BkmError(ErrorKind::HypothesisFails, "r must be at least 1");
  auto [m1, n] = composition_solution(a, lambda);
  QuadraticInstance inst = QuadraticInstance::from_matrix(a, lambda);
  std::vector<LabeledNumerator> out;
  for (int l = 0; l <= 1; ++l)
    for (int j = l; j <= 1; ++j)
      for (int i = 0; i <= 1; ++i)
        for (int k = 0; k < r; ++k) {
          LabeledNumerator ln{l, i, j, k, FormalCharacter(2, cutoff, lambda)};
          ln.numerator.add(pt(0, 0), 1);
          ln.numerator.add(pt(inst.m1, 0), -l);
          ln.numerator.add(pt(0, inst.m2), -i);
          ln.numerator.add(pt(m1, n), -(j - l + k));
          out.push_back(std::move(ln));
        }
  if (out.size() != static_cast<std::size_t>(6 * r)) throw std::logic_error("char_numerators_6r: count");
  return out;
}

}  // namespace bkm
