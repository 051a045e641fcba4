#include "bkm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include "bkm/errors.hpp"

namespace bkm {

const char* quad_variant_name(QuadVariant v) {
  switch (v) {
    case QuadVariant::N:
      return "N";
    case QuadVariant::H:
      return "H";
    case QuadVariant::R:
      return "R";
  }
  return "?";
}

QuadraticInstance QuadraticInstance::from_matrix(const CartanMatrix& a, const Weight& lambda) {
  if (a.size() != 2) throw BkmError(ErrorKind::InvalidInput, "norm equations need a rank-2 matrix");
  if (a.type(0) != NodeType::Negative)
    throw BkmError(ErrorKind::InvalidInput, "the first node must be Negative (reorder the matrix)");
  ConeInfo cone = cone_membership(a, lambda);
  if (!cone.in_p_pm) throw BkmError(ErrorKind::InvalidInput, "lambda is not in P+-");
  const Vec& dsym = a.symmetrizer();

  QuadraticInstance inst;
  switch (a.type(1)) {
    case NodeType::Negative:
      inst.variant = QuadVariant::N;
      break;
    case NodeType::Heisenberg:
      inst.variant = QuadVariant::H;
      break;
    case NodeType::Real:
      inst.variant = QuadVariant::R;
      break;
  }
  inst.b = -a(0, 0);
  inst.a = -a(0, 1);
  inst.d = -a(1, 1);
  inst.m1 = cone.powers[0].get_si();
  inst.m2 = cone.powers[1].get_si();
  inst.p = -dsym[0] * a(0, 0);
  inst.q = -dsym[1] * a(1, 1);
  inst.s = -2 * dsym[0] * a(0, 1);
  return inst;
}

QuadraticInstance QuadraticInstance::symmetric(const Rational& c, long m1, long m2) {
  QuadraticInstance inst;
  inst.variant = QuadVariant::N;
  // A(b,a,a,b) with b = 2, a = c
  inst.b = 2;
  inst.a = c;
  inst.d = 2;
  inst.m1 = m1;
  inst.m2 = m2;
  inst.p = 1;
  inst.q = 1;
  inst.s = c;
  return inst;
}

Rational QuadraticInstance::eval(long x, long y) const {
  Rational X(x), Y(y);
  return p * X * X + q * Y * Y + s * X * Y - p * m1 * X - q * m2 * Y;
}

namespace {

long floor_of(const Rational& r) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return f.get_si();
}

}  // namespace

long rank2_bound(const QuadraticInstance& inst) {
  Rational m = std::max(inst.m1, inst.m2);
  if (inst.s > 0) {
    Rational f = std::max({Rational(inst.p / inst.s), Rational(inst.q / inst.s), Rational(1)});
    return floor_of(f * m);
  }
  // no XY term: each coordinate stays within M_i + M_j sqrt(q / 4p)
  Rational f = std::max({Rational(inst.p / inst.q), Rational(inst.q / inst.p), Rational(1)});
  return floor_of((1 + f) * m);
}

Rank2Solutions enumerate_solutions_rank2(const QuadraticInstance& inst, std::optional<Box> box) {
  Rank2Solutions out;
  switch (inst.variant) {
    case QuadVariant::N: {
      long side = rank2_bound(inst);
      out.box = {side, side};
      break;
    }
    case QuadVariant::H: {
      if (box) {
        out.box = *box;
      } else {
        long ymax = inst.m1;
        if (inst.s > 0) ymax = std::max(ymax, floor_of(Rational(inst.m1) * inst.p / inst.s));
        out.box = {inst.m1, ymax};
      }
      out.closed_form = "{(0,Y) : Y >= 0} U {(" + std::to_string(inst.m1) + " - " + to_string(inst.s / inst.p) +
                        " Y, Y) : Y >= 0, X in Z>=0}";
      break;
    }
    case QuadVariant::R:
      if (!box) throw BkmError(ErrorKind::UnboundedWithoutBox, "variant R needs an explicit box");
      out.box = *box;
      break;
  }
  for (long x = 0; x <= out.box.x_max; ++x)
    for (long y = 0; y <= out.box.y_max; ++y)
      if (inst.solves(x, y)) out.points.emplace_back(x, y);
  return out;
}

std::vector<Point2> interior_solutions(const QuadraticInstance& inst) {
  std::vector<Point2> out;
  for (auto& pt : enumerate_solutions_rank2(inst).points)
    if (pt.first > 0 && pt.second > 0) out.push_back(pt);
  return out;
}

Classification22 classify_22(const QuadraticInstance& inst) {
  if (inst.variant != QuadVariant::N || inst.p != inst.q)
    throw BkmError(ErrorKind::PremiseFails, "needs both nodes Negative with equal lengths");
  if (inst.s <= 0) throw BkmError(ErrorKind::PremiseFails, "needs a positive XY coefficient");
  if (!inst.solves(2, 2)) throw BkmError(ErrorKind::PremiseFails, "(2,2) is not a solution");

  bool swapped = inst.m1 < inst.m2;
  QuadraticInstance w = inst;
  if (swapped) std::swap(w.m1, w.m2);

  Classification22 out;
  auto pts = enumerate_solutions_rank2(w).points;
  std::set<Point2> have(pts.begin(), pts.end());
  if (w.m2 == 1) {
    out.tag = (w.m1 % 2 == 0) ? 'C' : 'D';
    if (out.tag == 'D') out.extras.emplace_back((w.m1 + 3) / 2, 1);
  } else {
    std::optional<Point2> left, bottom;
    for (auto& pt : pts) {
      if (pt.first == 1 && pt.second > 2) left = pt;
      if (pt.second == 1 && pt.first > 2) bottom = pt;
    }
    if (left && bottom) {
      out.tag = 'B';
      out.extras = {*left, *bottom};
    } else {
      out.tag = 'A';
    }
  }
  for (auto& e : out.extras)
    if (!have.count(e)) throw std::logic_error("classify_22: expected extra solution missing");

  if (swapped) {
    for (auto& e : out.extras) std::swap(e.first, e.second);
    for (auto& pt : pts) std::swap(pt.first, pt.second);
  }
  std::sort(out.extras.begin(), out.extras.end());
  std::sort(pts.begin(), pts.end());
  out.solutions = std::move(pts);
  return out;
}

long dn_value(const std::vector<int>& x) {
  const std::size_t n = x.size();
  if (n == 0) return 0;
  auto sq = [](long v) { return v * v; };
  long total = sq(x[0] - 1) + sq(x[n - 1] - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) total += sq(static_cast<long>(x[i]) + x[i + 1] - 1);
  return total - static_cast<long>(n + 1);
}

int dn_box(std::size_t n) {
  long k = static_cast<long>(std::sqrt(static_cast<double>(n + 1)));
  while (k * k > static_cast<long>(n + 1)) --k;
  while ((k + 1) * (k + 1) <= static_cast<long>(n + 1)) ++k;
  return static_cast<int>(k + 1);
}

std::vector<std::vector<int>> block_decompose(const std::vector<int>& x) {
  std::vector<std::vector<int>> blocks;
  std::vector<int> cur;
  for (int v : x) {
    if (v > 0) {
      cur.push_back(v);
    } else if (!cur.empty()) {
      blocks.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) blocks.push_back(std::move(cur));
  return blocks;
}

bool is_hole_solution(const std::vector<int>& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0 && x[i] != 2) return false;
    if (i + 1 < x.size() && x[i] == 2 && x[i + 1] == 2) return false;
  }
  return true;
}

bool block_lemma_check(const std::vector<int>& x) {
  if (dn_value(x) != 0) throw BkmError(ErrorKind::NotASolution, "d^(n) does not vanish");
  if (is_hole_solution(x)) return true;
  auto blocks = block_decompose(x);
  bool ones = false, big = false;
  for (auto& b : blocks) {
    if (std::all_of(b.begin(), b.end(), [](int v) { return v == 1; })) ones = true;
    if (std::any_of(b.begin(), b.end(), [](int v) { return v > 1; })) big = true;
  }
  return blocks.size() >= 2 && ones && big;
}

std::vector<DnSolution> enumerate_dn(std::size_t n, bool include_zero) {
  const int box = dn_box(n);
  const long budget = static_cast<long>(n + 1);
  std::vector<DnSolution> out;
  std::vector<int> x(n, 0);
  // prefix sums of squares only grow, so prune once they pass n + 1
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long partial) {
    if (i == n) {
      long total = partial + (n == 0 ? 0 : static_cast<long>(x[n - 1] - 1) * (x[n - 1] - 1));
      if (n == 0 || total != budget) return;
      bool zero = std::all_of(x.begin(), x.end(), [](int v) { return v == 0; });
      if (zero && !include_zero) return;
      out.push_back({x, block_decompose(x), is_hole_solution(x)});
      return;
    }
    for (int v = 0; v <= box; ++v) {
      long t = (i == 0) ? v - 1 : static_cast<long>(x[i - 1]) + v - 1;
      long next = partial + t * t;
      if (next > budget) continue;
      x[i] = v;
      rec(i + 1, next);
    }
    x[i] = 0;
  };
  rec(0, 0);
  return out;
}

KkResult kk_linked(const GradedNilpotent& alg, const Weight& lambda, const RootSum& beta, std::size_t search_budget) {
  const CartanMatrix& a = alg.matrix();
  if (beta.size() != a.size() || !beta.is_nonnegative())
    throw BkmError(ErrorKind::InvalidInput, "beta has the wrong shape");
  if (beta.height() > alg.cutoff())
    throw BkmError(ErrorKind::InvalidInput, "beta lies above the engine cutoff");

  Weight shifted = lambda;
  Weight rho = weyl_vector(a);
  for (std::size_t i = 0; i < a.size(); ++i) shifted[i] += rho[i];

  std::vector<RootSum> roots;
  for (auto& r : alg.positive_roots())
    if (r.leq(beta)) roots.push_back(r);
  std::vector<Rational> top_pair, norm;
  for (auto& r : roots) {
    top_pair.push_back(pair_weight_root(a, shifted, r));
    norm.push_back(pair_roots(a, r, r));
  }

  KkResult res;
  std::set<RootSum> dead;
  std::vector<KkStep> chain;
  std::size_t visited = 0;
  std::function<bool(const RootSum&)> dfs = [&](const RootSum& rest) -> bool {
    if (rest.is_zero()) return true;
    if (dead.count(rest)) return false;
    if (++visited > search_budget) {
      res.exhausted = true;
      return false;
    }
    RootSum done = beta - rest;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      const RootSum& r = roots[k];
      if (!r.leq(rest)) continue;
      Rational lhs = 2 * (top_pair[k] - pair_roots(a, done, r));
      for (int n = 1; r.scaled(n).leq(rest); ++n) {
        if (lhs != n * norm[k]) continue;
        chain.push_back({r, n});
        if (dfs(rest - r.scaled(n))) return true;
        chain.pop_back();
        if (res.exhausted) return false;
      }
    }
    dead.insert(rest);
    return false;
  };
  res.linked = dfs(beta);
  if (res.linked) res.witness = chain;
  return res;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

bool unique_solution_predicate(long m1, long m2) {
  if (m1 > m2) std::swap(m1, m2);
  if (m1 < 1) throw BkmError(ErrorKind::InvalidInput, "powers must be positive");
  long d = std::gcd(m1, m2);

  long rest = d;
  for (long p = 2; p * p <= rest; ++p) {
    if (rest % p) continue;
    if (p != 2 && p != 3 && p % 6 != 5) return false;
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1 && rest != 2 && rest != 3 && rest % 6 != 5) return false;

  if (m1 == m2 && d % 3 != 0) return false;
  if (m2 != m1 && m2 != 2 * m1) {
    if (d % 3 == 0) return false;
    long big = (m1 * m1 + m2 * m2 - m1 * m2) / (d * d);
    if (!is_prime(big) || big % 6 != 1) return false;
  }
  return true;
}

bool unique_solution_bruteforce(long m1, long m2) {
  if (m1 > m2) std::swap(m1, m2);
  long side = std::max(m1, m2);
  int count = 0;
  for (long x = 1; x <= side; ++x)
    for (long y = 1; y <= side; ++y)
      if (x * x + y * y - m1 * x - m2 * y + x * y == 0) ++count;
  return count == 1;
}

}  // namespace bkm
