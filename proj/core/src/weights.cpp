#include "bkm/weights.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "bkm/errors.hpp"

namespace bkm {

namespace {

std::vector<RootSum> sorted_unique(std::set<RootSum> s) {
  std::vector<RootSum> v(s.begin(), s.end());
  std::sort(v.begin(), v.end(), height_lex_less);
  return v;
}

bool powers_fit(const Integer& m, int max_height) { return m <= max_height; }

}  // namespace

void validate_holes(const CartanMatrix& a, const Weight& lambda, const std::vector<Hole>& holes) {
  ConeInfo cone = cone_membership(a, lambda);
  std::vector<bool> in_j(a.size(), false);
  for (auto i : cone.j_lambda) in_j[i] = true;
  for (const auto& h : holes) {
    if (h.size() != a.size() || !h.is_nonnegative())
      throw BkmError(ErrorKind::InvalidInput, "hole " + h.str() + " has the wrong shape");
    NodeSet supp = h.support();
    if (supp.empty()) throw BkmError(ErrorKind::InvalidInput, "empty hole would kill the top weight");
    if (!a.is_independent(supp)) throw BkmError(ErrorKind::InvalidInput, "hole " + h.str() + " is not independent");
    for (auto i : supp) {
      if (!in_j[i])
        throw BkmError(ErrorKind::InvalidInput, "hole " + h.str() + " uses node " + std::to_string(i) +
                                                    " outside J_lambda");
      if (a.type(i) != NodeType::Heisenberg && Integer(h[i]) != cone.powers[i])
        throw BkmError(ErrorKind::InvalidInput, "hole " + h.str() + " has power " + std::to_string(h[i]) +
                                                    " at node " + std::to_string(i) + ", expected " +
                                                    cone.powers[i].get_str());
    }
  }
}

std::vector<Hole> minimal_holes(const std::vector<Hole>& holes) {
  std::set<RootSum> uniq(holes.begin(), holes.end());
  std::set<RootSum> out;
  for (const auto& h : uniq) {
    bool dominated = false;
    for (const auto& g : uniq)
      if (g != h && g.leq(h)) {
        dominated = true;
        break;
      }
    if (!dominated) out.insert(h);
  }
  return sorted_unique(std::move(out));
}

bool is_nice(const CartanMatrix& a, const std::vector<Hole>& holes) {
  for (const auto& h : minimal_holes(holes)) {
    NodeSet supp = h.support();
    bool imaginary = std::all_of(supp.begin(), supp.end(), [&](std::size_t i) { return a.is_imaginary(i); });
    bool real_singleton = supp.size() == 1 && a.is_real(supp[0]);
    if (!imaginary && !real_singleton) return false;
  }
  return true;
}

std::vector<Hole> simple_holes(const CartanMatrix& a, const Weight& lambda) {
  ConeInfo cone = cone_membership(a, lambda);
  std::vector<Hole> out;
  for (auto i : cone.j_lambda) {
    if (!cone.powers[i].fits_sint_p()) continue;
    out.push_back(RootSum::unit(a.size(), i, static_cast<int>(cone.powers[i].get_si())));
  }
  return out;
}

std::vector<Hole> indep_enumerate(const CartanMatrix& a, const Weight& lambda, int cap, int max_height) {
  ConeInfo cone = cone_membership(a, lambda);
  const NodeSet& j = cone.j_lambda;
  std::set<RootSum> out;
  RootSum cur(a.size());
  NodeSet chosen;
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int height) {
    if (k == j.size()) {
      out.insert(cur);
      return;
    }
    rec(k + 1, height);
    std::size_t i = j[k];
    for (auto c : chosen)
      if (a.adjacent(c, i)) return;
    chosen.push_back(i);
    if (a.type(i) == NodeType::Heisenberg) {
      for (int m = 1; m <= cap && height + m <= max_height; ++m) {
        cur[i] = m;
        rec(k + 1, height + m);
      }
    } else if (powers_fit(cone.powers[i], max_height - height)) {
      int m = static_cast<int>(cone.powers[i].get_si());
      cur[i] = m;
      rec(k + 1, height + m);
    }
    cur[i] = 0;
    chosen.pop_back();
  };
  rec(0, 0);
  return sorted_unique(std::move(out));
}

std::vector<Hole> upper_closure(const CartanMatrix& a, const Weight& lambda, const std::vector<Hole>& holes, int cap,
                                int max_height) {
  std::vector<Hole> out;
  for (const auto& g : indep_enumerate(a, lambda, cap, max_height))
    if (std::any_of(holes.begin(), holes.end(), [&](const Hole& h) { return h.leq(g); })) out.push_back(g);
  return out;
}

bool independent_weight_in_wtV(const CartanMatrix& a, const std::vector<Hole>& holes, const RootSum& beta) {
  if (!beta.is_nonnegative()) throw BkmError(ErrorKind::NonIntegralDifference, "negative coefficient in " + beta.str());
  if (!a.is_independent(beta.support()))
    throw BkmError(ErrorKind::InvalidInput, "support of " + beta.str() + " is not independent");
  for (const auto& h : holes)
    if (!h.is_zero() && h.leq(beta)) return false;
  return true;
}

NodeSet integrability_set(const CartanMatrix& a, const Weight& lambda, const std::vector<Hole>& holes) {
  NodeSet out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a.is_real(i)) continue;
    if (!is_integer(lambda[i]) || lambda[i] < 0) continue;
    RootSum target = RootSum::unit(a.size(), i, static_cast<int>(to_int64(lambda[i]) + 1));
    if (std::find(holes.begin(), holes.end(), target) != holes.end()) out.push_back(i);
  }
  return out;
}

namespace {

// Brings beta to the representative with (lambda - beta)(alpha_i^vee) >= 0 on
// the given real nodes. Returns false if the orbit leaves lambda - Z>=0 Pi.
bool dominant_representative(const CartanMatrix& a, const Weight& lambda, const NodeSet& nodes, RootSum& beta) {
  for (;;) {
    Weight mu = subtract_roots(a, lambda, beta);
    bool moved = false;
    for (auto i : nodes) {
      if (mu[i] >= 0) continue;
      // s_i(lambda - beta) = lambda - (beta + mu_i alpha_i)
      beta[i] += static_cast<int>(to_int64(mu[i]));
      if (beta[i] < 0) return false;
      moved = true;
      break;
    }
    if (!moved) return true;
  }
}

}  // namespace

bool thmA_membership(const CartanMatrix& a, const Weight& lambda, const std::vector<Hole>& holes,
                     const RootSum& beta_in) {
  if (!beta_in.is_nonnegative())
    throw BkmError(ErrorKind::NonIntegralDifference, "lambda - mu must lie in Z>=0 Pi, got " + beta_in.str());
  RootSum beta = beta_in;
  NodeSet iv = integrability_set(a, lambda, holes);
  if (!dominant_representative(a, lambda, iv, beta)) return false;
  if (beta.is_zero()) return true;

  auto comps = a.components(beta.support());
  std::vector<std::size_t> pick(comps.size(), 0);
  for (;;) {
    RootSum prime(a.size());
    for (std::size_t k = 0; k < comps.size(); ++k) {
      std::size_t j = comps[k][pick[k]];
      prime[j] = comps[k].size() == 1 ? beta[j] : 1;
    }
    if (independent_weight_in_wtV(a, holes, prime)) return true;
    std::size_t k = 0;
    while (k < comps.size() && ++pick[k] == comps[k].size()) pick[k++] = 0;
    if (k == comps.size()) return false;
  }
}

std::vector<RootSum> thmA_enumerate(const CartanMatrix& a, const Weight& lambda, const std::vector<Hole>& holes,
                                    int cutoff) {
  std::vector<RootSum> out;
  for (const auto& beta : root_sums_up_to(a.size(), cutoff))
    if (thmA_membership(a, lambda, holes, beta)) out.push_back(beta);
  return out;
}

bool simple_formula_membership(const CartanMatrix& a, const Weight& lambda, const RootSum& beta_in) {
  ConeInfo cone = cone_membership(a, lambda);
  std::vector<bool> in_j(a.size(), false);
  for (auto i : cone.j_lambda) in_j[i] = true;
  NodeSet real_j;
  for (auto i : cone.j_lambda)
    if (a.is_real(i)) real_j.push_back(i);
  RootSum beta = beta_in;
  if (!dominant_representative(a, lambda, real_j, beta)) return false;
  for (const auto& comp : a.components(beta.support())) {
    if (comp.size() > 1) {
      if (std::none_of(comp.begin(), comp.end(), [&](std::size_t j) { return lambda[j] != 0; })) return false;
    } else {
      std::size_t j = comp[0];
      if (in_j[j] && Integer(beta[j]) >= cone.powers[j]) return false;
    }
  }
  return true;
}

std::vector<RootSum> simple_formula_enumerate(const CartanMatrix& a, const Weight& lambda, int cutoff) {
  std::vector<RootSum> out;
  for (const auto& beta : root_sums_up_to(a.size(), cutoff))
    if (simple_formula_membership(a, lambda, beta)) out.push_back(beta);
  return out;
}

ThmBResult thmB_weights(const CartanMatrix& a, const Weight& lambda, const HoleSet& hs, int cutoff) {
  ThmBResult res;
  const int cap = hs.cap > 0 ? hs.cap : cutoff;

  // union over the simples L(lambda - gamma), gamma a non-hole
  std::set<RootSum> simples;
  for (const auto& gamma : indep_enumerate(a, lambda, cap, cutoff)) {
    bool hole = std::any_of(hs.holes.begin(), hs.holes.end(), [&](const Hole& h) { return h.leq(gamma); });
    if (hole) continue;
    Weight shifted = subtract_roots(a, lambda, gamma);
    for (const auto& b : thmA_enumerate(a, shifted, simple_holes(a, shifted), cutoff - gamma.height()))
      simples.insert(b + gamma);
  }
  res.via_simples = sorted_unique(std::move(simples));

  // union over nice supersets: each non-nice minimal hole is dominated by a
  // real singleton of its support or by its imaginary part
  std::vector<Hole> mins = minimal_holes(hs.holes);
  ConeInfo cone = cone_membership(a, lambda);
  std::vector<std::vector<Hole>> options;
  for (const auto& h : mins) {
    if (is_nice(a, {h})) continue;
    std::vector<Hole> opts;
    RootSum imag(a.size());
    for (auto i : h.support()) {
      if (a.is_real(i))
        opts.push_back(RootSum::unit(a.size(), i, h[i]));
      else
        imag[i] = h[i];
    }
    if (!imag.is_zero()) opts.push_back(imag);
    options.push_back(std::move(opts));
  }
  std::set<RootSum> nice_union;
  std::vector<std::size_t> pick(options.size(), 0);
  for (;;) {
    std::vector<Hole> ext = mins;
    for (std::size_t k = 0; k < options.size(); ++k) ext.push_back(options[k][pick[k]]);
    ext = minimal_holes(ext);
    if (!is_nice(a, ext)) throw std::logic_error("thmB_weights: extension is not nice");
    for (const auto& b : thmA_enumerate(a, lambda, ext, cutoff)) nice_union.insert(b);
    std::size_t k = 0;
    while (k < options.size() && ++pick[k] == options[k].size()) pick[k++] = 0;
    if (k == options.size()) break;
  }
  res.via_nice_supersets = sorted_unique(std::move(nice_union));
  res.agree = res.via_nice_supersets == res.via_simples;
  return res;
}

MinkowskiResult minkowski_check(const CartanMatrix& a, const Weight& lambda, const std::vector<Hole>& holes,
                                const GradedNilpotent& alg, int cutoff) {
  MinkowskiResult res;
  std::vector<bool> in_jv(a.size(), false);
  for (const auto& h : minimal_holes(holes))
    for (auto i : h.support()) in_jv[i] = true;
  auto inside = [&](const RootSum& b) {
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[i] != 0 && !in_jv[i]) return false;
    return true;
  };

  res.lhs = thmA_enumerate(a, lambda, holes, cutoff);

  // Z>=0-span of the positive roots not supported in J_V
  std::vector<RootSum> outside_roots;
  for (const auto& r : alg.positive_roots())
    if (!inside(r) && r.height() <= cutoff) outside_roots.push_back(r);
  std::set<RootSum> span{RootSum(a.size())};
  std::vector<RootSum> frontier{RootSum(a.size())};
  while (!frontier.empty()) {
    std::vector<RootSum> next;
    for (const auto& s : frontier)
      for (const auto& r : outside_roots) {
        RootSum t = s + r;
        if (t.height() <= cutoff && span.insert(t).second) next.push_back(t);
      }
    frontier = std::move(next);
  }

  std::set<RootSum> rhs;
  for (const auto& b1 : res.lhs) {
    if (!inside(b1)) continue;
    for (const auto& b2 : span) {
      RootSum t = b1 + b2;
      if (t.height() <= cutoff) rhs.insert(t);
    }
  }
  res.rhs = sorted_unique(std::move(rhs));
  res.equal = res.lhs == res.rhs;
  return res;
}

std::vector<RootSum> support_of(const std::map<RootSum, std::size_t>& dims, int cutoff) {
  std::vector<RootSum> out;
  for (const auto& [b, d] : dims)
    if (d > 0 && b.height() <= cutoff) out.push_back(b);
  std::sort(out.begin(), out.end(), height_lex_less);
  return out;
}

}  // namespace bkm
