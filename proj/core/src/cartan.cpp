#include "bkm/cartan.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>

#include "bkm/errors.hpp"

namespace bkm {

const char* node_type_name(NodeType t) {
  switch (t) {
    case NodeType::Real: return "Real";
    case NodeType::Heisenberg: return "Heisenberg";
    case NodeType::Negative: return "Negative";
  }
  return "?";
}

RootSum RootSum::unit(std::size_t n, std::size_t i, int k) {
  RootSum r(n);
  r.c[i] = k;
  return r;
}

int RootSum::height() const { return std::accumulate(c.begin(), c.end(), 0); }

NodeSet RootSum::support() const {
  NodeSet s;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) s.push_back(i);
  return s;
}

bool RootSum::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

bool RootSum::is_nonnegative() const {
  return std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
}

bool RootSum::leq(const RootSum& o) const {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] > o.c[i]) return false;
  return true;
}

RootSum RootSum::operator+(const RootSum& o) const {
  RootSum r(*this);
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
  return r;
}

RootSum RootSum::operator-(const RootSum& o) const {
  RootSum r(*this);
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
  return r;
}

RootSum RootSum::scaled(int k) const {
  RootSum r(*this);
  for (auto& x : r.c) x *= k;
  return r;
}

std::string RootSum::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

bool height_lex_less(const RootSum& a, const RootSum& b) {
  int ha = a.height(), hb = b.height();
  if (ha != hb) return ha < hb;
  return a.c < b.c;
}

std::vector<RootSum> root_sums_of_height(std::size_t n, int h) {
  std::vector<RootSum> out;
  if (n == 0) {
    if (h == 0) out.emplace_back(0);
    return out;
  }
  RootSum cur(n);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == n) {
      cur.c[i] = left;
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur.c[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, h);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RootSum> root_sums_up_to(std::size_t n, int max_height) {
  std::vector<RootSum> out;
  for (int h = 0; h <= max_height; ++h) {
    auto level = root_sums_of_height(n, h);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::string Weight::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += to_string(p[i]);
  }
  return s + ")";
}

namespace {

[[noreturn]] void reject(const std::string& rule) { throw BkmError(ErrorKind::RejectNotBkm, rule); }

}  // namespace

CartanMatrix CartanMatrix::validate(const Mat& raw) {
  const std::size_t n = raw.size();
  if (n == 0) reject("matrix must be non-empty");
  for (const auto& row : raw)
    if (row.size() != n) reject("matrix must be square");

  CartanMatrix m;
  m.a_ = raw;
  for (auto& row : m.a_)
    for (auto& x : row) x.canonicalize();
  m.types_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& aii = m.a_[i][i];
    if (aii == 2)
      m.types_[i] = NodeType::Real;
    else if (aii == 0)
      m.types_[i] = NodeType::Heisenberg;
    else if (aii < 0)
      m.types_[i] = NodeType::Negative;
    else
      reject("diagonal entry A[" + std::to_string(i) + "][" + std::to_string(i) + "] must be 2 or <= 0");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Rational& x = m.a_[i][j];
      std::string at = "A[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      if (x > 0) reject(at + " must be <= 0 off the diagonal");
      if (m.types_[i] == NodeType::Real && !is_integer(x))
        reject(at + " must be an integer since node " + std::to_string(i) + " is real");
      if ((x == 0) != (m.a_[j][i] == 0)) reject(at + " = 0 must hold iff A[" + std::to_string(j) + "][" +
                                                std::to_string(i) + "] = 0");
    }

  // symmetrizer by spanning-tree propagation, then a check on every edge
  Vec d(n);
  std::vector<bool> seen(n, false);
  bool ok = true;
  for (std::size_t root = 0; root < n && ok; ++root) {
    if (seen[root]) continue;
    std::vector<std::size_t> comp{root}, stack{root};
    seen[root] = true;
    d[root] = 1;
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || m.a_[i][j] == 0 || seen[j]) continue;
        d[j] = d[i] * m.a_[i][j] / m.a_[j][i];
        seen[j] = true;
        comp.push_back(j);
        stack.push_back(j);
      }
    }
    Rational mn = d[comp.front()];
    for (auto i : comp) mn = std::min(mn, d[i]);
    for (auto i : comp) d[i] /= mn;
  }
  for (std::size_t i = 0; i < n && ok; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (d[i] * m.a_[i][j] != d[j] * m.a_[j][i]) {
        ok = false;
        break;
      }
  if (ok) m.d_ = d;
  return m;
}

CartanMatrix CartanMatrix::validate_ints(const std::vector<std::vector<long>>& raw) {
  Mat m;
  for (const auto& row : raw) {
    Vec r;
    for (long x : row) r.emplace_back(x);
    m.push_back(std::move(r));
  }
  return validate(m);
}

bool CartanMatrix::has_real_nodes() const {
  return std::any_of(types_.begin(), types_.end(), [](NodeType t) { return t == NodeType::Real; });
}

const Vec& CartanMatrix::symmetrizer() const {
  if (!d_) throw BkmError(ErrorKind::NotSymmetrizable, "no d with d_i A_ij = d_j A_ji");
  return *d_;
}

Rational CartanMatrix::form(std::size_t i, std::size_t j) const { return symmetrizer()[i] * a_[i][j]; }

std::vector<NodeSet> CartanMatrix::components(const NodeSet& s) const {
  std::vector<NodeSet> out;
  std::vector<bool> used(s.size(), false);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (used[k]) continue;
    NodeSet comp{s[k]};
    used[k] = true;
    for (std::size_t q = 0; q < comp.size(); ++q)
      for (std::size_t t = 0; t < s.size(); ++t)
        if (!used[t] && adjacent(comp[q], s[t])) {
          used[t] = true;
          comp.push_back(s[t]);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool CartanMatrix::is_independent(const NodeSet& s) const {
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = x + 1; y < s.size(); ++y)
      if (adjacent(s[x], s[y])) return false;
  return true;
}

std::string CartanMatrix::canonical_text() const {
  std::string s = "[";
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t j = 0; j < a_.size(); ++j) {
      if (j) s += ",";
      s += to_string(a_[i][j]);
    }
    s += "]";
  }
  return s + "]";
}

std::string CartanMatrix::hash_hex() const {
  // FNV-1a, stable across platforms and runs
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : canonical_text()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CartanMatrix rank2(const Rational& b, const Rational& a, const Rational& c, const Rational& d) {
  return CartanMatrix::validate({{-b, -a}, {-c, -d}});
}

CartanMatrix negative_type_a(std::size_t n) {
  Mat m(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = -2;
    if (i + 1 < n) m[i][i + 1] = m[i + 1][i] = -1;
  }
  return CartanMatrix::validate(m);
}

Weight subtract_roots(const CartanMatrix& a, const Weight& lambda, const RootSum& beta) {
  Weight r = lambda;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (beta[j] != 0) r[i] -= beta[j] * a(i, j);
  return r;
}

Weight add_roots(const CartanMatrix& a, const Weight& lambda, const RootSum& beta) {
  Weight r = lambda;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (beta[j] != 0) r[i] += beta[j] * a(i, j);
  return r;
}

Weight weyl_vector(const CartanMatrix& a) {
  Weight r(Vec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a(i, i) / 2;
  return r;
}

Rational pair_weight_root(const CartanMatrix& a, const Weight& lambda, const RootSum& beta) {
  const Vec& d = a.symmetrizer();
  Rational s = 0;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (beta[j] != 0) s += d[j] * lambda[j] * beta[j];
  return s;
}

Rational pair_roots(const CartanMatrix& a, const RootSum& x, const RootSum& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (y[j] != 0) s += a.form(i, j) * (x[i] * y[j]);
  }
  return s;
}

Rational bilinear_residual(const CartanMatrix& a, const Weight& lambda, const RootSum& beta) {
  Weight lr = lambda;
  Weight rho = weyl_vector(a);
  for (std::size_t i = 0; i < a.size(); ++i) lr[i] += rho[i];
  return 2 * pair_weight_root(a, lr, beta) - pair_roots(a, beta, beta);
}

ConeInfo cone_membership(const CartanMatrix& a, const Weight& lambda) {
  ConeInfo info;
  const std::size_t n = a.size();
  info.powers.assign(n, 0);
  bool plus = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& l = lambda[i];
    if (l < 0 || (a.is_real(i) && !is_integer(l))) plus = false;
    bool in = false;
    if (a.type(i) == NodeType::Heisenberg) {
      in = (l == 0);
      if (in) info.powers[i] = 1;
    } else {
      Rational q = 2 * l / a(i, i);
      if (q >= 0 && is_integer(q)) {
        in = true;
        info.powers[i] = q.get_num() + 1;
      }
    }
    if (in) info.j_lambda.push_back(i);
  }
  info.in_p_plus = plus;
  info.in_p_pm = info.j_lambda.size() == n;
  return info;
}

Weight weight_from_powers(const CartanMatrix& a, const std::vector<long>& powers) {
  Weight w(Vec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    w[i] = a.type(i) == NodeType::Heisenberg ? Rational(0) : a(i, i) / 2 * (powers[i] - 1);
  return w;
}

Weight reflect(const CartanMatrix& a, const Weight& nu, std::size_t i) {
  Weight r = nu;
  Rational ni = nu[i];
  for (std::size_t k = 0; k < a.size(); ++k) r[k] -= ni * a(k, i);
  return r;
}

}  // namespace bkm
