#include <algorithm>

#include "bkm/errors.hpp"
#include "bkm/lie_engine.hpp"
#include "bkm/weights.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bkm;
using namespace bkm::testing;

namespace {

std::shared_ptr<const GradedNilpotent> engine(const CartanMatrix& a, int cutoff) {
  return GradedNilpotent::build(a, {cutoff, 1024, 1});
}

Vec word_sum(const GradedNilpotent& g, const RootSum& beta, const std::vector<std::pair<std::string, long>>& terms) {
  Vec out(g.dim_u(beta));
  for (auto& [w, c] : terms) {
    auto nf = g.normal_form(beta, w);
    for (std::size_t k = 0; k < nf.idx.size(); ++k) out[nf.idx[k]] += c * nf.val[k];
  }
  return out;
}

long binom(long n, long k) {
  long r = 1;
  for (long t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

Vec bracket(const GradedNilpotent& g, const RootSum& b, const Vec& x, const RootSum& c, const Vec& y) {
  Vec xy = g.multiply(b, x, c, y);
  Vec yx = g.multiply(c, y, b, x);
  for (std::size_t k = 0; k < xy.size(); ++k) xy[k] -= yx[k];
  return xy;
}

}  // namespace

TEST_CASE("root multiplicities, pinned grades") {
  auto g = engine(rank2(2, 1, 1, 2), 4);
  CHECK(g->multiplicity(rs({2, 2})) == 1);
  auto sl3 = engine(mat({{2, -1}, {-1, 2}}), 4);
  CHECK(sl3->multiplicity(rs({1, 1})) == 1);
  CHECK(sl3->multiplicity(rs({2, 1})) == 0);
  auto a3 = engine(negative_type_a(3), 3);
  CHECK(a3->multiplicity(rs({1, 0, 1})) == 0);
  CHECK(a3->multiplicity(rs({1, 1, 1})) == 1);
}

TEST_CASE("simple roots have multiplicity one") {
  for (auto a : {negative_type_a(3), mat({{2, -1, 0}, {-1, 0, -2}, {0, -2, -3}}), mat({{0, -1}, {-1, 2}})}) {
    auto g = engine(a, 2);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(g->multiplicity(RootSum::unit(a.size(), i)) == 1);
  }
}

TEST_CASE("necklace counts") {
  auto a2 = negative_type_a(2);
  CHECK(witt_multiplicity(a2, 1, 1) == 1);
  CHECK(witt_multiplicity(a2, 2, 2) == 1);
  CHECK(witt_multiplicity(a2, 2, 4) == 2);
  try {
    witt_multiplicity(mat({{2, -1}, {-1, 2}}), 1, 1);
    FAIL("expected NotFreeCase");
  } catch (const BkmError& e) {
    CHECK(e.kind() == ErrorKind::NotFreeCase);
  }
}

TEST_CASE("free rank-2 multiplicities match the necklace formula to height 10") {
  for (auto a : {negative_type_a(2), rank2(1, 3, 3, 2), mat({{0, -1}, {-1, -2}}), mat({{0, -2}, {-1, 0}})}) {
    auto g = engine(a, 10);
    for (auto& b : g->grades()) {
      if (b.height() == 0) continue;
      CHECK(Integer(static_cast<unsigned long>(g->multiplicity(b))) == witt_multiplicity(a, b[0], b[1]));
    }
  }
}

TEST_CASE("PBW: graded dimensions equal the Kostant function of the multiplicities") {
  for (auto a : {negative_type_a(3), mat({{2, -1}, {-1, 2}}), mat({{2, -1, 0}, {-1, -2, -1}, {0, -1, 0}})}) {
    auto g = engine(a, 6);
    for (auto& b : g->grades()) CHECK(Integer(static_cast<unsigned long>(g->dim_u(b))) == g->kostant(b));
  }
}

TEST_CASE("independent support gives one-dimensional weight spaces") {
  auto a = mat({{2, -1, 0, 0}, {-1, -2, -1, 0}, {0, -1, 0, -1}, {0, 0, -1, -3}});
  auto g = engine(a, 6);
  for (auto& b : g->grades())
    if (a.is_independent(b.support())) CHECK(g->dim_u(b) == 1);
}

TEST_CASE("Serre relations hold in U(n^-)") {
  auto a = mat({{2, -1, 0}, {-2, 2, -1}, {0, -1, -2}});
  auto g = engine(a, 6);
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      long k;
      if (a(i, j) == 0)
        k = 1;
      else if (a.is_real(i))
        k = 1 - to_int64(a(i, j));
      else
        continue;
      // (ad f_i)^k f_j = sum_r (-1)^r C(k,r) f_i^{k-r} f_j f_i^r
      RootSum beta = RootSum::unit(n, i, static_cast<int>(k)) + RootSum::unit(n, j);
      if (beta.height() > g->cutoff()) continue;
      std::vector<std::pair<std::string, long>> terms;
      for (long r = 0; r <= k; ++r) {
        std::string w(static_cast<std::size_t>(k - r), static_cast<char>(i));
        w += static_cast<char>(j);
        w += std::string(static_cast<std::size_t>(r), static_cast<char>(i));
        terms.emplace_back(w, (r % 2 ? -1 : 1) * binom(k, r));
      }
      CHECK(is_zero(word_sum(*g, beta, terms)));
    }
}

TEST_CASE("bracket tables are antisymmetric and satisfy Jacobi") {
  auto a = mat({{-2, -1, 0}, {-1, 2, -1}, {0, -1, 0}});
  auto g = engine(a, 6);
  auto roots = g->positive_roots();
  int triples = 0;
  for (auto& b : roots)
    for (auto& c : roots) {
      if ((b + c).height() > g->cutoff()) continue;
      auto t1 = g->bracket_table(b, c);
      auto t2 = g->bracket_table(c, b);
      std::size_t mb = g->multiplicity(b), mc = g->multiplicity(c);
      for (std::size_t p = 0; p < mb; ++p)
        for (std::size_t q = 0; q < mc; ++q) {
          Vec s = t1[p * mc + q];
          for (std::size_t k = 0; k < s.size(); ++k) s[k] += t2[q * mb + p][k];
          CHECK(is_zero(s));
        }
      for (auto& d : roots) {
        RootSum sum = b + c + d;
        if (sum.height() > g->cutoff() || triples > 60) continue;
        ++triples;
        auto xb = g->lie_basis(b), yb = g->lie_basis(c), zb = g->lie_basis(d);
        const Vec &x = xb[0], &y = yb.back(), &z = zb[0];
        Vec j1 = bracket(*g, b, x, c + d, bracket(*g, c, y, d, z));
        Vec j2 = bracket(*g, c, y, d + b, bracket(*g, d, z, b, x));
        Vec j3 = bracket(*g, d, z, b + c, bracket(*g, b, x, c, y));
        for (std::size_t k = 0; k < j1.size(); ++k) j1[k] += j2[k] + j3[k];
        CHECK(is_zero(j1));
        // brackets of Lie elements stay in n^-
        CHECK_NOTHROW(g->lie_coords(b + c, bracket(*g, b, x, c, y)));
      }
    }
  CHECK(triples > 0);
}

TEST_CASE("raising operators respect the grading and the relation [e_i, f_j] = delta_ij h_i") {
  auto a = mat({{2, -1, 0}, {-1, -2, -1}, {0, -1, 0}});
  auto g = engine(a, 5);
  Weight l = wt({1, 3, -2});
  VermaModel vm(g, l);
  const std::size_t n = a.size();
  for (auto& beta : g->grades()) {
    if (beta.height() + 1 > g->cutoff()) continue;
    Vec v(vm.dim(beta));
    for (auto& x : v) x = uniform(-3, 3);
    for (std::size_t i = 0; i < n; ++i) {
      Mat e = vm.raising(i, beta);
      if (beta[i] == 0) {
        CHECK(e.empty());
      } else {
        CHECK(e.size() == vm.dim(beta - RootSum::unit(n, i)));
      }
      for (std::size_t j = 0; j < n; ++j) {
        RootSum up = beta + RootSum::unit(n, j);
        Vec lhs = vm.apply_raising(i, up, vm.lower(j, beta, v));
        Vec ev = vm.apply_raising(i, beta, v);
        if (beta[i] > 0) {
          Vec fe = vm.lower(j, beta - RootSum::unit(n, i), ev);
          for (std::size_t k = 0; k < lhs.size(); ++k) lhs[k] -= fe[k];
        } else {
          CHECK(is_zero(ev));
        }
        if (i == j) {
          Rational h = subtract_roots(a, l, beta)[i];
          for (std::size_t k = 0; k < lhs.size(); ++k) CHECK(lhs[k] == h * v[k]);
        } else {
          CHECK(is_zero(lhs));
        }
      }
    }
  }
}

TEST_CASE("rank-1 Verma examples") {
  auto neg = engine(mat({{-2}}), 8);
  VermaModel m4(neg, wt({-4}));
  for (int n = 1; n <= 8; ++n) CHECK((maximal_vectors(m4, rs({n})).dim > 0) == (n == 5));

  auto heis = engine(mat({{0}}), 6);
  VermaModel m0(heis, wt({0}));
  for (int n = 1; n <= 6; ++n) {
    CHECK(maximal_vectors(m0, rs({n})).dim == 1);
    CHECK(is_zero(m0.raise_word(0, rs({n}), std::string(static_cast<std::size_t>(n), '\0'))));
  }

  auto sl2 = engine(mat({{2}}), 6);
  VermaModel m1(sl2, wt({1}));
  for (int n = 1; n <= 6; ++n) CHECK((maximal_vectors(m1, rs({n})).dim > 0) == (n == 2));
}

TEST_CASE("rank-1 theory: kernel of e at grade n iff n(lambda - (A/2)(n-1)) = 0") {
  const int cutoff = 8;
  for (int trial = 0; trial < 50; ++trial) {
    Rational a11, l;
    switch (trial % 3) {
      case 0:
        a11 = 2;
        l = ratio(uniform(-3, 6), trial % 2 ? 1 : 2);
        break;
      case 1:
        a11 = ratio(-uniform(1, 6), uniform(1, 3));
        l = (trial % 2) ? a11 / 2 * uniform(-1, 6) : ratio(uniform(-9, 9), uniform(1, 4));
        break;
      default:
        a11 = 0;
        l = (trial % 2) ? Rational(0) : ratio(uniform(-4, 4), uniform(1, 3));
    }
    auto a = CartanMatrix::validate({{a11}});
    auto g = engine(a, cutoff);
    VermaModel vm(g, Weight(Vec{l}));
    for (int n = 1; n <= cutoff; ++n) {
      bool expect = Rational(n) * (l - a11 / 2 * (n - 1)) == 0;
      CHECK((maximal_vectors(vm, rs({n})).dim > 0) == expect);
    }
  }
}

TEST_CASE("maximal vector counts, pinned cases") {
  auto a = rank2(2, 2, 2, 2);
  auto g = engine(a, 4);
  VermaModel vm(g, weyl_vector(a));
  CHECK(maximal_vectors(vm, rs({1, 1})).dim == 1);

  auto b = rank2(1, 1, 1, 1);
  auto gb = engine(b, 4);
  VermaModel v44(gb, weight_from_powers(b, {4, 4}));
  CHECK(maximal_vectors(v44, rs({2, 2})).dim == 2);

  auto a4 = negative_type_a(4);
  auto g4 = engine(a4, 4);
  VermaModel vr(g4, weyl_vector(a4));
  CHECK(bilinear_residual(a4, weyl_vector(a4), rs({2, 1, 0, 1})) == 0);
  CHECK(maximal_vectors(vr, rs({2, 1, 0, 1})).dim == 0);
}

TEST_CASE("maximal vectors only at norm-equality solutions") {
  std::vector<std::pair<CartanMatrix, Weight>> cases;
  auto a2 = negative_type_a(2);
  cases.emplace_back(a2, weight_from_powers(a2, {2, 4}));
  auto m = mat({{2, -1}, {-1, -2}});
  cases.emplace_back(m, wt({0, -1}));
  auto h = mat({{0, -1, 0}, {-1, -2, -1}, {0, -1, 2}});
  cases.emplace_back(h, wt({0, 1, 1}));
  for (auto& [a, l] : cases) {
    auto g = engine(a, 6);
    VermaModel vm(g, l);
    for (auto& beta : g->grades())
      if (beta.height() > 0 && maximal_vectors(vm, beta).dim > 0) CHECK(bilinear_residual(a, l, beta) == 0);
  }
}

TEST_CASE("rank-2 all-negative: maximal vectors at least the root multiplicities along the ray") {
  for (int trial = 0; trial < 12; ++trial) {
    long b = uniform(1, 3), aa = uniform(1, 3), d = uniform(1, 3);
    auto a = rank2(b, aa, aa, d);
    auto g = engine(a, 7);
    Weight l = weight_from_powers(a, {uniform(1, 5), uniform(1, 5)});
    VermaModel vm(g, l);
    for (auto& beta : g->grades()) {
      if (beta.height() == 0 || bilinear_residual(a, l, beta) != 0) continue;
      std::size_t bound = 0;
      for (int t = 1; t <= beta.height(); ++t) {
        if (beta[0] % t || beta[1] % t) continue;
        RootSum s = rs({beta[0] / t, beta[1] / t});
        bound += g->multiplicity(s);
      }
      CAPTURE(a.canonical_text());
      CAPTURE(l.str());
      CAPTURE(beta.str());
      CHECK(maximal_vectors(vm, beta).dim >= bound);
    }
  }
}

TEST_CASE("quotients by holes") {
  auto a3 = negative_type_a(3);
  auto g = engine(a3, 6);
  Weight rho = weyl_vector(a3);
  VermaModel vm(g, rho);

  auto verma = quotient_multiplicities(vm, {});
  for (auto& [b, d] : verma) CHECK(d == vm.dim(b));

  std::vector<RootSum> singles{rs({2, 0, 0}), rs({0, 2, 0}), rs({0, 0, 2})};
  auto q = quotient_multiplicities(vm, singles);
  CHECK(q == simple_multiplicities(vm));
  for (auto& [b, d] : q) CHECK(d <= vm.dim(b));
  CHECK(q.at(RootSum(3)) == 1);

  // redundant holes change nothing
  auto with_extra = singles;
  with_extra.push_back(rs({2, 0, 2}));
  CHECK(quotient_multiplicities(vm, with_extra) == q);
  std::vector<RootSum> one{rs({2, 0, 0})};
  std::vector<RootSum> closure{rs({2, 0, 0}), rs({2, 0, 2})};
  CHECK(quotient_multiplicities(vm, closure) == quotient_multiplicities(vm, one));
}

TEST_CASE("simple quotient: weights on the alpha_2 ray are lambda and lambda - alpha_2") {
  auto a = mat({{2, -1}, {-1, -2}});
  auto g = engine(a, 6);
  VermaModel vm(g, wt({0, -1}));
  auto s = simple_multiplicities(vm);
  CHECK(s.at(rs({0, 0})) == 1);
  CHECK(s.at(rs({0, 1})) == 1);
  for (int k = 2; k <= 6; ++k) CHECK(s.at(rs({0, k})) == 0);
}

TEST_CASE("simple quotient dimensions equal Shapovalov ranks") {
  std::vector<std::pair<CartanMatrix, Weight>> cases;
  auto a2 = negative_type_a(2);
  cases.emplace_back(a2, weyl_vector(a2));
  auto m = mat({{2, -1}, {-1, -2}});
  cases.emplace_back(m, wt({1, 0}));
  auto h = mat({{0, -1}, {-1, 2}});
  cases.emplace_back(h, wt({0, 2}));
  for (auto& [a, l] : cases) {
    auto g = engine(a, 6);
    VermaModel vm(g, l);
    auto s = simple_multiplicities(vm);
    for (auto& beta : g->grades()) {
      Mat sh = shapovalov_matrix(vm, beta);
      CHECK(rank_of(sh, vm.dim(beta)) == s.at(beta));
    }
  }
}

TEST_CASE("Shapovalov singularity pattern") {
  auto sl2 = engine(mat({{2}}), 3);
  VermaModel v1(sl2, wt({1}));
  CHECK(shapovalov_det_check(v1, rs({2})).det_zero);

  auto a2 = negative_type_a(2);
  auto g = engine(a2, 6);
  VermaModel vr(g, weyl_vector(a2));
  auto c10 = shapovalov_det_check(vr, rs({1, 0}));
  CHECK_FALSE(c10.det_zero);
  CHECK(c10.agree());

  auto a22 = rank2(2, 2, 2, 2);
  auto g22 = engine(a22, 4);
  VermaModel v22(g22, weyl_vector(a22));
  CHECK(shapovalov_det_check(v22, rs({1, 1})).det_zero);

  for (auto& beta : g->grades()) CHECK(shapovalov_det_check(vr, beta).agree());
  auto m = mat({{2, -1}, {-1, -2}});
  auto gm = engine(m, 5);
  VermaModel vm(gm, wt({0, -1}));
  for (auto& beta : gm->grades()) CHECK(shapovalov_det_check(vm, beta).agree());
}

TEST_CASE("memory budget is enforced") {
  try {
    GradedNilpotent::build(negative_type_a(4), {30, 1, 1});
    FAIL("expected CutoffTooLargeForBudget");
  } catch (const BkmError& e) {
    CHECK(e.kind() == ErrorKind::CutoffTooLargeForBudget);
  }
}

TEST_CASE("results do not depend on the thread count") {
  auto a = negative_type_a(3);
  auto g1 = GradedNilpotent::build(a, {6, 1024, 1});
  auto g3 = GradedNilpotent::build(a, {6, 1024, 3});
  for (auto& b : g1->grades()) {
    CHECK(g1->dim_u(b) == g3->dim_u(b));
    CHECK(g1->multiplicity(b) == g3->multiplicity(b));
    CHECK(g1->lie_basis(b) == g3->lie_basis(b));
  }
}
