#include <set>

#include "bkm/cartan.hpp"
#include "bkm/errors.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bkm;
using namespace bkm::testing;

namespace {

CartanMatrix random_symmetric_bkm(std::size_t n) {
  static const long diag[] = {2, 0, -1, -2, -3};
  std::vector<std::vector<long>> m(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = diag[uniform(0, 4)];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = -uniform(0, 2);
  return mat(m);
}

}  // namespace

TEST_CASE("rationals parse and print canonically") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational(" -2 ")) == "-2");
  CHECK(to_string(parse_rational("0/5")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), BkmError);
  CHECK_THROWS_AS(parse_rational("abc"), BkmError);
}

TEST_CASE("validate classifies nodes and finds symmetrizers") {
  auto a = mat({{2, -1}, {-1, -2}});
  CHECK(a.type(0) == NodeType::Real);
  CHECK(a.type(1) == NodeType::Negative);
  CHECK(a.symmetrizer() == Vec{1, 1});

  auto h = mat({{0}});
  CHECK(h.type(0) == NodeType::Heisenberg);

  auto b = mat({{2, -1}, {-2, 2}});
  REQUIRE(b.symmetrizable());
  CHECK(b.symmetrizer() == Vec{2, 1});
  CHECK(b.is_real(0));
  CHECK(b.is_real(1));
  CHECK(b.form(0, 1) == b.form(1, 0));

  auto half = CartanMatrix::validate({{ratio(-1, 2), -1}, {-1, -2}});
  CHECK(half.type(0) == NodeType::Negative);
}

TEST_CASE("validate rejects non-BKM input and names the rule") {
  auto rejects = [](std::vector<std::vector<long>> m) {
    try {
      mat(m);
    } catch (const BkmError& e) {
      return e.kind() == ErrorKind::RejectNotBkm && !e.detail().empty();
    }
    return false;
  };
  CHECK(rejects({{1}}));
  CHECK(rejects({{2, 1}, {-1, 2}}));
  CHECK(rejects({{-2, -1}, {0, -2}}));
  CHECK(rejects({{2, -1}, {-1}}));
  CHECK_THROWS_AS(CartanMatrix::validate({{2, ratio(-1, 2)}, {-1, 2}}), BkmError);

  auto ns = mat({{2, -1, -1}, {-1, 2, -1}, {-2, -1, 2}});
  CHECK_FALSE(ns.symmetrizable());
  try {
    ns.symmetrizer();
    FAIL("expected NotSymmetrizable");
  } catch (const BkmError& e) {
    CHECK(e.kind() == ErrorKind::NotSymmetrizable);
  }
}

TEST_CASE("root sums") {
  RootSum b = rs({2, 0, 1});
  CHECK(b.height() == 3);
  CHECK(b.support() == NodeSet{0, 2});
  CHECK(rs({1, 0, 1}).leq(b));
  CHECK_FALSE(rs({0, 1, 0}).leq(b));
  auto all = root_sums_up_to(2, 3);
  CHECK(all.size() == 10);
  for (std::size_t k = 1; k < all.size(); ++k) CHECK(height_lex_less(all[k - 1], all[k]));
  for (auto& r : all) CHECK(r.is_nonnegative());
}

TEST_CASE("subtract_roots examples") {
  auto a = mat({{2, -1}, {-1, -2}});
  CHECK(subtract_roots(a, wt({0, -1}), rs({0, 1})) == wt({1, 1}));
  CHECK(subtract_roots(a, wt({0, -1}), rs({0, 0})) == wt({0, -1}));
  auto a2 = negative_type_a(2);
  CHECK(subtract_roots(a2, weyl_vector(a2), rs({1, 1})) == wt({2, 2}));
}

TEST_CASE("subtract_roots is additive") {
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_symmetric_bkm(static_cast<std::size_t>(uniform(1, 4)));
    std::size_t n = a.size();
    Weight l{Vec(n)};
    RootSum b1(n), b2(n);
    for (std::size_t i = 0; i < n; ++i) {
      l[i] = ratio(uniform(-6, 6), uniform(1, 3));
      b1[i] = static_cast<int>(uniform(0, 3));
      b2[i] = static_cast<int>(uniform(0, 3));
    }
    CHECK(subtract_roots(a, l, b1 + b2) == subtract_roots(a, subtract_roots(a, l, b1), b2));
    CHECK(add_roots(a, subtract_roots(a, l, b1), b1) == l);
  }
}

TEST_CASE("bilinear_residual examples and zero at beta = 0") {
  auto a2 = negative_type_a(2);
  Weight rho = weyl_vector(a2);
  CHECK(bilinear_residual(a2, rho, rs({2, 0})) == 0);
  CHECK(bilinear_residual(a2, rho, rs({1, 0})) != 0);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_symmetric_bkm(static_cast<std::size_t>(uniform(1, 4)));
    Weight l{Vec(a.size())};
    for (auto& x : l.p) x = ratio(uniform(-9, 9), uniform(1, 4));
    CHECK(bilinear_residual(a, l, RootSum(a.size())) == 0);
  }
}

TEST_CASE("rank-2 residual is a fixed multiple of the norm equations") {
  for (int trial = 0; trial < 100; ++trial) {
    long b = uniform(1, 5), a = uniform(1, 5);
    int variant = static_cast<int>(uniform(0, 2));
    long d = variant == 0 ? uniform(1, 5) : 0;
    long a22 = variant == 0 ? -d : (variant == 1 ? 0 : 2);
    auto m = mat({{-b, -a}, {-a, a22}});
    long m1 = uniform(1, 6), m2 = variant == 1 ? 1 : uniform(1, 6);
    Weight l = weight_from_powers(m, {m1, m2});
    REQUIRE(cone_membership(m, l).in_p_pm);
    long x = uniform(0, 8), y = uniform(0, 8);
    Rational res = bilinear_residual(m, l, rs({static_cast<int>(x), static_cast<int>(y)}));
    Rational lhs;
    if (variant == 0)
      lhs = b * x * x + d * y * y - b * m1 * x - d * m2 * y + 2 * a * x * y;
    else if (variant == 1)
      lhs = Rational(b) * x * (x - m1 + ratio(2 * a, b) * y);
    else
      lhs = b * x * x - 2 * y * y - b * m1 * x + 2 * m2 * y + 2 * a * x * y;
    CHECK(res == lhs);
  }
}

TEST_CASE("cone membership") {
  auto a2 = negative_type_a(2);
  auto c = cone_membership(a2, weyl_vector(a2));
  CHECK(c.in_p_pm);
  CHECK_FALSE(c.in_p_plus);
  CHECK(c.powers == std::vector<Integer>{2, 2});

  auto z = cone_membership(a2, wt({0, 0}));
  CHECK(z.in_p_pm);
  CHECK(z.in_p_plus);
  CHECK(z.powers == std::vector<Integer>{1, 1});

  auto ex = mat({{2, -1}, {-1, -2}});
  auto e = cone_membership(ex, wt({0, -1}));
  CHECK(e.in_p_pm);
  CHECK_FALSE(e.in_p_plus);
  CHECK(e.j_lambda == NodeSet{0, 1});
  CHECK(e.powers == std::vector<Integer>{1, 2});

  auto h = mat({{0}});
  CHECK(cone_membership(h, wt({0})).powers[0] == 1);
  CHECK(cone_membership(h, wt({1})).j_lambda.empty());
}

TEST_CASE("rho lies in P+- for every matrix") {
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_symmetric_bkm(static_cast<std::size_t>(uniform(1, 5)));
    CHECK(cone_membership(a, weyl_vector(a)).in_p_pm);
  }
  CHECK(weyl_vector(negative_type_a(2)) == wt({-1, -1}));
  CHECK(weyl_vector(mat({{2}})) == wt({1}));
  CHECK(weyl_vector(negative_type_a(3)) == wt({-1, -1, -1}));
}

TEST_CASE("components and independence") {
  auto a4 = negative_type_a(4);
  auto c = a4.components({0, 2});
  CHECK(c.size() == 2);
  CHECK(a4.is_independent({0, 2}));
  auto c2 = a4.components({0, 1, 3});
  REQUIRE(c2.size() == 2);
  CHECK(c2[0] == NodeSet{0, 1});
  CHECK(c2[1] == NodeSet{3});
  CHECK_FALSE(a4.is_independent({0, 1, 3}));
  CHECK(a4.components({}).empty());
  CHECK(a4.is_independent({}));
}

TEST_CASE("components partition the input set") {
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_symmetric_bkm(static_cast<std::size_t>(uniform(1, 6)));
    NodeSet s;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (uniform(0, 1)) s.push_back(i);
    std::multiset<std::size_t> merged;
    for (auto& comp : a.components(s)) {
      CHECK_FALSE(comp.empty());
      merged.insert(comp.begin(), comp.end());
      for (auto i : comp)
        for (auto& other : a.components(s))
          if (other != comp)
            for (auto j : other) CHECK_FALSE(a.adjacent(i, j));
    }
    CHECK(std::vector<std::size_t>(merged.begin(), merged.end()) == s);
  }
}

TEST_CASE("reflection on pairings") {
  auto sl2 = mat({{2}});
  CHECK(reflect(sl2, wt({3}), 0) == wt({-3}));
  auto a = mat({{2, -1}, {-1, -2}});
  Weight l = wt({2, 1});
  CHECK(reflect(a, reflect(a, l, 0), 0) == l);
}

TEST_CASE("hash is stable") {
  CHECK(negative_type_a(3).hash_hex() == negative_type_a(3).hash_hex());
  CHECK(negative_type_a(3).hash_hex() != negative_type_a(2).hash_hex());
}
