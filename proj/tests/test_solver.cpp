#include <algorithm>
#include <set>

#include "bkm/errors.hpp"
#include "bkm/lie_engine.hpp"
#include "bkm/solver.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bkm;
using namespace bkm::testing;

namespace {

CartanMatrix rank2(long b, long a, long c, long d) { return mat({{-b, -a}, {-c, -d}}); }

std::vector<Point2> residual_zeros(const CartanMatrix& a, const Weight& l, long side) {
  std::vector<Point2> out;
  for (long x = 0; x <= side; ++x)
    for (long y = 0; y <= side; ++y)
      if (bilinear_residual(a, l, rs({static_cast<int>(x), static_cast<int>(y)})) == 0) out.emplace_back(x, y);
  return out;
}

long dn_direct(const std::vector<int>& x) {
  auto a = negative_type_a(x.size());
  RootSum b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) b[i] = x[i];
  return to_int64(bilinear_residual(a, weyl_vector(a), b));
}

}  // namespace

TEST_CASE("rank-2 solution examples") {
  auto a = rank2(2, 2, 2, 2);
  auto inst = QuadraticInstance::from_matrix(a, weyl_vector(a));
  CHECK(inst.variant == QuadVariant::N);
  CHECK(inst.m1 == 2);
  CHECK(inst.m2 == 2);
  CHECK(enumerate_solutions_rank2(inst).points == std::vector<Point2>{{0, 0}, {0, 2}, {1, 1}, {2, 0}});

  auto u = QuadraticInstance::symmetric(1, 1, 4);
  CHECK(interior_solutions(u) == std::vector<Point2>{{1, 3}});
  auto nu = QuadraticInstance::symmetric(1, 1, 5);
  CHECK(interior_solutions(nu) == std::vector<Point2>{{1, 4}, {2, 1}, {2, 2}});
  auto a15 = rank2(2, 1, 1, 2);
  std::vector<Point2> brute;
  for (auto pt : residual_zeros(a15, weight_from_powers(a15, {1, 5}), 20))
    if (pt.first > 0 && pt.second > 0) brute.push_back(pt);
  CHECK(interior_solutions(nu) == brute);
}

TEST_CASE("the negative A_2 with lambda = rho has no interior solution") {
  auto a2 = negative_type_a(2);
  auto inst = QuadraticInstance::from_matrix(a2, weyl_vector(a2));
  CHECK(interior_solutions(inst).empty());
  CHECK(bilinear_residual(a2, weyl_vector(a2), rs({1, 1})) == -2);
}

TEST_CASE("from_matrix preconditions") {
  CHECK_THROWS_AS(QuadraticInstance::from_matrix(mat({{2, -1}, {-1, -2}}), wt({0, -1})), BkmError);
  CHECK_THROWS_AS(QuadraticInstance::from_matrix(negative_type_a(3), wt({-1, -1, -1})), BkmError);
  CHECK_THROWS_AS(QuadraticInstance::from_matrix(negative_type_a(2), wt({1, 1})), BkmError);
}

TEST_CASE("(N) enumeration is exhaustive and stays in the square") {
  for (int trial = 0; trial < 60; ++trial) {
    long b = uniform(1, 4), aa = uniform(1, 4), d = uniform(1, 4);
    auto a = rank2(b, aa, aa, d);
    long m1 = uniform(1, 6), m2 = uniform(1, 6);
    Weight l = weight_from_powers(a, {m1, m2});
    auto inst = QuadraticInstance::from_matrix(a, l);
    auto sol = enumerate_solutions_rank2(inst);
    long side = rank2_bound(inst);
    CAPTURE(a.canonical_text());
    CAPTURE(m1);
    CAPTURE(m2);
    for (auto [x, y] : sol.points) {
      CHECK(x <= side);
      CHECK(y <= side);
      CHECK(inst.eval(x, y) == 0);
    }
    CHECK(sol.points == residual_zeros(a, l, 3 * side + 3));
  }
}

TEST_CASE("(N) with a non-symmetric matrix") {
  auto a = rank2(2, 1, 2, 4);
  REQUIRE(a.symmetrizable());
  Weight l = weight_from_powers(a, {3, 2});
  auto inst = QuadraticInstance::from_matrix(a, l);
  auto sol = enumerate_solutions_rank2(inst);
  CHECK(sol.points == residual_zeros(a, l, 3 * rank2_bound(inst) + 3));
}

TEST_CASE("(H) closed form") {
  auto a = rank2(2, 1, 1, 0);
  Weight l = weight_from_powers(a, {4, 1});
  auto inst = QuadraticInstance::from_matrix(a, l);
  REQUIRE(inst.variant == QuadVariant::H);
  auto sol = enumerate_solutions_rank2(inst, Box{10, 10});
  CHECK_FALSE(sol.closed_form.empty());
  std::set<Point2> expect;
  for (long y = 0; y <= 10; ++y) {
    expect.insert({0, y});
    if (4 - y >= 0) expect.insert({4 - y, y});
  }
  CHECK(sol.points == std::vector<Point2>(expect.begin(), expect.end()));
  CHECK(sol.points == residual_zeros(a, l, 10));
}

TEST_CASE("(R) needs a box") {
  auto a = mat({{-2, -2}, {-2, 2}});
  auto inst = QuadraticInstance::from_matrix(a, weyl_vector(a));
  REQUIRE(inst.variant == QuadVariant::R);
  try {
    enumerate_solutions_rank2(inst);
    FAIL("expected UnboundedWithoutBox");
  } catch (const BkmError& e) {
    CHECK(e.kind() == ErrorKind::UnboundedWithoutBox);
  }
  auto sol = enumerate_solutions_rank2(inst, Box{60, 60});
  CHECK(sol.points == residual_zeros(a, weyl_vector(a), 60));
  CHECK(sol.points.size() >= 3);
}

TEST_CASE("classification of (2,2) instances, pinned") {
  auto b = classify_22(QuadraticInstance::symmetric(2, 4, 4));
  CHECK(b.tag == 'B');
  CHECK(b.extras == std::vector<Point2>{{1, 3}, {3, 1}});

  CHECK(classify_22(QuadraticInstance::symmetric(2, 5, 3)).tag == 'A');
  CHECK(classify_22(QuadraticInstance::symmetric(2, 3, 5)).tag == 'A');

  auto d = classify_22(QuadraticInstance::symmetric(1, 5, 1));
  CHECK(d.tag == 'D');
  CHECK(d.extras == std::vector<Point2>{{4, 1}});
  CHECK(classify_22(QuadraticInstance::symmetric(ratio(3, 2), 6, 1)).tag == 'C');

  try {
    classify_22(QuadraticInstance::symmetric(1, 3, 4));
    FAIL("expected PremiseFails");
  } catch (const BkmError& e) {
    CHECK(e.kind() == ErrorKind::PremiseFails);
  }
}

TEST_CASE("classification converse clauses") {
  for (long k = 1; k <= 5; ++k) {
    long m = k * k;
    Rational c = m - 2;
    if (c <= 0) continue;
    CHECK(classify_22(QuadraticInstance::symmetric(c, m, m)).tag == 'B');
  }
  for (long k = 1; k <= 5; ++k) {
    long m2 = 3 * k, m1 = 3 * k + 2;
    Rational c = ratio(2 * (m1 + m2) - 8, 4);
    CHECK(classify_22(QuadraticInstance::symmetric(c, m1, m2)).tag == 'A');
  }
  for (long m1 = 2; m1 <= 12; ++m1) {
    Rational c = ratio(2 * (m1 + 1) - 8, 4);
    if (c <= 0) continue;
    auto r = classify_22(QuadraticInstance::symmetric(c, m1, 1));
    CHECK(r.tag == (m1 % 2 == 0 ? 'C' : 'D'));
  }
}

TEST_CASE("(k,k) solutions are unique and dominate") {
  int seen = 0;
  for (long m1 = 1; m1 <= 14; ++m1)
    for (long m2 = 1; m2 <= 14; ++m2)
      for (long k = 1; k <= 6; ++k) {
        // (k,k) solves 2k^2 - (M1+M2)k + c k^2 = 0
        Rational c = ratio(m1 + m2 - 2 * k, k);
        if (c <= 0) continue;
        auto inst = QuadraticInstance::symmetric(c, m1, m2);
        auto pts = enumerate_solutions_rank2(inst).points;
        REQUIRE(std::find(pts.begin(), pts.end(), Point2{k, k}) != pts.end());
        ++seen;
        for (auto [x, y] : pts) {
          if (x >= k && y >= k) CHECK(Point2{x, y} == Point2{k, k});
          if (x == y && x > 0) CHECK(x == k);
        }
        if (k == 2) {
          auto r = classify_22(inst);
          CHECK(r.solutions == pts);
          for (auto e : r.extras) CHECK(inst.solves(e.first, e.second));
        }
      }
  CHECK(seen > 50);
}

TEST_CASE("d^(n) examples") {
  std::vector<std::vector<int>> n3;
  for (auto& s : enumerate_dn(3, false)) {
    n3.push_back(s.x);
    CHECK(s.hole_solution);
  }
  CHECK(n3 == std::vector<std::vector<int>>{{0, 0, 2}, {0, 2, 0}, {2, 0, 0}, {2, 0, 2}});

  std::vector<std::vector<int>> n1;
  for (auto& s : enumerate_dn(1, true)) n1.push_back(s.x);
  CHECK(n1 == std::vector<std::vector<int>>{{0}, {2}});

  auto n5 = enumerate_dn(5, true);
  CHECK(n5.size() == 33);
  CHECK(enumerate_dn(5, false).size() == 32);
  auto has = [&](std::vector<int> x) {
    return std::any_of(n5.begin(), n5.end(), [&](const DnSolution& s) { return s.x == x; });
  };
  CHECK(has({0, 1, 0, 1, 2}));
  CHECK(has({2, 1, 1, 0, 1}));
  CHECK(dn_value({}) == 0);
  for (std::size_t j = 1; j <= 8; ++j) CHECK(dn_value(std::vector<int>(j, 1)) == -2);
}

TEST_CASE("d^(n) is the residual at rho over the negative A_n") {
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> x(static_cast<std::size_t>(uniform(1, 6)));
    for (auto& v : x) v = static_cast<int>(uniform(0, 4));
    CHECK(dn_value(x) == dn_direct(x));
  }
}

TEST_CASE("d^(n) splits at zeros") {
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = static_cast<std::size_t>(uniform(1, 7));
    std::vector<int> x(n);
    for (auto& v : x) v = static_cast<int>(uniform(0, 4));
    std::size_t i = static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 1));
    x[i] = 0;
    std::vector<int> left(x.begin(), x.begin() + static_cast<long>(i));
    std::vector<int> right(x.begin() + static_cast<long>(i) + 1, x.end());
    CHECK(dn_value(x) == dn_value(left) + dn_value(right));
  }
}

TEST_CASE("d^(n) enumeration against brute force") {
  for (std::size_t n = 1; n <= 6; ++n) {
    int side = dn_box(n);
    std::vector<std::vector<int>> brute;
    std::vector<int> x(n, 0);
    for (;;) {
      if (dn_direct(x) == 0) brute.push_back(x);
      std::size_t k = n;
      while (k > 0 && x[k - 1] == side) x[--k] = 0;
      if (k == 0) break;
      ++x[k - 1];
    }
    std::vector<std::vector<int>> got;
    for (auto& s : enumerate_dn(n, true)) {
      got.push_back(s.x);
      CHECK(s.blocks == block_decompose(s.x));
      CHECK(s.hole_solution == is_hole_solution(s.x));
    }
    CHECK(got == brute);
  }
  CHECK(enumerate_dn(6, true).size() == 93);
}

TEST_CASE("blocks") {
  CHECK(block_decompose({2, 1, 0, 1}) == std::vector<std::vector<int>>{{2, 1}, {1}});
  CHECK(block_decompose({2, 0, 2}) == std::vector<std::vector<int>>{{2}, {2}});
  CHECK(block_decompose({0, 1, 0, 1, 2}) == std::vector<std::vector<int>>{{1}, {1, 2}});
  CHECK(block_decompose({2, 1, 1, 0, 1}) == std::vector<std::vector<int>>{{2, 1, 1}, {1}});
  CHECK(block_decompose({0, 0}).empty());
  CHECK(is_hole_solution({2, 0, 2}));
  CHECK_FALSE(is_hole_solution({2, 2}));
  CHECK(block_lemma_check({2, 0, 2}));
  CHECK(block_lemma_check({2, 1, 0, 1}));
  CHECK_THROWS_AS(block_lemma_check({1, 1}), BkmError);
  for (std::size_t n = 1; n <= 8; ++n)
    for (auto& s : enumerate_dn(n, false)) CHECK(block_lemma_check(s.x));
}

TEST_CASE("Kac-Kazhdan chains, pinned") {
  auto a4 = negative_type_a(4);
  auto g4 = GradedNilpotent::build(a4, {5, 1024, 1});
  auto r = kk_linked(*g4, weyl_vector(a4), rs({2, 1, 0, 1}));
  CHECK(bilinear_residual(a4, weyl_vector(a4), rs({2, 1, 0, 1})) == 0);
  CHECK_FALSE(r.linked);
  CHECK_FALSE(r.exhausted);

  auto a = rank2(2, 2, 2, 2);
  auto g = GradedNilpotent::build(a, {4, 1024, 1});
  auto l = weyl_vector(a);
  auto k = kk_linked(*g, l, rs({1, 1}));
  REQUIRE(k.linked);
  REQUIRE(k.witness.size() == 1);
  CHECK(k.witness[0].beta == rs({1, 1}));
  CHECK(k.witness[0].n == 1);

  auto ex = rank2(2, 1, 1, 3);
  Weight w = weight_from_powers(ex, {3, 2});
  auto ge = GradedNilpotent::build(ex, {4, 1024, 1});
  auto one = kk_linked(*ge, w, rs({3, 0}));
  REQUIRE(one.linked);
  REQUIRE(one.witness.size() == 1);
  CHECK(one.witness[0].beta == rs({1, 0}));
  CHECK(one.witness[0].n == 3);
}

TEST_CASE("linked implies norm equality; witnesses satisfy every step") {
  for (int trial = 0; trial < 25; ++trial) {
    long b = uniform(1, 3), aa = uniform(0, 2), d = uniform(1, 3);
    auto a = rank2(b, aa, aa, d);
    Weight l = weight_from_powers(a, {uniform(1, 4), uniform(1, 4)});
    auto g = GradedNilpotent::build(a, {6, 1024, 1});
    Weight rho = weyl_vector(a);
    for (auto& beta : root_sums_up_to(2, 6)) {
      if (beta.height() == 0) continue;
      auto r = kk_linked(*g, l, beta);
      if (!r.linked) continue;
      CHECK(bilinear_residual(a, l, beta) == 0);
      RootSum done(2);
      for (auto& st : r.witness) {
        CHECK(g->multiplicity(st.beta) > 0);
        Rational lhs = 2 * (pair_weight_root(a, l, st.beta) + pair_weight_root(a, rho, st.beta) -
                            pair_roots(a, done, st.beta));
        CHECK(lhs == st.n * pair_roots(a, st.beta, st.beta));
        for (int t = 0; t < st.n; ++t) done = done + st.beta;
      }
      CHECK(done == beta);
    }
  }
}

TEST_CASE("uniqueness predicate") {
  CHECK(unique_solution_predicate(1, 4));
  CHECK(unique_solution_bruteforce(1, 4));
  CHECK(unique_solution_predicate(3, 3));
  CHECK(unique_solution_bruteforce(3, 3));
  CHECK_FALSE(unique_solution_predicate(1, 5));
  CHECK_FALSE(unique_solution_bruteforce(1, 5));
  for (long m2 : {4, 6, 7, 9, 13, 15, 16}) CHECK(unique_solution_predicate(1, m2));
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("uniqueness predicate equals brute force up to 60") {
  for (long m1 = 1; m1 <= 60; ++m1)
    for (long m2 = m1; m2 <= 60; ++m2) {
      CAPTURE(m1);
      CAPTURE(m2);
      CHECK(unique_solution_predicate(m1, m2) == unique_solution_bruteforce(m1, m2));
      CHECK(unique_solution_predicate(m2, m1) == unique_solution_predicate(m1, m2));
    }
}

TEST_CASE("brute force uniqueness agrees with the residual") {
  auto a = rank2(2, 1, 1, 2);
  for (long m1 = 1; m1 <= 12; ++m1)
    for (long m2 = m1; m2 <= 12; ++m2) {
      Weight l = weight_from_powers(a, {m1, m2});
      long interior = 0;
      for (auto [x, y] : residual_zeros(a, l, 2 * m2 + 2))
        if (x > 0 && y > 0) ++interior;
      CHECK(unique_solution_bruteforce(m1, m2) == (interior == 1));
    }
}

TEST_CASE("maximal vectors of the negative A_n at rho sit exactly at hole solutions") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const int cutoff = n <= 3 ? 6 : 5;
    auto a = negative_type_a(n);
    auto g = GradedNilpotent::build(a, {cutoff, 2048, 1});
    VermaModel vm(g, weyl_vector(a));
    int holes = 0;
    for (auto& s : enumerate_dn(n, false)) {
      RootSum b(n);
      for (std::size_t i = 0; i < n; ++i) b[i] = s.x[i];
      if (b.height() > cutoff) continue;
      CAPTURE(b.str());
      CHECK((maximal_vectors(vm, b).dim > 0) == s.hole_solution);
      holes += s.hole_solution;
    }
    CHECK(holes > 0);
  }
}
