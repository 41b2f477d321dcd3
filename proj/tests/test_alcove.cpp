#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmt/alcove.hpp"
#include "tmt/error.hpp"

#include <random>

using namespace tmt;
using namespace tmt::alcove;

namespace {

// Random alcove point: sort r random rationals with small denominators, recentre
// to sum zero, shrink until the spread fits.
Label random_label(int r, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-12, 12);
  while (true) {
    std::vector<Rational> e(r);
    Rational sum = 0;
    for (auto& x : e) {
      x = Rational(num(rng), 48);
      sum += x;
    }
    for (auto& x : e) x -= sum / r;
    std::sort(e.begin(), e.end(), std::greater<>());
    if (e.front() - e.back() > 1) continue;
    return Label(r, e);
  }
}

}  // namespace

TEST_CASE("vertices") {
  CHECK(vertex(2, 1).entries() == std::vector<Rational>{Rational(1, 2), Rational(-1, 2)});
  CHECK(vertex(3, 2).entries() ==
        std::vector<Rational>{Rational(1, 3), Rational(1, 3), Rational(-2, 3)});
  CHECK(vertex(5, 0).is_zero());
  CHECK_THROWS_AS(vertex(3, 3), error);
  CHECK_THROWS_AS(vertex(1, 0), error);
}

TEST_CASE("barycenter") {
  CHECK(barycenter(2).entries() == std::vector<Rational>{Rational(1, 4), Rational(-1, 4)});
  CHECK(barycenter(3).entries() ==
        std::vector<Rational>{Rational(1, 3), Rational(0), Rational(-1, 3)});
  for (int r = 2; r <= 7; ++r) {
    Rational sum = 0;
    auto b = barycenter(r);
    for (const auto& e : b.entries()) sum += e;
    CHECK(sum == 0);
    // Consecutive gaps of rho are 1, so of rho/r they are 1/r.
    for (int i = 0; i + 1 < r; ++i) CHECK(b.entry(i) - b.entry(i + 1) == Rational(1, r));
  }
  CHECK_THROWS_AS(barycenter(1), error);
}

TEST_CASE("involution") {
  CHECK(involution(barycenter(2)) == barycenter(2));
  CHECK(involution(half_vertex(3, 1)) == half_vertex(3, 2));
  CHECK(involution(vertex(4, 0)) == vertex(4, 0));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    int r = 2 + static_cast<int>(rng() % 4);
    Label l = random_label(r, rng);
    CHECK(involution(involution(l)) == l);
  }
}

TEST_CASE("label invariants hold for generated labels") {
  for (int r = 2; r <= 5; ++r) {
    std::vector<Label> all;
    for (int k = 0; k < r; ++k) all.push_back(vertex(r, k));
    all.push_back(barycenter(r));
    for (const auto& l : monotone_labels(r)) all.push_back(l);
    for (const auto& l : all) {
      Rational sum = 0;
      for (const auto& e : l.entries()) sum += e;
      CHECK(sum == 0);
      CHECK(l.entries().front() - l.entries().back() <= 1);
      for (size_t i = 0; i + 1 < l.entries().size(); ++i)
        CHECK(l.entry(i) >= l.entry(i + 1));
    }
  }
}

TEST_CASE("monotone labels") {
  auto m2 = monotone_labels(2);
  REQUIRE(m2.size() == 3);
  CHECK(std::find(m2.begin(), m2.end(), vertex(2, 0)) != m2.end());
  CHECK(std::find(m2.begin(), m2.end(), vertex(2, 1)) != m2.end());
  CHECK(std::find(m2.begin(), m2.end(), barycenter(2)) != m2.end());

  for (int r = 2; r <= 5; ++r) {
    auto m = monotone_labels(r);
    CHECK(is_monotone(barycenter(r)));
    for (int k = 0; k < r; ++k)
      CHECK(std::find(m.begin(), m.end(), vertex(r, k)) != m.end());
  }

  CHECK(is_monotone(Label(2, {Rational(1, 4), Rational(-1, 4)})));
  CHECK_FALSE(is_monotone(Label(2, {Rational(1, 8), Rational(-1, 8)})));
  CHECK(is_monotone(barycenter(5)));
}

TEST_CASE("admissibility") {
  auto mk = [](int r, int k, int n) {
    return std::vector<Label>(n, half_vertex(r, k));
  };
  auto r5 = is_admissible(mk(2, 1, 5), 2);
  CHECK(r5.ok);
  CHECK(r5.d == 1);
  CHECK_FALSE(is_admissible(mk(2, 1, 4), 2).ok);
  for (int n = 1; n <= 9; ++n)
    CHECK(is_admissible(mk(3, 1, n), 3).ok == (n % 3 != 0));
  CHECK_THROWS_AS(is_admissible({half_vertex(2, 1), half_vertex(3, 1)}, 2), error);
}

TEST_CASE("wall check agrees with admissibility on half-vertex labels") {
  // SU(2) sign-pattern sanity first.
  CHECK(wall_check_bruteforce(std::vector<Label>(5, half_vertex(2, 1)), 2));
  CHECK_FALSE(wall_check_bruteforce(std::vector<Label>(4, half_vertex(2, 1)), 2));

  for (int r = 2; r <= 3; ++r) {
    std::vector<std::vector<Label>> pools = {{}};
    for (int n = 1; n <= 5; ++n) {
      std::vector<std::vector<Label>> next;
      for (const auto& base : pools)
        for (int k = 0; k < r; ++k) {
          auto cur = base;
          cur.push_back(half_vertex(r, k));
          next.push_back(cur);
        }
      pools = next;
      for (const auto& labels : pools)
        CHECK(is_admissible(labels, r).ok == wall_check_bruteforce(labels, r));
    }
  }
  CHECK_THROWS_AS(wall_check_bruteforce(std::vector<Label>(9, half_vertex(2, 1)), 2), error);
}

TEST_CASE("conjugacy class info") {
  auto c2 = conj_class_info(Label(2, {Rational(1, 4), Rational(-1, 4)}));
  CHECK(c2.multiplicities == std::vector<int>{1, 1});
  CHECK(c2.real_dimension == 2);
  CHECK(c2.poincare.coeffs() == std::vector<Integer>{1, 0, 1});

  auto c3 = conj_class_info(half_vertex(3, 1));
  CHECK(c3.multiplicities == std::vector<int>{1, 2});
  CHECK(c3.real_dimension == 4);
  CHECK(c3.poincare.coeffs() == std::vector<Integer>{1, 0, 1, 0, 1});

  auto c0 = conj_class_info(vertex(4, 0));
  CHECK(c0.multiplicities == std::vector<int>{4});
  CHECK(c0.real_dimension == 0);
  CHECK(c0.poincare.coeffs() == std::vector<Integer>{1});

  // Poincare duality of flag varieties.
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    Label l = random_label(2 + static_cast<int>(rng() % 4), rng);
    auto info = conj_class_info(l);
    CHECK(info.poincare.palindromic());
    CHECK(info.poincare.degree() == info.real_dimension);
  }
}

TEST_CASE("label parsing and printing") {
  CHECK(parse_label("w1/2", 2) == half_vertex(2, 1));
  CHECK(parse_label("1/4", 2) == half_vertex(2, 1));
  CHECK(parse_label("(1/3,0,-1/3)", 3) == barycenter(3));
  CHECK(parse_label("0", 4) == vertex(4, 0));
  CHECK(parse_label("9/20", 2) == Label(2, {Rational(9, 20), Rational(-9, 20)}));
  CHECK(half_vertex(3, 2).str() == "w2/2");
  CHECK(barycenter(3).str() == "(1/3,0,-1/3)");
  CHECK(vertex(3, 0).str() == "0");
  CHECK_THROWS_AS(parse_label("1/4", 3), error);
  CHECK_THROWS_AS(parse_label("w7/2", 3), error);
  CHECK_THROWS_AS(parse_label("(1/2,1/2)", 2), error);
}
