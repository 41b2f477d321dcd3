#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmt/betti.hpp"
#include "tmt/error.hpp"

using namespace tmt;
using namespace tmt::betti;

namespace {

// Independent truncated-series oracle: expand p(t) * prod (1-t^{k_i})^{-1} by
// naive convolution with explicit geometric series coefficients.
std::vector<Integer> series_oracle(const std::vector<Integer>& poly,
                                   const std::vector<int>& geo_denoms, int truncation) {
  std::vector<Integer> acc(poly);
  acc.resize(truncation + 1, Integer(0));
  for (int k : geo_denoms) {
    std::vector<Integer> next(truncation + 1, Integer(0));
    for (int d = 0; d <= truncation; ++d) {
      if (acc[d] == 0) continue;
      for (int m = d; m <= truncation; m += k) next[m] += acc[d];
    }
    acc = next;
  }
  return acc;
}

std::vector<Integer> binomial_poly_1pt2(int n) {
  // (1+t^2)^n coefficients.
  std::vector<Integer> c(2 * n + 1, Integer(0));
  Integer b = 1;
  for (int k = 0; k <= n; ++k) {
    c[2 * k] = b;
    b = b * (n - k) / (k + 1);
  }
  return c;
}

Integer binom(int n, int k) {
  Integer r = 1;
  for (int i = 0; i < k; ++i) { r *= n - i; r /= i + 1; }
  return r;
}

// Full Kirwan expression computed only through series_oracle.
std::vector<Integer> kirwan_oracle(int n, int truncation) {
  auto acc = series_oracle(binomial_poly_1pt2(n), {4}, truncation);
  for (int r = n / 2 + 1; r <= n; ++r) {
    std::vector<Integer> mono(truncation + 1, Integer(0));
    if (2 * (r - 1) <= truncation) mono[2 * (r - 1)] = binom(n, r);
    auto term = series_oracle(mono, {2}, truncation);
    for (int d = 0; d <= truncation; ++d) acc[d] -= term[d];
  }
  return acc;
}

}  // namespace

TEST_CASE("polyseries arithmetic") {
  PolySeries a({Integer(1), Integer(2)}, 10);
  PolySeries b({Integer(0), Integer(1), Integer(3)}, 10);
  CHECK((a * b).coeffs() == std::vector<Integer>{0, 1, 5, 6});
  CHECK((a + b).coeffs() == std::vector<Integer>{1, 3, 3});
  CHECK(a.pow(2).coeffs() == std::vector<Integer>{1, 4, 4});

  // Truncation closes multiplication.
  PolySeries c({Integer(1), Integer(1)}, 2);
  CHECK(c.pow(5).degree() <= 2);

  // geometric_div inverts multiplication by 1 - t^k under truncation.
  PolySeries p({Integer(1), Integer(0), Integer(-1)}, 8);  // 1 - t^2
  CHECK(PolySeries::one(8).geometric_div(2) * p == PolySeries::one(8));
}

TEST_CASE("exact division") {
  PolySeries num({Integer(1), Integer(0), Integer(2), Integer(0), Integer(1)}, 10);
  PolySeries den({Integer(1), Integer(0), Integer(1)}, 10);
  CHECK(num.exact_div(den) == den);
  CHECK_THROWS_AS(PolySeries({Integer(1), Integer(1)}, 4).exact_div(den), error);
}

TEST_CASE("kirwan n=5 closed form") {
  auto p = kirwan_poincare(5, default_truncation(5));
  CHECK(p.coeffs() == std::vector<Integer>{1, 0, 5, 0, 1});
  CHECK(p.pretty() == "1 + 5t^2 + t^4");
}

TEST_CASE("kirwan n=3 and tails via series oracle") {
  CHECK(kirwan_poincare(3, 4).coeffs() == std::vector<Integer>{1});
  for (int n : {3, 5, 7}) {
    int tr = 4 * (n - 3) + 8;
    auto p = kirwan_poincare(n, tr);
    auto padded = p.coeffs();
    padded.resize(tr + 1, Integer(0));
    CHECK(padded == kirwan_oracle(n, tr));
    CHECK(p.degree() == (n == 3 ? 0 : 2 * (n - 3)));
    CHECK(p.palindromic());
  }
  CHECK_THROWS_AS(kirwan_poincare(4, 20), error);
}

TEST_CASE("atiyah-bott n=5 closed form, palindromic") {
  auto p = ab_poincare(5, default_truncation(5));
  CHECK(p.coeffs() == std::vector<Integer>{1, 0, 6, 0, 1});
  CHECK(p.palindromic());
  CHECK(ab_poincare(3, 4).coeffs() == std::vector<Integer>{1});
  for (int n : {3, 5, 7}) {
    auto q = ab_poincare(n, 4 * (n - 3) + 8);
    CHECK(q.degree() == (n == 3 ? 0 : 2 * (n - 3)));
    CHECK(q.palindromic());
  }
  CHECK_THROWS_AS(ab_poincare(6, 20), error);
}

TEST_CASE("flag variety polynomials") {
  CHECK(flag_poincare({1, 1}).coeffs() == std::vector<Integer>{1, 0, 1});
  CHECK(flag_poincare({1, 2}).coeffs() == std::vector<Integer>{1, 0, 1, 0, 1});
  CHECK(flag_poincare({1, 1, 1}).coeffs() == std::vector<Integer>{1, 0, 2, 0, 2, 0, 1});
  CHECK_THROWS_AS(flag_poincare({1, 0}), error);

  // Value at t=1 is the multinomial coefficient.
  CHECK(flag_poincare({2, 3}).eval_one() == 10);
  CHECK(flag_poincare({1, 2, 2}).eval_one() == 30);
}

TEST_CASE("chamber classification") {
  CHECK(chamber_report(Rational(1, 10)) == Chamber::D4);
  CHECK(chamber_report(Rational(1, 4)) == Chamber::D5);
  CHECK(chamber_report(Rational(9, 20)) == Chamber::Empty);
  CHECK(chamber_report(Rational(1, 5)) == Chamber::Wall);
  CHECK(chamber_report(Rational(2, 5)) == Chamber::Wall);
  CHECK(chamber_report(Rational(0)) == Chamber::Wall);
  CHECK(chamber_report(Rational(1, 2)) == Chamber::Empty);
  CHECK_THROWS_AS(chamber_report(Rational(3, 5)), error);
}

TEST_CASE("unknot invariant") {
  CHECK(unknot_hf(2).coeffs() == std::vector<Integer>{1, 0, 1});
  CHECK(unknot_hf(3).coeffs() == std::vector<Integer>{1, 0, 1, 0, 1});
  CHECK(unknot_hf(4).coeffs() == std::vector<Integer>{1, 0, 1, 0, 1, 0, 1});
  CHECK_THROWS_AS(unknot_hf(1), error);
}
