#include "tmt/betti.hpp"

#include "tmt/error.hpp"

#include <numeric>

namespace tmt::betti {

int default_truncation(int n) { return 4 * (n - 3) + 4; }

namespace {

Integer binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (int i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

// [k]_q = 1 + q + ... + q^{k-1} with q = t^2.
PolySeries q_integer(int k, int truncation) {
  std::vector<Integer> c(static_cast<size_t>(2 * (k - 1)) + 1, Integer(0));
  for (int j = 0; j < k; ++j)
    if (2 * j < static_cast<int>(c.size())) c[2 * j] = 1;
  return PolySeries(std::move(c), truncation);
}

}  // namespace

PolySeries kirwan_poincare(int n, int truncation) {
  if (n < 3 || n % 2 == 0)
    fail(errc::unsupported_chamber, "Kirwan formula applies to odd n >= 3");
  if (truncation < 2 * (n - 3)) fail(errc::invalid_index, "truncation too small");
  PolySeries onept2 = PolySeries({Integer(1), Integer(0), Integer(1)}, truncation);
  PolySeries result = onept2.pow(n).geometric_div(4);
  for (int r = n / 2 + 1; r <= n; ++r) {
    PolySeries term = PolySeries::monomial(2 * (r - 1), binom(n, r), truncation).geometric_div(2);
    result -= term;
  }
  return result;
}

PolySeries ab_poincare(int n, int truncation) {
  if (n < 3 || n % 2 == 0)
    fail(errc::unsupported_chamber, "Atiyah-Bott formula applies to odd n >= 3");
  if (truncation < 2 * (n - 3)) fail(errc::invalid_index, "truncation too small");
  PolySeries onept2 = PolySeries({Integer(1), Integer(0), Integer(1)}, truncation);
  PolySeries result = onept2.pow(n).geometric_div(2).geometric_div(4);
  Integer two_pow = Integer(1) << (n - 1);
  PolySeries unstable =
      PolySeries::monomial(n - 1, two_pow, truncation).geometric_div(2).geometric_div(2);
  result -= unstable;
  return result;
}

PolySeries flag_poincare(const std::vector<int>& multiplicities) {
  if (multiplicities.empty()) fail(errc::bad_multiplicity, "empty multiplicity list");
  int r = 0;
  for (int m : multiplicities) {
    if (m <= 0) fail(errc::bad_multiplicity, "multiplicities must be positive");
    r += m;
  }
  // Work at the degree of [r]_q! itself so every division stays exact.
  int truncation = r * (r - 1) + 2;
  PolySeries num = PolySeries::one(truncation);
  for (int k = 2; k <= r; ++k) num = num * q_integer(k, truncation);
  for (int m : multiplicities)
    for (int k = 2; k <= m; ++k) num = num.exact_div(q_integer(k, truncation));
  return num;
}

const char* chamber_name(Chamber c) {
  switch (c) {
    case Chamber::D4: return "D4";
    case Chamber::D5: return "D5";
    case Chamber::Empty: return "Empty";
    case Chamber::Wall: return "Wall";
  }
  return "?";
}

Chamber chamber_report(const Rational& mu) {
  if (mu < 0 || mu > Rational(1, 2)) fail(errc::out_of_alcove, "mu must lie in [0, 1/2]");
  if (mu == 0 || mu == Rational(1, 5) || mu == Rational(2, 5)) return Chamber::Wall;
  if (mu < Rational(1, 5)) return Chamber::D4;
  if (mu < Rational(2, 5)) return Chamber::D5;
  return Chamber::Empty;
}

PolySeries unknot_hf(int r) {
  if (r < 2) fail(errc::invalid_rank, "rank must be at least 2");
  return flag_poincare({1, r - 1});
}

}  // namespace tmt::betti
