#pragma once

#include "tmt/rational.hpp"

#include <string>
#include <vector>

namespace tmt::betti {

/// Truncated integer power series in t.  Index = degree; coefficients above the
/// truncation degree are discarded by every operation.
class PolySeries {
 public:
  explicit PolySeries(int truncation);
  PolySeries(std::vector<Integer> coeffs, int truncation);

  static PolySeries one(int truncation);
  static PolySeries monomial(int degree, const Integer& c, int truncation);

  int truncation() const { return truncation_; }
  /// Degree of the highest nonzero coefficient, or -1 for the zero series.
  int degree() const;
  Integer coeff(int k) const;
  const std::vector<Integer>& coeffs() const { return coeffs_; }

  PolySeries& operator+=(const PolySeries& o);
  PolySeries& operator-=(const PolySeries& o);
  friend PolySeries operator+(PolySeries a, const PolySeries& b) { return a += b; }
  friend PolySeries operator-(PolySeries a, const PolySeries& b) { return a -= b; }
  friend PolySeries operator*(const PolySeries& a, const PolySeries& b);
  bool operator==(const PolySeries& o) const;

  PolySeries pow(int n) const;

  /// Multiply by the geometric series (1 - t^k)^{-1}, exact under truncation.
  PolySeries geometric_div(int k) const;

  /// Exact polynomial division; throws if the remainder is nonzero.
  PolySeries exact_div(const PolySeries& divisor) const;

  Integer eval_one() const;
  bool palindromic() const;

  /// "1 + 5t^2 + t^4" style rendering.
  std::string pretty() const;

 private:
  void trim();
  std::vector<Integer> coeffs_;
  int truncation_;
};

}  // namespace tmt::betti
