#include "tmt/polyseries.hpp"

#include "tmt/error.hpp"

#include <algorithm>

namespace tmt::betti {

PolySeries::PolySeries(int truncation) : truncation_(truncation) {
  if (truncation < 0) fail(errc::invalid_index, "negative truncation");
}

PolySeries::PolySeries(std::vector<Integer> coeffs, int truncation)
    : coeffs_(std::move(coeffs)), truncation_(truncation) {
  if (truncation < 0) fail(errc::invalid_index, "negative truncation");
  if (static_cast<int>(coeffs_.size()) > truncation_ + 1) coeffs_.resize(truncation_ + 1);
  trim();
}

PolySeries PolySeries::one(int truncation) { return PolySeries({Integer(1)}, truncation); }

PolySeries PolySeries::monomial(int degree, const Integer& c, int truncation) {
  PolySeries p(truncation);
  if (degree <= truncation) {
    p.coeffs_.assign(degree + 1, Integer(0));
    p.coeffs_[degree] = c;
  }
  p.trim();
  return p;
}

void PolySeries::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

int PolySeries::degree() const { return static_cast<int>(coeffs_.size()) - 1; }

Integer PolySeries::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Integer(0);
  return coeffs_[k];
}

PolySeries& PolySeries::operator+=(const PolySeries& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Integer(0));
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  if (static_cast<int>(coeffs_.size()) > truncation_ + 1) coeffs_.resize(truncation_ + 1);
  trim();
  return *this;
}

PolySeries& PolySeries::operator-=(const PolySeries& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Integer(0));
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  if (static_cast<int>(coeffs_.size()) > truncation_ + 1) coeffs_.resize(truncation_ + 1);
  trim();
  return *this;
}

PolySeries operator*(const PolySeries& a, const PolySeries& b) {
  int tr = std::min(a.truncation_, b.truncation_);
  PolySeries out(tr);
  out.coeffs_.assign(static_cast<size_t>(tr) + 1, Integer(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (static_cast<int>(i) > tr) break;
    for (size_t j = 0; j < b.coeffs_.size() && static_cast<int>(i + j) <= tr; ++j)
      out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  out.trim();
  return out;
}

bool PolySeries::operator==(const PolySeries& o) const { return coeffs_ == o.coeffs_; }

PolySeries PolySeries::pow(int n) const {
  PolySeries out = one(truncation_);
  for (int i = 0; i < n; ++i) out = out * *this;
  return out;
}

PolySeries PolySeries::geometric_div(int k) const {
  if (k <= 0) fail(errc::invalid_index, "geometric_div needs k >= 1");
  // Multiply by 1 + t^k + t^{2k} + ... up to the truncation degree.
  PolySeries geo(truncation_);
  geo.coeffs_.assign(static_cast<size_t>(truncation_) + 1, Integer(0));
  for (int d = 0; d <= truncation_; d += k) geo.coeffs_[d] = 1;
  return *this * geo;
}

PolySeries PolySeries::exact_div(const PolySeries& divisor) const {
  if (divisor.coeffs_.empty()) fail(errc::bad_multiplicity, "division by zero polynomial");
  std::vector<Integer> rem = coeffs_;
  const auto& d = divisor.coeffs_;
  int dd = divisor.degree();
  if (degree() < dd) {
    if (coeffs_.empty()) return PolySeries(truncation_);
    fail(errc::bad_multiplicity, "inexact polynomial division");
  }
  std::vector<Integer> quot(coeffs_.size() - d.size() + 1, Integer(0));
  for (int i = static_cast<int>(rem.size()) - 1; i >= dd; --i) {
    if (rem[i] == 0) continue;
    if (rem[i] % d[dd] != 0) fail(errc::bad_multiplicity, "inexact polynomial division");
    Integer q = rem[i] / d[dd];
    quot[i - dd] = q;
    for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= q * d[j];
  }
  for (const auto& c : rem)
    if (c != 0) fail(errc::bad_multiplicity, "inexact polynomial division");
  return PolySeries(std::move(quot), truncation_);
}

Integer PolySeries::eval_one() const {
  Integer s = 0;
  for (const auto& c : coeffs_) s += c;
  return s;
}

bool PolySeries::palindromic() const {
  int d = degree();
  for (int k = 0; k <= d; ++k)
    if (coeff(k) != coeff(d - k)) return false;
  return true;
}

std::string PolySeries::pretty() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int k = 0; k <= degree(); ++k) {
    Integer c = coeff(k);
    if (c == 0) continue;
    if (!out.empty()) out += c > 0 ? " + " : " - ";
    else if (c < 0) out += "-";
    Integer a = abs(c);
    if (k == 0) out += a.str();
    else {
      if (a != 1) out += a.str();
      out += "t";
      if (k != 1) out += "^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace tmt::betti
