#pragma once

#include "tmt/polyseries.hpp"
#include "tmt/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tmt::alcove {

/// A point of the Weyl alcove of SU(r): exact rationals, stored weakly
/// decreasing, summing to zero, with spread lambda_1 - lambda_r <= 1.
class Label {
 public:
  /// Sorts the entries into the canonical decreasing order and checks both
  /// alcove constraints exactly.
  Label(int rank, std::vector<Rational> entries);

  int rank() const { return rank_; }
  const std::vector<Rational>& entries() const { return entries_; }
  const Rational& entry(int i) const { return entries_[i]; }

  bool operator==(const Label& o) const { return rank_ == o.rank_ && entries_ == o.entries_; }
  bool operator<(const Label& o) const;

  bool is_zero() const;

  /// Text form: `wK/2` when the label is half of a vertex, otherwise the
  /// explicit rational vector `(1/3,0,-1/3)`.
  std::string str() const;

 private:
  int rank_;
  std::vector<Rational> entries_;
};

/// k-th vertex omega_k of the alcove: ((r-k)/r ... , -k/r ...), omega_0 = 0.
Label vertex(int r, int k);

/// Half of a vertex, the admissible building block.
Label half_vertex(int r, int k);

/// rho/r: unit consecutive gaps scaled into the alcove.
Label barycenter(int r);

/// The inverse involution * : (l_1..l_r) -> (-l_r..-l_1).
Label involution(const Label& l);

/// Returns k when l == vertex(r,k)/2, otherwise nullopt.
std::optional<int> half_vertex_index(const Label& l);

/// Projections of rho/r onto the closed faces of the alcove.
std::vector<Label> monotone_labels(int r);

bool is_monotone(const Label& l);

struct AdmissibilityReport {
  bool ok = false;
  std::optional<int> d;  // residue with gcd(d, r) = 1 when ok
  std::string reason;
};

/// Admissibility per the half-vertex + parity condition: every label a half
/// vertex and 2*sum reducing to omega_d mod the coroot lattice, gcd(d,r)=1.
AdmissibilityReport is_admissible(const std::vector<Label>& labels, int r);

/// Exhaustive wall check over all Weyl tuples; guard r <= 4, n <= n_cap.
bool wall_check_bruteforce(const std::vector<Label>& labels, int r, int n_cap = 6);

struct ClassInfo {
  std::vector<int> multiplicities;
  int real_dimension = 0;
  betti::PolySeries poincare = betti::PolySeries(0);
};

/// Eigenvalue multiplicities, dimension and Poincare polynomial of the
/// conjugacy class C_l, a partial flag variety.
ClassInfo conj_class_info(const Label& l);

/// Parse `wK/2`, an explicit vector `(1/3,0,-1/3)`, or (rank 2 only) the
/// interval alias `1/4` for (1/4,-1/4).
Label parse_label(const std::string& text, int r);

}  // namespace tmt::alcove
