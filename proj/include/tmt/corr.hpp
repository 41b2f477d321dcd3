#pragma once

#include "tmt/betti.hpp"
#include "tmt/holovar.hpp"
#include "tmt/tangle.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tmt::corr {

using tangle::Marking;

/// One letter of a holonomy word: variable index and exponent +-1.
struct Term {
  int var = 0;
  int exp = +1;

  bool operator==(const Term& o) const { return var == o.var && exp == o.exp; }
  bool operator<(const Term& o) const {
    return var != o.var ? var < o.var : exp > o.exp;
  }
};

using GWord = std::vector<Term>;

/// Product: word = 1.  Membership: word lies in the conjugacy class of label.
/// Equalities x = w are stored as products x^{-1} w.
struct Relation {
  enum class Kind { product, membership };
  Kind kind = Kind::product;
  GWord word;
  std::optional<alcove::Label> label;

  bool operator==(const Relation& o) const;
  bool operator<(const Relation& o) const;
};

/// Lagrangian correspondence presented by holonomy constraints between a left
/// and a right boundary profile.  Variables are positional: left boundary
/// strands first (x1..), then right boundary strands (y1..).
struct ConstraintSystem {
  int rank = 2;
  std::vector<Marking> left;
  std::vector<Marking> right;
  std::vector<Relation> relations;
  bool simply_connected = true;
  bool disk_zero = true;  // disk invariant known to vanish

  bool operator==(const ConstraintSystem& o) const;
};

/// Sorted-relation canonical form; system equality is string equality of
/// canonical forms.
ConstraintSystem canonicalize(ConstraintSystem cs);

std::string to_string(const ConstraintSystem& cs);

/// Identity correspondence: all pass-through equalities.
ConstraintSystem diagonal_system(const std::vector<Marking>& marks, int rank);

/// The holonomy presentation of one elementary tangle generator applied to the
/// given level of markings.
ConstraintSystem correspondence_of(const tangle::Generator& g,
                                   const std::vector<Marking>& marks, int rank);

/// Geometric composition by syntactic elimination of the middle variables.
/// Throws BoundaryMismatch or NotEliminable (the latter is conservative, not a
/// disproof of composability).
ConstraintSystem compose_embedded(const ConstraintSystem& c1, const ConstraintSystem& c2);

struct GeneralizedCorrespondence {
  std::vector<ConstraintSystem> factors;  // adjacent boundaries match
};

/// One system per generator, then greedy pairwise composition wherever the
/// embedded composition succeeds; factors equal to the diagonal are dropped.
GeneralizedCorrespondence sequence_of_word(const tangle::TangleWord& w);

/// Numeric realization of a system: class variables for every boundary strand
/// plus one auxiliary class variable per membership relation.
holovar::WordProblem word_problem_of(const ConstraintSystem& cs);

/// The glued, uneliminated problem of a composable pair: left then right then
/// middle variables, with both factors' relations.
holovar::WordProblem glued_problem(const ConstraintSystem& c1, const ConstraintSystem& c2);

struct InvariantReport {
  bool disk_zero = true;
  GeneralizedCorrespondence sequence;
  std::optional<betti::PolySeries> hf;  // set when the unknot pair is detected
};

/// Link-invariant pipeline: checks the word is closed, adds rank+1 spectator
/// circles, builds the correspondence sequence, composes greedily down to a
/// cup-side / cap-side pair, and reports the unknot cohomology when that pair
/// is (cups, caps) with no braiding left.
InvariantReport invariant_pipeline(const tangle::TangleWord& w, int r);

}  // namespace tmt::corr
