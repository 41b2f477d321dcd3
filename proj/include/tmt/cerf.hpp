#pragma once

#include "tmt/tangle.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace tmt::cerf {

/// One rewrite step on a tangle word.  Cancellation kinds delete an adjacent
/// pair that acts as the identity; switch kinds swap adjacent generators on
/// disjoint strands, reindexing positions.  A move with `inverse` set replays
/// the reverse direction (a creation), re-inserting `inserted` at `position`.
struct Move {
  enum class Kind {
    CupCapCancel,
    DistantCommute,
    CylinderGlue,
    VertexCritSwitch,
    VertexVertexSwitch,
    VertexCritCancel,
  };
  Kind kind = Kind::DistantCommute;
  int position = 0;  // index into the generator list
  bool inverse = false;
  std::vector<tangle::Generator> inserted;

  bool operator==(const Move& o) const;
};

std::string move_str(const Move& m);

/// Apply one move.  Throws NotApplicable when the pattern does not match at
/// `position`; the result always has the same boundary profile as the input.
tangle::TangleWord apply_move(const tangle::TangleWord& w, const Move& m);

/// All cancellations and switches applicable to w, in a fixed deterministic
/// order (by position, cancellations before switches).
std::vector<Move> applicable_moves(const tangle::TangleWord& w);

/// Greedy cancellation to a fixpoint interleaved with a stable commuting sort
/// of adjacent generators (lower strand position first; ties broken by
/// cup < cap < merge < split < braid).  Idempotent; never lengthens the word.
tangle::TangleWord normalize(const tangle::TangleWord& w);

struct EquivalenceProof {
  bool yes = false;  // unknown otherwise; never a proof of inequivalence
  std::vector<std::pair<Move, tangle::TangleWord>> trace;
};

/// Bidirectional breadth-first search over moves; each side explores up to
/// `depth` rewrites, so a yes verdict certifies a path of length <= 2*depth.
/// The trace replays exactly from w1 to w2.
EquivalenceProof equivalent(const tangle::TangleWord& w1, const tangle::TangleWord& w2,
                            int depth = 6, std::size_t visit_cap = 100000);

}  // namespace tmt::cerf
