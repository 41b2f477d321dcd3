#pragma once

#include "tmt/alcove.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tmt::tangle {

/// Oriented marked point on a level surface.
struct Marking {
  int sign = +1;  // +1 or -1
  alcove::Label label;

  bool operator==(const Marking& o) const { return sign == o.sign && label == o.label; }
};

/// Strand-reversal-invariant view of a marking: (-,mu) and (+,*mu) describe the
/// same strand through the surface.
alcove::Label oriented_label(const Marking& m);

struct Generator {
  enum class Kind { braid, cup, cap, merge, split };
  Kind kind = Kind::braid;
  int pos = 1;  // 1-based strand position
  int braid_sign = +1;
  std::optional<alcove::Label> cup_label;

  bool operator==(const Generator& o) const;
  /// Net change in strand count.
  int delta() const;
  /// Number of strands consumed at the input level.
  int arity_in() const;
  /// Number of strands produced at the output level.
  int arity_out() const;
};

Generator braid(int pos, int sign);
Generator cup(int pos, alcove::Label label);
Generator cap(int pos);
Generator merge(int pos);
Generator split(int pos);

/// A Cerf-decomposed cylindrical tangle: bottom boundary markings plus a
/// bottom-to-top list of elementary generators.
struct TangleWord {
  int group_rank = 2;
  int genus = 0;  // parsed and stored; numeric modules only handle 0
  std::vector<Marking> incoming;
  std::vector<Generator> generators;

  bool operator==(const TangleWord& o) const;
};

/// Apply one generator to a level of markings, validating strand indices and
/// label/orientation rules.
std::vector<Marking> apply_generator(const std::vector<Marking>& level, const Generator& g,
                                     int group_rank);

/// Replay the whole word.  Returns one marking list per level (generators+1
/// entries); throws on any index or label violation.
std::vector<std::vector<Marking>> propagate_labels(const TangleWord& w);

std::pair<std::vector<Marking>, std::vector<Marking>> boundary_profile(const TangleWord& w);

/// Chain two words; outgoing(w1) must equal incoming(w2).
TangleWord concat(const TangleWord& w1, const TangleWord& w2);

TangleWord parse(const std::string& text);
std::string serialize(const TangleWord& w);

std::string marking_str(const Marking& m);

}  // namespace tmt::tangle
