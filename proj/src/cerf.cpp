#include "tmt/cerf.hpp"

#include "tmt/error.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <unordered_map>

namespace tmt::cerf {

using tangle::Generator;
using tangle::Marking;
using tangle::TangleWord;

namespace {

using Kind = Move::Kind;
using GKind = Generator::Kind;

bool is_vertex(const Generator& g) {
  return g.kind == GKind::merge || g.kind == GKind::split;
}

int kind_rank(const Generator& g) {
  switch (g.kind) {
    case GKind::cup: return 0;
    case GKind::cap: return 1;
    case GKind::merge: return 2;
    case GKind::split: return 3;
    case GKind::braid: return 4;
  }
  return 5;
}

std::pair<int, int> sort_key(const Generator& g) { return {g.pos, kind_rank(g)}; }

Kind switch_kind(const Generator& a, const Generator& b) {
  int v = (is_vertex(a) ? 1 : 0) + (is_vertex(b) ? 1 : 0);
  if (v == 2) return Kind::VertexVertexSwitch;
  if (v == 1) return Kind::VertexCritSwitch;
  return Kind::DistantCommute;
}

// Does [a; b] act as the identity on `level`?
bool is_identity_pair(const std::vector<Marking>& level, const Generator& a, const Generator& b,
                      int r) {
  try {
    return tangle::apply_generator(tangle::apply_generator(level, a, r), b, r) == level;
  } catch (const error&) {
    return false;
  }
}

bool cancel_matches(Kind k, const Generator& a, const Generator& b) {
  if (k == Kind::CupCapCancel)
    return a.kind == GKind::cup && b.kind == GKind::cap &&
           (b.pos == a.pos - 1 || b.pos == a.pos + 1);
  if (k == Kind::VertexCritCancel)
    return ((a.kind == GKind::merge && b.kind == GKind::split) ||
            (a.kind == GKind::split && b.kind == GKind::merge)) &&
           a.pos == b.pos;
  return false;
}

// Swapped version of the adjacent pair [a; b] when they act on disjoint
// strands, with positions reindexed, or nullopt.  Callers must still verify by
// replay on the actual level.
std::optional<std::pair<Generator, Generator>> swap_pair(const Generator& a, const Generator& b) {
  if (b.pos + b.arity_in() <= a.pos) {  // b entirely below a
    Generator a2 = a;
    a2.pos += b.delta();
    return std::make_pair(b, a2);
  }
  if (b.pos >= a.pos + a.arity_out()) {  // b entirely above a's output
    Generator b2 = b;
    b2.pos -= a.delta();
    return std::make_pair(b2, a);
  }
  return std::nullopt;
}

bool switch_applies(const std::vector<Marking>& level, const Generator& a, const Generator& b,
                    int r, std::pair<Generator, Generator>& out) {
  auto sw = swap_pair(a, b);
  if (!sw) return false;
  try {
    auto direct = tangle::apply_generator(tangle::apply_generator(level, a, r), b, r);
    auto swapped = tangle::apply_generator(tangle::apply_generator(level, sw->first, r), sw->second, r);
    if (direct != swapped) return false;
  } catch (const error&) {
    return false;
  }
  out = *sw;
  return true;
}

using Levels = std::vector<std::vector<Marking>>;

// Key over the generator list only; valid within one search where the
// incoming markings are fixed.  Cup labels are interned in `reg`.
std::string gen_key(const TangleWord& w, std::vector<alcove::Label>& reg) {
  std::string s;
  for (const auto& g : w.generators) {
    s += static_cast<char>('0' + static_cast<int>(g.kind));
    s += std::to_string(g.pos);
    if (g.kind == GKind::braid) s += g.braid_sign > 0 ? '+' : '-';
    if (g.kind == GKind::cup) {
      std::size_t id = 0;
      while (id < reg.size() && !(reg[id] == *g.cup_label)) ++id;
      if (id == reg.size()) reg.push_back(*g.cup_label);
      s += 'L';
      s += std::to_string(id);
    }
    s += ';';
  }
  return s;
}

struct Succ {
  Move m;
  TangleWord w;
  Levels levels;
};

// All one-move rewrites of a valid word with known levels, computed without
// re-propagating the whole word.
std::vector<Succ> successors(const TangleWord& w, const Levels& levels) {
  std::vector<Succ> out;
  const int n = static_cast<int>(w.generators.size());
  for (int p = 0; p + 1 < n; ++p) {
    const Generator& a = w.generators[p];
    const Generator& b = w.generators[p + 1];
    for (Kind k : {Kind::CupCapCancel, Kind::VertexCritCancel}) {
      if (cancel_matches(k, a, b) && levels[p] == levels[p + 2]) {
        Succ s;
        s.m = Move{k, p, false, {}};
        s.w = w;
        s.w.generators.erase(s.w.generators.begin() + p, s.w.generators.begin() + p + 2);
        s.levels = levels;
        s.levels.erase(s.levels.begin() + p + 1, s.levels.begin() + p + 3);
        out.push_back(std::move(s));
      }
    }
    auto sw = swap_pair(a, b);
    if (!sw) continue;
    try {
      auto mid = tangle::apply_generator(levels[p], sw->first, w.group_rank);
      if (tangle::apply_generator(mid, sw->second, w.group_rank) != levels[p + 2]) continue;
      Succ s;
      s.m = Move{switch_kind(a, b), p, false, {}};
      s.w = w;
      s.w.generators[p] = sw->first;
      s.w.generators[p + 1] = sw->second;
      s.levels = levels;
      s.levels[p + 1] = std::move(mid);
      out.push_back(std::move(s));
    } catch (const error&) {
    }
  }
  return out;
}

}  // namespace

bool Move::operator==(const Move& o) const {
  return kind == o.kind && position == o.position && inverse == o.inverse &&
         inserted == o.inserted;
}

std::string move_str(const Move& m) {
  const char* k = "?";
  switch (m.kind) {
    case Kind::CupCapCancel: k = m.inverse ? "cup-cap-create" : "cup-cap-cancel"; break;
    case Kind::DistantCommute: k = "distant-commute"; break;
    case Kind::CylinderGlue: k = "cylinder-glue"; break;
    case Kind::VertexCritSwitch: k = "vertex-crit-switch"; break;
    case Kind::VertexVertexSwitch: k = "vertex-vertex-switch"; break;
    case Kind::VertexCritCancel: k = m.inverse ? "vertex-crit-create" : "vertex-crit-cancel"; break;
  }
  return std::string(k) + " at " + std::to_string(m.position);
}

tangle::TangleWord apply_move(const tangle::TangleWord& w, const Move& m) {
  const int p = m.position;
  const auto na = [&](const std::string& why) { fail(errc::not_applicable, why); };

  if (m.kind == Kind::CylinderGlue)
    na("identity segments are implicit in the word model");

  if (m.inverse) {
    if (m.kind != Kind::CupCapCancel && m.kind != Kind::VertexCritCancel)
      na("only cancellations have creation inverses");
    if (m.inserted.size() != 2 || !cancel_matches(m.kind, m.inserted[0], m.inserted[1]))
      na("inserted pair does not match the move kind");
    if (p < 0 || p > static_cast<int>(w.generators.size())) na("position out of range");
    TangleWord out = w;
    out.generators.insert(out.generators.begin() + p, m.inserted.begin(), m.inserted.end());
    auto levels = tangle::propagate_labels(out);  // throws if invalid
    if (levels[p] != levels[p + 2]) na("inserted pair is not an identity at this level");
    return out;
  }

  if (p < 0 || p + 1 >= static_cast<int>(w.generators.size())) na("position out of range");
  const Generator& a = w.generators[p];
  const Generator& b = w.generators[p + 1];
  auto levels = tangle::propagate_labels(w);

  if (m.kind == Kind::CupCapCancel || m.kind == Kind::VertexCritCancel) {
    if (!cancel_matches(m.kind, a, b)) na("pair does not match the cancellation pattern");
    if (!is_identity_pair(levels[p], a, b, w.group_rank)) na("pair is not an identity here");
    TangleWord out = w;
    out.generators.erase(out.generators.begin() + p, out.generators.begin() + p + 2);
    return out;
  }

  if (switch_kind(a, b) != m.kind) na("pair does not match the switch kind");
  std::pair<Generator, Generator> sw{a, b};
  if (!switch_applies(levels[p], a, b, w.group_rank, sw)) na("generators do not commute here");
  TangleWord out = w;
  out.generators[p] = sw.first;
  out.generators[p + 1] = sw.second;
  return out;
}

std::vector<Move> applicable_moves(const tangle::TangleWord& w) {
  std::vector<Move> moves;
  auto levels = tangle::propagate_labels(w);
  const int n = static_cast<int>(w.generators.size());
  for (int p = 0; p + 1 < n; ++p) {
    const Generator& a = w.generators[p];
    const Generator& b = w.generators[p + 1];
    for (Kind k : {Kind::CupCapCancel, Kind::VertexCritCancel})
      if (cancel_matches(k, a, b) && is_identity_pair(levels[p], a, b, w.group_rank))
        moves.push_back(Move{k, p, false, {}});
    std::pair<Generator, Generator> sw{a, b};
    if (switch_applies(levels[p], a, b, w.group_rank, sw))
      moves.push_back(Move{switch_kind(a, b), p, false, {}});
  }
  return moves;
}

namespace {

struct NormalizeRun {
  TangleWord result;
  std::vector<Move> moves;
  std::vector<TangleWord> before;  // word each move was applied to
};

NormalizeRun normalize_run(const tangle::TangleWord& w, bool record) {
  NormalizeRun run;
  TangleWord cur = w;
  Levels levels = tangle::propagate_labels(cur);
  auto log = [&](Kind k, int p) {
    if (!record) return;
    run.before.push_back(cur);
    run.moves.push_back(Move{k, p, false, {}});
  };
  bool changed = true;
  while (changed) {
    changed = false;
    // Cancel greedily, leftmost first.
    bool cancelled = true;
    while (cancelled) {
      cancelled = false;
      for (int p = 0; p + 1 < static_cast<int>(cur.generators.size()); ++p) {
        const Generator& a = cur.generators[p];
        const Generator& b = cur.generators[p + 1];
        Kind hit{};
        bool found = false;
        for (Kind k : {Kind::CupCapCancel, Kind::VertexCritCancel})
          if (cancel_matches(k, a, b) && levels[p] == levels[p + 2]) {
            hit = k;
            found = true;
          }
        if (found) {
          log(hit, p);
          cur.generators.erase(cur.generators.begin() + p, cur.generators.begin() + p + 2);
          levels.erase(levels.begin() + p + 1, levels.begin() + p + 3);
          cancelled = changed = true;
          break;
        }
      }
    }
    // One bubble pass of commuting swaps toward sorted order.
    for (int p = 0; p + 1 < static_cast<int>(cur.generators.size()); ++p) {
      const Generator& a = cur.generators[p];
      const Generator& b = cur.generators[p + 1];
      auto sw = swap_pair(a, b);
      if (!sw || !(sort_key(sw->first) < sort_key(a))) continue;
      try {
        auto mid = tangle::apply_generator(levels[p], sw->first, cur.group_rank);
        if (tangle::apply_generator(mid, sw->second, cur.group_rank) != levels[p + 2]) continue;
        log(switch_kind(a, b), p);
        cur.generators[p] = sw->first;
        cur.generators[p + 1] = sw->second;
        levels[p + 1] = std::move(mid);
        changed = true;
      } catch (const error&) {
      }
    }
  }
  run.result = std::move(cur);
  return run;
}

}  // namespace

tangle::TangleWord normalize(const tangle::TangleWord& w) {
  return normalize_run(w, false).result;
}

namespace {

// Move that undoes `m`, where applying m to x gave y.
Move inverse_move(const TangleWord& x, const TangleWord& y, const Move& m) {
  if (m.kind == Kind::CupCapCancel || m.kind == Kind::VertexCritCancel) {
    Move inv = m;
    inv.inverse = true;
    inv.inserted = {x.generators[m.position], x.generators[m.position + 1]};
    return inv;
  }
  // Switches undo themselves at the same position.
  Move inv = m;
  inv.inverse = false;
  return inv;
}

}  // namespace

EquivalenceProof equivalent(const tangle::TangleWord& w1, const tangle::TangleWord& w2, int depth,
                            std::size_t visit_cap) {
  if (w1.group_rank != w2.group_rank) fail(errc::boundary_mismatch, "different groups");
  if (!(tangle::boundary_profile(w1) == tangle::boundary_profile(w2)))
    fail(errc::boundary_mismatch, "words have different boundary profiles");

  if (w1 == w2) {
    EquivalenceProof p;
    p.yes = true;
    return p;
  }

  // Fast path: stitch the two normalization runs when both fit in the
  // per-side budget; otherwise fall back to the full search below.
  {
    NormalizeRun r1 = normalize_run(w1, true);
    NormalizeRun r2 = normalize_run(w2, true);
    if (r1.result == r2.result && static_cast<int>(r1.moves.size()) <= depth &&
        static_cast<int>(r2.moves.size()) <= depth) {
      EquivalenceProof p;
      p.yes = true;
      for (std::size_t k = 0; k < r1.moves.size(); ++k) {
        const TangleWord& after = k + 1 < r1.moves.size() ? r1.before[k + 1] : r1.result;
        p.trace.emplace_back(r1.moves[k], after);
      }
      for (std::size_t k = r2.moves.size(); k-- > 0;) {
        const TangleWord& target = r2.before[k];
        TangleWord after = k + 1 < r2.moves.size() ? r2.before[k + 1] : r2.result;
        p.trace.emplace_back(inverse_move(target, after, r2.moves[k]), target);
      }
      return p;
    }
  }

  struct Node {
    TangleWord w;
    Levels levels;
    std::string key;
    int parent = -1;
    Move via;
  };
  struct Side {
    std::vector<Node> nodes;
    std::unordered_map<std::string, int> seen;
    std::deque<int> frontier;
    int depth = 0;
  };
  std::vector<alcove::Label> reg;
  Side fwd, bwd;
  auto seed = [&reg](Side& s, const TangleWord& w) {
    Node n{w, tangle::propagate_labels(w), gen_key(w, reg), -1, {}};
    s.seen.emplace(n.key, 0);
    s.nodes.push_back(std::move(n));
    s.frontier.push_back(0);
  };
  seed(fwd, w1);
  seed(bwd, w2);

  int meet_f = -1, meet_b = -1;
  auto check_meet = [&](bool from_fwd, int idx) {
    const Side& self = from_fwd ? fwd : bwd;
    const Side& other = from_fwd ? bwd : fwd;
    auto it = other.seen.find(self.nodes[idx].key);
    if (it == other.seen.end()) return false;
    meet_f = from_fwd ? idx : it->second;
    meet_b = from_fwd ? it->second : idx;
    return true;
  };

  bool met = check_meet(true, 0);
  std::size_t visited = 2;
  while (!met && visited < visit_cap) {
    Side* sp = nullptr;
    for (Side* c : {&fwd, &bwd})
      if (c->depth < depth && !c->frontier.empty() &&
          (!sp || c->frontier.size() < sp->frontier.size()))
        sp = c;
    if (!sp) break;
    Side& s = *sp;
    bool from_fwd = (&s == &fwd);
    std::deque<int> next;
    for (int idx : s.frontier) {
      for (Succ& sc : successors(s.nodes[idx].w, s.nodes[idx].levels)) {
        std::string key = gen_key(sc.w, reg);
        auto [it, fresh] = s.seen.emplace(std::move(key), static_cast<int>(s.nodes.size()));
        if (!fresh) continue;
        s.nodes.push_back(Node{std::move(sc.w), std::move(sc.levels), it->first, idx, sc.m});
        next.push_back(it->second);
        ++visited;
        if (check_meet(from_fwd, it->second)) {
          met = true;
          break;
        }
        if (visited >= visit_cap) break;
      }
      if (met || visited >= visit_cap) break;
    }
    s.frontier = std::move(next);
    ++s.depth;
  }

  EquivalenceProof proof;
  if (!met) return proof;
  proof.yes = true;
  // Forward half: w1 down to the meeting word.
  std::vector<int> chain;
  for (int i = meet_f; i != -1; i = fwd.nodes[i].parent) chain.push_back(i);
  std::reverse(chain.begin(), chain.end());
  for (std::size_t k = 1; k < chain.size(); ++k)
    proof.trace.emplace_back(fwd.nodes[chain[k]].via, fwd.nodes[chain[k]].w);
  // Backward half: invert the path from w2 to the meeting word.
  for (int i = meet_b; bwd.nodes[i].parent != -1; i = bwd.nodes[i].parent) {
    const Node& child = bwd.nodes[i];
    const Node& par = bwd.nodes[child.parent];
    proof.trace.emplace_back(inverse_move(par.w, child.w, child.via), par.w);
  }
  return proof;
}

}  // namespace tmt::cerf
