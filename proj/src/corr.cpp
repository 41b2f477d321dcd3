#include "tmt/corr.hpp"

#include "tmt/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tmt::corr {

namespace {

using tangle::Generator;

GWord invert(const GWord& w) {
  GWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->var, -it->exp});
  return out;
}

void free_reduce(GWord& w, bool cyclic) {
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i].var == w[i + 1].var && w[i].exp == -w[i + 1].exp) {
        w.erase(w.begin() + i, w.begin() + i + 2);
        again = true;
        break;
      }
    if (!again && cyclic && w.size() >= 2 && w.front().var == w.back().var &&
        w.front().exp == -w.back().exp) {
      w.pop_back();
      w.erase(w.begin());
      again = true;
    }
  }
}

GWord min_rotation(const GWord& w) {
  GWord best = w;
  GWord cur = w;
  for (std::size_t k = 1; k < w.size(); ++k) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (std::lexicographical_compare(cur.begin(), cur.end(), best.begin(), best.end()))
      best = cur;
  }
  return best;
}

Relation canonical_relation(Relation r) {
  free_reduce(r.word, true);
  if (r.word.empty()) return r;
  if (r.kind == Relation::Kind::product) {
    GWord a = min_rotation(r.word);
    GWord b = min_rotation(invert(r.word));
    r.word = std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end()) ? b : a;
    return r;
  }
  // Membership: cyclic rotation is conjugation, inversion involutes the class.
  GWord a = min_rotation(r.word);
  GWord b = min_rotation(invert(r.word));
  alcove::Label la = *r.label;
  alcove::Label lb = alcove::involution(la);
  bool take_b = std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end()) ||
                (a == b && lb < la);
  r.word = take_b ? b : a;
  r.label = take_b ? lb : la;
  return r;
}

bool Relation_less(const Relation& x, const Relation& y) {
  if (x.kind != y.kind) return x.kind < y.kind;
  if (x.word != y.word)
    return std::lexicographical_compare(x.word.begin(), x.word.end(), y.word.begin(),
                                        y.word.end());
  if (x.label.has_value() != y.label.has_value()) return y.label.has_value();
  if (x.label && y.label && !(*x.label == *y.label)) return *x.label < *y.label;
  return false;
}

// Explicit definitions u = alpha derivable from products where u occurs once.
std::vector<std::pair<int, GWord>> definitions(const std::vector<Relation>& rels) {
  std::vector<std::pair<int, GWord>> defs;
  for (const auto& r : rels) {
    if (r.kind != Relation::Kind::product) continue;
    for (std::size_t k = 0; k < r.word.size(); ++k) {
      int v = r.word[k].var;
      int count = 0;
      for (const auto& t : r.word) count += (t.var == v);
      if (count != 1) continue;
      GWord before(r.word.begin(), r.word.begin() + k);
      GWord after(r.word.begin() + k + 1, r.word.end());
      // before * v^e * after = 1.
      GWord sol;
      if (r.word[k].exp > 0) {
        sol = invert(before);
        GWord ia = invert(after);
        sol.insert(sol.end(), ia.begin(), ia.end());
      } else {
        sol = after;
        sol.insert(sol.end(), before.begin(), before.end());
      }
      free_reduce(sol, false);
      defs.emplace_back(v, std::move(sol));
    }
  }
  return defs;
}

}  // namespace

bool Relation::operator==(const Relation& o) const {
  return kind == o.kind && word == o.word &&
         label.has_value() == o.label.has_value() && (!label || *label == *o.label);
}

bool Relation::operator<(const Relation& o) const { return Relation_less(*this, o); }

ConstraintSystem canonicalize(ConstraintSystem cs) {
  const int nl = static_cast<int>(cs.left.size());
  auto label_of = [&](int v) {
    return v < nl ? cs.left[v].label : cs.right[v - nl].label;
  };
  std::vector<Relation> out;
  for (auto& r : cs.relations) {
    Relation c = canonical_relation(std::move(r));
    // An empty product is vacuous; an empty membership still constrains (it
    // asserts the identity lies in the class) and is kept.
    if (c.word.empty() && c.kind == Relation::Kind::product) continue;
    out.push_back(std::move(c));
  }
  // Triangular rewriting: a product where a variable occurs exactly once and
  // every other variable is lower defines that variable, and substituting the
  // definition into all other relations makes presentations that differ only
  // by such rewritings canonically equal.  Highest defined variable first.
  for (int guard = 0; guard < 100; ++guard) {
    std::sort(out.begin(), out.end(), Relation_less);
    int best_var = -1;
    std::size_t best_rel = 0;
    GWord best_sol;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Relation& r = out[i];
      if (r.kind != Relation::Kind::product) continue;
      for (std::size_t k = 0; k < r.word.size(); ++k) {
        int v = r.word[k].var;
        if (v <= best_var) continue;
        bool once = true;
        for (std::size_t m = 0; m < r.word.size(); ++m)
          if (m != k && r.word[m].var >= v) once = false;
        if (!once) continue;
        bool elsewhere = false;
        for (std::size_t j = 0; j < out.size(); ++j) {
          if (j == i) continue;
          for (const Term& t : out[j].word) elsewhere |= t.var == v;
        }
        if (!elsewhere) continue;
        GWord before(r.word.begin(), r.word.begin() + k);
        GWord after(r.word.begin() + k + 1, r.word.end());
        GWord sol;
        if (r.word[k].exp > 0) {
          sol = invert(before);
          GWord ia = invert(after);
          sol.insert(sol.end(), ia.begin(), ia.end());
        } else {
          sol = after;
          sol.insert(sol.end(), before.begin(), before.end());
        }
        free_reduce(sol, false);
        best_var = v;
        best_rel = i;
        best_sol = std::move(sol);
      }
    }
    if (best_var < 0) break;
    GWord isol = invert(best_sol);
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (j == best_rel) continue;
      GWord w2;
      for (const Term& t : out[j].word) {
        if (t.var == best_var) {
          const GWord& s = t.exp > 0 ? best_sol : isol;
          w2.insert(w2.end(), s.begin(), s.end());
        } else {
          w2.push_back(t);
        }
      }
      Relation nr = out[j];
      nr.word = std::move(w2);
      out[j] = canonical_relation(std::move(nr));
    }
    std::vector<Relation> tmp;
    for (auto& r : out)
      if (!(r.word.empty() && r.kind == Relation::Kind::product))
        tmp.push_back(std::move(r));
    out = std::move(tmp);
  }
  // Drop memberships implied by a boundary label, directly or through an
  // explicit definition.
  auto defs = definitions(out);
  std::vector<Relation> kept;
  for (auto& r : out) {
    if (r.kind == Relation::Kind::membership) {
      if (r.word.size() == 1) {
        alcove::Label l = label_of(r.word[0].var);
        if (r.word[0].exp < 0) l = alcove::involution(l);
        if (l == *r.label) continue;
      }
      bool implied = false;
      for (const auto& [u, alpha] : defs) {
        Relation probe{Relation::Kind::membership, alpha, label_of(u)};
        Relation cp = canonical_relation(probe);
        if (cp.word == r.word && cp.label && *cp.label == *r.label) {
          implied = true;
          break;
        }
      }
      if (implied) continue;
    }
    kept.push_back(std::move(r));
  }
  std::sort(kept.begin(), kept.end(), Relation_less);
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  cs.relations = std::move(kept);
  return cs;
}

std::string to_string(const ConstraintSystem& cs) {
  const int nl = static_cast<int>(cs.left.size());
  auto var_name = [&](int v) {
    return v < nl ? "x" + std::to_string(v + 1) : "y" + std::to_string(v - nl + 1);
  };
  std::string s = "SU(" + std::to_string(cs.rank) + ")\nleft:";
  for (const auto& m : cs.left) s += " " + tangle::marking_str(m);
  s += "\nright:";
  for (const auto& m : cs.right) s += " " + tangle::marking_str(m);
  s += "\n";
  for (const auto& r : cs.relations) {
    std::string line;
    for (const auto& t : r.word) {
      if (!line.empty()) line += " ";
      line += var_name(t.var);
      if (t.exp < 0) line += "^-1";
    }
    if (r.kind == Relation::Kind::product)
      s += line + " = 1\n";
    else
      s += line + " in C(" + r.label->str() + ")\n";
  }
  return s;
}

bool ConstraintSystem::operator==(const ConstraintSystem& o) const {
  return to_string(canonicalize(*this)) == to_string(canonicalize(o));
}

ConstraintSystem diagonal_system(const std::vector<Marking>& marks, int rank) {
  ConstraintSystem cs;
  cs.rank = rank;
  cs.left = marks;
  cs.right = marks;
  const int n = static_cast<int>(marks.size());
  for (int k = 0; k < n; ++k)
    cs.relations.push_back({Relation::Kind::product, {{n + k, -1}, {k, +1}}, {}});
  return canonicalize(cs);
}

ConstraintSystem correspondence_of(const Generator& g, const std::vector<Marking>& marks,
                                   int rank) {
  ConstraintSystem cs;
  cs.rank = rank;
  cs.left = marks;
  cs.right = tangle::apply_generator(marks, g, rank);
  const int nl = static_cast<int>(cs.left.size());
  const int i = g.pos;  // 1-based
  auto X = [&](int k) { return k - 1; };           // left strand k
  auto Y = [&](int k) { return nl + (k - 1); };    // right strand k
  auto pass = [&](int yk, int xk) {
    cs.relations.push_back({Relation::Kind::product, {{Y(yk), -1}, {X(xk), +1}}, {}});
  };
  const int nr = static_cast<int>(cs.right.size());
  switch (g.kind) {
    case Generator::Kind::braid:
      for (int k = 1; k <= nr; ++k)
        if (k != i && k != i + 1) pass(k, k);
      if (g.braid_sign > 0) {
        cs.relations.push_back({Relation::Kind::product, {{Y(i), -1}, {X(i + 1), +1}}, {}});
        cs.relations.push_back({Relation::Kind::product,
                                {{Y(i + 1), -1}, {X(i + 1), -1}, {X(i), +1}, {X(i + 1), +1}},
                                {}});
      } else {
        cs.relations.push_back(
            {Relation::Kind::product,
             {{Y(i), -1}, {X(i), +1}, {X(i + 1), +1}, {X(i), -1}},
             {}});
        cs.relations.push_back({Relation::Kind::product, {{Y(i + 1), -1}, {X(i), +1}}, {}});
      }
      break;
    case Generator::Kind::cup:
      cs.relations.push_back({Relation::Kind::product, {{Y(i), +1}, {Y(i + 1), +1}}, {}});
      for (int k = 1; k <= nr; ++k) {
        if (k < i) pass(k, k);
        if (k > i + 1) pass(k, k - 2);
      }
      break;
    case Generator::Kind::cap:
      cs.relations.push_back({Relation::Kind::product, {{X(i), +1}, {X(i + 1), +1}}, {}});
      for (int k = 1; k <= nr; ++k) pass(k, k < i ? k : k + 2);
      break;
    case Generator::Kind::merge:
      cs.relations.push_back(
          {Relation::Kind::product, {{Y(i), -1}, {X(i), +1}, {X(i + 1), +1}}, {}});
      for (int k = 1; k <= nr; ++k)
        if (k != i) pass(k, k < i ? k : k + 1);
      break;
    case Generator::Kind::split:
      cs.relations.push_back(
          {Relation::Kind::product, {{X(i), -1}, {Y(i), +1}, {Y(i + 1), +1}}, {}});
      for (int k = 1; k <= nr; ++k) {
        if (k < i) pass(k, k);
        if (k > i + 1) pass(k, k - 1);
      }
      break;
  }
  return canonicalize(cs);
}

ConstraintSystem compose_embedded(const ConstraintSystem& c1, const ConstraintSystem& c2) {
  if (c1.rank != c2.rank) fail(errc::rank_mismatch, "composition across groups");
  if (!(c1.right == c2.left))
    fail(errc::boundary_mismatch, "middle boundary profiles differ");
  const int nl = static_cast<int>(c1.left.size());
  const int nr = static_cast<int>(c2.right.size());
  const int nm = static_cast<int>(c1.right.size());
  const int nl1 = nl, nl2 = nm;

  // Combined numbering: left, right, middle.
  auto from1 = [&](int v) { return v < nl1 ? v : nl + nr + (v - nl1); };
  auto from2 = [&](int v) { return v < nl2 ? nl + nr + v : nl + (v - nl2); };
  std::vector<Relation> rels;
  for (const auto& r : c1.relations) {
    Relation c = r;
    for (auto& t : c.word) t.var = from1(t.var);
    rels.push_back(std::move(c));
  }
  for (const auto& r : c2.relations) {
    Relation c = r;
    for (auto& t : c.word) t.var = from2(t.var);
    rels.push_back(std::move(c));
  }
  auto label_of = [&](int v) {
    if (v < nl) return c1.left[v].label;
    if (v < nl + nr) return c2.right[v - nl].label;
    return c1.right[v - nl - nr].label;
  };
  auto is_mid = [&](int v) { return v >= nl + nr; };

  // Substitute explicitly solvable middle variables until exhausted.
  bool progress = true;
  while (progress) {
    progress = false;
    for (int m = nl + nr; m < nl + nr + nm && !progress; ++m) {
      for (std::size_t ri = 0; ri < rels.size(); ++ri) {
        const Relation& r = rels[ri];
        if (r.kind != Relation::Kind::product) continue;
        int count = 0, at = -1;
        for (std::size_t k = 0; k < r.word.size(); ++k)
          if (r.word[k].var == m) {
            ++count;
            at = static_cast<int>(k);
          }
        if (count != 1) continue;
        GWord before(r.word.begin(), r.word.begin() + at);
        GWord after(r.word.begin() + at + 1, r.word.end());
        GWord sol;
        if (r.word[at].exp > 0) {
          sol = invert(before);
          GWord ia = invert(after);
          sol.insert(sol.end(), ia.begin(), ia.end());
        } else {
          sol = after;
          sol.insert(sol.end(), before.begin(), before.end());
        }
        free_reduce(sol, false);
        GWord soli = invert(sol);
        std::vector<Relation> next;
        for (std::size_t rj = 0; rj < rels.size(); ++rj) {
          if (rj == ri) continue;
          Relation c = rels[rj];
          GWord w;
          for (const auto& t : c.word) {
            const GWord& rep = t.exp > 0 ? sol : soli;
            if (t.var == m)
              w.insert(w.end(), rep.begin(), rep.end());
            else
              w.push_back(t);
          }
          free_reduce(w, false);
          c.word = std::move(w);
          next.push_back(std::move(c));
        }
        next.push_back({Relation::Kind::membership, sol, label_of(m)});
        rels = std::move(next);
        progress = true;
        break;
      }
    }
  }

  // A middle variable surviving only inside memberships is projected out; one
  // still pinned by a product blocks the embedded composition.
  for (const auto& r : rels)
    if (r.kind == Relation::Kind::product)
      for (const auto& t : r.word)
        if (is_mid(t.var))
          fail(errc::not_eliminable,
               "middle variable not explicitly solvable (not a disproof)");
  std::vector<Relation> kept;
  for (auto& r : rels) {
    bool has_mid = false;
    for (const auto& t : r.word) has_mid |= is_mid(t.var);
    if (!has_mid) kept.push_back(std::move(r));
  }

  ConstraintSystem out;
  out.rank = c1.rank;
  out.left = c1.left;
  out.right = c2.right;
  out.relations = std::move(kept);
  out.simply_connected = c1.simply_connected && c2.simply_connected;
  out.disk_zero = c1.disk_zero && c2.disk_zero;
  return canonicalize(out);
}

GeneralizedCorrespondence sequence_of_word(const tangle::TangleWord& w) {
  auto levels = tangle::propagate_labels(w);
  GeneralizedCorrespondence seq;
  for (std::size_t i = 0; i < w.generators.size(); ++i)
    seq.factors.push_back(correspondence_of(w.generators[i], levels[i], w.group_rank));
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i + 1 < seq.factors.size(); ++i) {
      try {
        ConstraintSystem c = compose_embedded(seq.factors[i], seq.factors[i + 1]);
        seq.factors[i] = std::move(c);
        seq.factors.erase(seq.factors.begin() + i + 1);
        progress = true;
        break;
      } catch (const error&) {
      }
    }
    if (!progress) {
      for (std::size_t i = 0; i < seq.factors.size(); ++i) {
        const auto& f = seq.factors[i];
        if (f.left == f.right && f == diagonal_system(f.left, f.rank)) {
          seq.factors.erase(seq.factors.begin() + i);
          progress = true;
          break;
        }
      }
    }
  }
  return seq;
}

holovar::WordProblem word_problem_of(const ConstraintSystem& cs) {
  holovar::WordProblem wp;
  wp.rank = cs.rank;
  for (const auto& m : cs.left) wp.class_vars.push_back(m);
  for (const auto& m : cs.right) wp.class_vars.push_back(m);
  for (const auto& r : cs.relations) {
    std::vector<std::pair<int, int>> word;
    for (const auto& t : r.word) word.emplace_back(t.var, t.exp);
    if (r.kind == Relation::Kind::membership) {
      int aux = static_cast<int>(wp.class_vars.size());
      wp.class_vars.push_back(Marking{+1, *r.label});
      word.emplace_back(aux, -1);
    }
    wp.relations.push_back(std::move(word));
  }
  return wp;
}

holovar::WordProblem glued_problem(const ConstraintSystem& c1, const ConstraintSystem& c2) {
  if (c1.rank != c2.rank) fail(errc::rank_mismatch, "gluing across groups");
  if (!(c1.right == c2.left))
    fail(errc::boundary_mismatch, "middle boundary profiles differ");
  const int nl = static_cast<int>(c1.left.size());
  const int nr = static_cast<int>(c2.right.size());
  const int nl1 = nl, nl2 = static_cast<int>(c2.left.size());
  holovar::WordProblem wp;
  wp.rank = c1.rank;
  for (const auto& m : c1.left) wp.class_vars.push_back(m);
  for (const auto& m : c2.right) wp.class_vars.push_back(m);
  for (const auto& m : c1.right) wp.class_vars.push_back(m);
  auto from1 = [&](int v) { return v < nl1 ? v : nl + nr + (v - nl1); };
  auto from2 = [&](int v) { return v < nl2 ? nl + nr + v : nl + (v - nl2); };
  auto add = [&](const Relation& r, auto remap) {
    std::vector<std::pair<int, int>> word;
    for (const auto& t : r.word) word.emplace_back(remap(t.var), t.exp);
    if (r.kind == Relation::Kind::membership) {
      int aux = static_cast<int>(wp.class_vars.size());
      wp.class_vars.push_back(Marking{+1, *r.label});
      word.emplace_back(aux, -1);
    }
    wp.relations.push_back(std::move(word));
  };
  for (const auto& r : c1.relations) add(r, from1);
  for (const auto& r : c2.relations) add(r, from2);
  return wp;
}

namespace {

ConstraintSystem cups_shape(const std::vector<Marking>& right, int rank) {
  ConstraintSystem cs;
  cs.rank = rank;
  cs.right = right;
  for (int k = 0; k + 1 < static_cast<int>(right.size()); k += 2)
    cs.relations.push_back({Relation::Kind::product, {{k, +1}, {k + 1, +1}}, {}});
  return canonicalize(cs);
}

ConstraintSystem caps_shape(const std::vector<Marking>& left, int rank) {
  ConstraintSystem cs;
  cs.rank = rank;
  cs.left = left;
  for (int k = 0; k + 1 < static_cast<int>(left.size()); k += 2)
    cs.relations.push_back({Relation::Kind::product, {{k, +1}, {k + 1, +1}}, {}});
  return canonicalize(cs);
}

}  // namespace

InvariantReport invariant_pipeline(const tangle::TangleWord& w, int r) {
  if (w.group_rank != r) fail(errc::rank_mismatch, "word rank differs from requested rank");
  auto [in, out] = tangle::boundary_profile(w);
  if (!in.empty() || !out.empty())
    fail(errc::not_a_link, "invariant pipeline needs a closed word");

  // Spectator circles make the all-w1/2 profile admissible, following the
  // cups / braid block / caps shape.
  tangle::TangleWord s;
  s.group_rank = r;
  const int spect = r + 1;
  for (int k = 0; k < spect; ++k)
    s.generators.push_back(tangle::cup(1, alcove::half_vertex(r, 1)));
  for (auto g : w.generators) {
    g.pos += 2 * spect;
    s.generators.push_back(g);
  }
  for (int k = 0; k < spect; ++k) s.generators.push_back(tangle::cap(1));

  auto levels = tangle::propagate_labels(s);
  std::vector<ConstraintSystem> factors;
  for (std::size_t i = 0; i < s.generators.size(); ++i)
    factors.push_back(correspondence_of(s.generators[i], levels[i], r));

  // The cup side and the braid-block-plus-caps side are reduced separately;
  // the cut between them is where the pairing lives, so it is never composed.
  std::size_t cut = 0;
  while (cut < s.generators.size() &&
         s.generators[cut].kind == tangle::Generator::Kind::cup)
    ++cut;
  auto reduce = [](std::vector<ConstraintSystem> part) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i = 0; i + 1 < part.size(); ++i) {
        try {
          ConstraintSystem c = compose_embedded(part[i], part[i + 1]);
          part[i] = std::move(c);
          part.erase(part.begin() + i + 1);
          progress = true;
          break;
        } catch (const error&) {
        }
      }
    }
    return part;
  };
  auto cups_side = reduce({factors.begin(), factors.begin() + cut});
  auto caps_side = reduce({factors.begin() + cut, factors.end()});

  InvariantReport rep;
  rep.sequence.factors = cups_side;
  rep.sequence.factors.insert(rep.sequence.factors.end(), caps_side.begin(),
                              caps_side.end());
  for (const auto& f : rep.sequence.factors) rep.disk_zero = rep.disk_zero && f.disk_zero;
  if (cups_side.size() == 1 && caps_side.size() == 1) {
    const auto& a = cups_side[0];
    const auto& b = caps_side[0];
    if (a.left.empty() && b.right.empty() && a == cups_shape(a.right, r) &&
        b == caps_shape(b.left, r))
      rep.hf = betti::unknot_hf(r);
  }
  return rep;
}

}  // namespace tmt::corr
