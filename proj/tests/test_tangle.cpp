#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmt/error.hpp"
#include "tmt/tangle.hpp"

#include <random>

using namespace tmt;
using namespace tmt::tangle;
using alcove::half_vertex;
using alcove::Label;

namespace {

// Random valid word: grow by repeatedly picking a random applicable generator.
TangleWord random_word(int r, int len, std::mt19937_64& rng) {
  TangleWord w;
  w.group_rank = r;
  int n0 = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < n0; ++i)
    w.incoming.push_back(Marking{+1, half_vertex(r, 1 + static_cast<int>(rng() % (r - 1)))});
  auto level = w.incoming;
  for (int step = 0; step < len; ++step) {
    std::vector<Generator> candidates;
    int n = static_cast<int>(level.size());
    for (int i = 1; i <= n + 1; ++i) {
      for (int k = 1; k < r; ++k) candidates.push_back(cup(i, half_vertex(r, k)));
      candidates.push_back(cup(i, alcove::vertex(r, 0)));
    }
    for (int i = 1; i + 1 <= n; ++i) {
      candidates.push_back(braid(i, +1));
      candidates.push_back(braid(i, -1));
      candidates.push_back(cap(i));
      candidates.push_back(merge(i));
    }
    for (int i = 1; i <= n; ++i) candidates.push_back(split(i));
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (const auto& g : candidates) {
      try {
        auto next = apply_generator(level, g, r);
        w.generators.push_back(g);
        level = next;
        break;
      } catch (const error&) {
      }
    }
  }
  return w;
}

}  // namespace

TEST_CASE("parse basic word") {
  auto w = parse("group SU(2)\nmarks: +1/4 +1/4 +1/4 +1/4 +1/4\nword: cup 2 w1/2 ; cap 2\n");
  CHECK(w.group_rank == 2);
  CHECK(w.incoming.size() == 5);
  REQUIRE(w.generators.size() == 2);
  CHECK(w.generators[0] == cup(2, half_vertex(2, 1)));
  CHECK(w.generators[1] == cap(2));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse("group SU(3)\nmarks: +w1/2 +w1/2 +w1/2\nword: cap 9\n"), error);
  CHECK_THROWS_AS(parse("group SU(2)\nmarks: +zzz\nword:\n"), error);
  CHECK_THROWS_AS(parse("marks: +1/4\nword:\n"), error);
  CHECK_THROWS_AS(parse("group SU(2)\nmarks: +1/4\nbogus line\nword:\n"), error);
  // Comments and blank lines are fine.
  CHECK_NOTHROW(parse("# a comment\ngroup SU(2)\n\nmarks: +1/4 -1/4\nword: cap 1\n"));
}

TEST_CASE("serialize round trip") {
  TangleWord empty;
  empty.group_rank = 2;
  CHECK(serialize(empty) == "group SU(2)\nmarks:\nword:\n");
  CHECK(parse(serialize(empty)) == empty);

  TangleWord w;
  w.group_rank = 2;
  w.incoming = {Marking{+1, half_vertex(2, 1)}, Marking{+1, half_vertex(2, 1)}};
  w.generators = {braid(1, +1)};
  CHECK(serialize(w).find("braid 1 +") != std::string::npos);

  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    int r = 2 + static_cast<int>(rng() % 3);
    TangleWord v = random_word(r, static_cast<int>(rng() % 6), rng);
    CHECK(parse(serialize(v)) == v);
  }
}

TEST_CASE("boundary profiles") {
  TangleWord id;
  id.group_rank = 2;
  id.incoming = {Marking{+1, half_vertex(2, 1)}};
  auto [in0, out0] = boundary_profile(id);
  CHECK(in0 == out0);

  TangleWord cupw;
  cupw.group_rank = 2;
  cupw.generators = {cup(1, half_vertex(2, 1))};
  auto [in1, out1] = boundary_profile(cupw);
  CHECK(in1.empty());
  REQUIRE(out1.size() == 2);
  CHECK(out1[0] == Marking{+1, half_vertex(2, 1)});
  CHECK(out1[1] == Marking{-1, half_vertex(2, 1)});  // * fixes SU(2) labels

  TangleWord mw;
  mw.group_rank = 3;
  mw.incoming = {Marking{+1, half_vertex(3, 1)}, Marking{+1, half_vertex(3, 1)}};
  mw.generators = {merge(1)};
  auto [in2, out2] = boundary_profile(mw);
  REQUIRE(out2.size() == 1);
  CHECK(out2[0] == Marking{+1, half_vertex(3, 2)});
}

TEST_CASE("cup creates involuted labels, cap checks them") {
  TangleWord w;
  w.group_rank = 3;
  w.generators = {cup(1, half_vertex(3, 1))};
  auto out = boundary_profile(w).second;
  CHECK(out[0].label == half_vertex(3, 1));
  CHECK(out[1].label == half_vertex(3, 2));
  CHECK(out[1].sign == -1);

  // Mismatched orientations are rejected.
  TangleWord bad;
  bad.group_rank = 2;
  bad.incoming = {Marking{+1, half_vertex(2, 1)}, Marking{+1, half_vertex(2, 1)}};
  bad.generators = {cap(1)};
  CHECK_THROWS_AS(propagate_labels(bad), error);
}

TEST_CASE("strand count formula at every prefix") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    int r = 2 + static_cast<int>(rng() % 3);
    TangleWord w = random_word(r, static_cast<int>(rng() % 8), rng);
    auto levels = propagate_labels(w);
    int count = static_cast<int>(w.incoming.size());
    for (size_t k = 0; k < w.generators.size(); ++k) {
      count += w.generators[k].delta();
      CHECK(static_cast<int>(levels[k + 1].size()) == count);
    }
  }
}

TEST_CASE("concatenation requires matching boundaries") {
  TangleWord a;
  a.group_rank = 2;
  a.generators = {cup(1, half_vertex(2, 1))};
  TangleWord b;
  b.group_rank = 2;
  b.incoming = boundary_profile(a).second;
  b.generators = {cap(1)};
  auto ab = concat(a, b);
  CHECK(boundary_profile(ab).second.empty());
  TangleWord c;
  c.group_rank = 2;
  c.incoming = {Marking{+1, half_vertex(2, 1)}};
  CHECK_THROWS_AS(concat(a, c), error);
}

TEST_CASE("admissible in implies admissible out") {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    int r = 2 + static_cast<int>(rng() % 2);
    TangleWord w = random_word(r, static_cast<int>(rng() % 8), rng);
    std::vector<Label> in_labels, out_labels;
    auto [in, out] = boundary_profile(w);
    for (const auto& m : in) in_labels.push_back(m.label);
    for (const auto& m : out) out_labels.push_back(m.label);
    auto rin = alcove::is_admissible(in_labels, r);
    if (!rin.ok) continue;
    ++checked;
    CHECK(alcove::is_admissible(out_labels, r).ok);
  }
  CHECK(checked > 20);  // the generator must actually exercise the property
}

TEST_CASE("braid requires equal strand labels") {
  TangleWord w;
  w.group_rank = 3;
  w.incoming = {Marking{+1, half_vertex(3, 1)}, Marking{+1, half_vertex(3, 2)}};
  w.generators = {braid(1, +1)};
  CHECK_THROWS_AS(propagate_labels(w), error);

  // (+,mu) braids with (-,*mu): same strand label after orientation flip.
  TangleWord ok;
  ok.group_rank = 3;
  ok.incoming = {Marking{+1, half_vertex(3, 1)}, Marking{-1, half_vertex(3, 2)}};
  ok.generators = {braid(1, +1)};
  CHECK_NOTHROW(propagate_labels(ok));
}
