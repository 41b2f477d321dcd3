#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmt/error.hpp"
#include "tmt/holovar.hpp"

#include <cmath>
#include <complex>

using namespace tmt;
using namespace tmt::holovar;
using alcove::half_vertex;
using alcove::involution;
using group::Mat;
using tangle::Marking;
using cplx = std::complex<double>;

namespace {

ModuliProblem uniform_problem(int r, int n, const alcove::Label& l) {
  ModuliProblem pr;
  pr.rank = r;
  for (int i = 0; i < n; ++i) pr.labels.push_back(Marking{+1, l});
  return pr;
}

ModuliProblem m_n(int n, const Rational& mu) {
  alcove::Label l(2, {mu, -mu});
  return uniform_problem(2, n, l);
}

// q with q D q^* = i*sigma_x resp. i*sigma_y, D = diag(i,-i).
Mat q_sigma_x() {
  double s = 1.0 / std::sqrt(2.0);
  Mat q(2, 2);
  q << cplx(0, s), cplx(0, s), cplx(0, s), cplx(0, -s);
  return q;
}

Mat q_sigma_y() {
  double s = 1.0 / std::sqrt(2.0);
  Mat q(2, 2);
  q << cplx(s, 0), cplx(s, 0), cplx(0, s), cplx(0, -s);
  return q;
}

HolonomyPoint pauli_triple() {
  HolonomyPoint p;
  p.q = {q_sigma_x(), q_sigma_y(), Mat::Identity(2, 2)};
  return p;
}

}  // namespace

TEST_CASE("class representatives") {
  auto d = group::class_rep(alcove::Label(2, {Rational(1, 4), Rational(-1, 4)}));
  CHECK(std::abs(d(0, 0) - cplx(0, 1)) < 1e-14);
  CHECK(std::abs(d(1, 1) - cplx(0, -1)) < 1e-14);
  CHECK(std::abs(d.trace()) < 1e-14);
  CHECK(group::is_special_unitary(d));

  auto id = group::class_rep(alcove::vertex(3, 0));
  CHECK((id - Mat::Identity(3, 3)).norm() < 1e-14);

  // Sorted eigenangles recover the label.
  auto l = half_vertex(3, 1);
  CHECK(group::class_distance(group::class_rep(l), l) < 1e-12);
}

TEST_CASE("haar samples are special unitary") {
  std::mt19937_64 rng(11);
  for (int r : {2, 3, 4})
    for (int i = 0; i < 50; ++i) CHECK(group::is_special_unitary(group::haar_su(r, rng)));
}

TEST_CASE("relator matches direct multiplication") {
  auto pr = m_n(3, Rational(1, 4));
  auto p = pauli_triple();
  auto b = b_matrices(p, pr);
  // b should be (i sx, i sy, i sz) and multiply to the identity.
  Mat isx(2, 2), isy(2, 2), isz(2, 2);
  isx << 0, cplx(0, 1), cplx(0, 1), 0;
  isy << 0, 1, -1, 0;
  isz << cplx(0, 1), 0, 0, cplx(0, -1);
  CHECK((b[0] - isx).norm() < 1e-12);
  CHECK((b[1] - isy).norm() < 1e-12);
  CHECK((b[2] - isz).norm() < 1e-12);
  CHECK((relator(p, pr) - b[0] * b[1] * b[2]).norm() < 1e-12);
  CHECK(relator_residual(p, pr) < 1e-12);

  // All labels zero, identity point.
  auto pr0 = uniform_problem(2, 3, alcove::vertex(2, 0));
  HolonomyPoint p0;
  p0.q = {Mat::Identity(2, 2), Mat::Identity(2, 2), Mat::Identity(2, 2)};
  CHECK(relator_residual(p0, pr0) < 1e-14);

  // Random points: residual nonnegative and equal to the direct product.
  std::mt19937_64 rng(3);
  HolonomyPoint pr3;
  pr3.q = {group::haar_su(2, rng), group::haar_su(2, rng), group::haar_su(2, rng)};
  auto bb = b_matrices(pr3, pr);
  CHECK(relator_residual(pr3, pr) ==
        doctest::Approx((bb[0] * bb[1] * bb[2] - Mat::Identity(2, 2)).norm()));
}

TEST_CASE("rigid triple: solve, dimension, classes") {
  auto pr = m_n(3, Rational(1, 4));
  SolverConfig cfg;
  cfg.seed = 5;
  cfg.restarts = 4;
  auto res = solve(pr, cfg);
  CHECK(res.residual < 1e-10);
  // Gauge-equivalent to the Pauli triple: conjugacy invariants match.
  auto inv = point_invariants(res.point, pr);
  auto ref = point_invariants(pauli_triple(), pr);
  for (std::size_t i = 0; i < inv.size(); ++i) CHECK(inv[i] == doctest::Approx(ref[i]).epsilon(1e-6));

  CHECK(tangent_dimension(res.point, pr) == 0);
  CHECK(commutant_dimension(res.point, pr) == 0);
  cfg.restarts = 6;
  CHECK(count_gauge_classes(pr, cfg) == 1);
}

TEST_CASE("five quarter labels: dimension four") {
  auto pr = m_n(5, Rational(1, 4));
  SolverConfig cfg;
  cfg.seed = 1;
  cfg.restarts = 5;
  auto res = solve(pr, cfg);
  CHECK(res.residual < 1e-10);
  for (double r : res.restart_residuals) CHECK(r < 1e-8);
  CHECK(tangent_dimension(res.point, pr) == 4);
  CHECK(commutant_dimension(res.point, pr) == 0);
  // Eigenangle preservation at the solved point.
  auto b = b_matrices(res.point, pr);
  for (const auto& m : b) CHECK(group::class_distance(m, pr.labels[0].label) < 1e-8);
}

TEST_CASE("gauge invariance of fingerprints") {
  auto pr = m_n(5, Rational(1, 4));
  SolverConfig cfg;
  cfg.seed = 9;
  auto res = solve(pr, cfg);
  std::mt19937_64 rng(17);
  Mat u = group::haar_su(2, rng);
  HolonomyPoint conj = res.point;
  for (auto& q : conj.q) q = u * q;
  auto a = point_invariants(res.point, pr);
  auto b = point_invariants(conj, pr);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);
}

TEST_CASE("lemma-point labels in SU(3)") {
  ModuliProblem pr;
  pr.rank = 3;
  pr.labels = {Marking{+1, half_vertex(3, 1)}, Marking{+1, half_vertex(3, 1)},
               Marking{+1, involution(half_vertex(3, 2))}};
  SolverConfig cfg;
  cfg.seed = 2;
  cfg.restarts = 8;
  CHECK(count_gauge_classes(pr, cfg) == 1);
  auto res = solve(pr, cfg);
  CHECK(tangent_dimension(res.point, pr) == 0);
}

TEST_CASE("emptiness certificate") {
  CHECK(empty_chamber_certificate(5, Rational(9, 20)).has_value());
  CHECK(empty_chamber_certificate(5, Rational(9, 20))->lhs == Rational(1, 2));
  CHECK(!empty_chamber_certificate(5, Rational(1, 4)).has_value());
  for (int n : {1, 2, 3, 7}) CHECK(empty_chamber_certificate(n, Rational(1, 2)).has_value());

  auto pr = m_n(5, Rational(9, 20));
  SolverConfig cfg;
  cfg.seed = 0;
  cfg.restarts = 3;
  CHECK_THROWS_AS(solve(pr, cfg), error);
  cfg.use_certificates = false;
  cfg.max_iter = 3000;
  try {
    solve(pr, cfg);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::no_convergence);
  }
}

TEST_CASE("braid action") {
  auto pr = m_n(5, Rational(1, 4));
  SolverConfig cfg;
  cfg.seed = 21;
  auto res = solve(pr, cfg);
  std::mt19937_64 rng(4);
  HolonomyPoint p = res.point;
  for (int step = 0; step < 100; ++step) {
    int i = 1 + static_cast<int>(rng() % 4);
    p = braid_act(p, pr, i);
    CHECK(relator_residual(p, pr) < 1e-9);
  }

  // Double application is the full twist.
  auto b = b_matrices(res.point, pr);
  auto twice = braid_act(braid_act(res.point, pr, 2), pr, 2);
  auto bt = b_matrices(twice, pr);
  Mat c = b[2].adjoint() * b[1] * b[2];
  CHECK((bt[1] - c).norm() < 1e-10);
  CHECK((bt[2] - c.adjoint() * b[2] * c).norm() < 1e-10);

  // Equal adjacent holonomies: the point is fixed.
  HolonomyPoint eq;
  eq.q = res.point.q;
  eq.q[1] = eq.q[0];
  auto be = b_matrices(eq, pr);
  auto fixed = b_matrices(braid_act(eq, pr, 1), pr);
  for (int j = 0; j < 5; ++j) CHECK((fixed[j] - be[j]).norm() < 1e-12);

  ModuliProblem bad = pr;
  bad.labels[1].sign = -1;
  CHECK_THROWS_AS(braid_act(res.point, bad, 1), error);
}

TEST_CASE("goldman values") {
  auto pr = m_n(2, Rational(1, 4));
  std::mt19937_64 rng(8);
  Mat q1 = group::haar_su(2, rng);
  Mat perm(2, 2);
  perm << 0, 1, -1, 0;
  HolonomyPoint p;
  p.q = {q1, q1 * perm};  // b2 = b1^{-1}
  CHECK(goldman(p, pr, 1, 2) == doctest::Approx(0.0).epsilon(1e-12));
  HolonomyPoint m;
  m.q = {q1, q1};  // b1 b2 = -1
  CHECK(goldman(m, pr, 1, 2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(goldman(p, uniform_problem(3, 2, half_vertex(3, 1)), 1, 2), error);

  // Range claim on M_5(0.15): adjacent values stay below 2*mu.
  auto pr5 = m_n(5, Rational(3, 20));
  SolverConfig cfg;
  cfg.seed = 33;
  cfg.restarts = 3;
  auto res = solve(pr5, cfg);
  HolonomyPoint walk = res.point;
  std::mt19937_64 wrng(12);
  for (int s = 0; s < 200; ++s) {
    walk = braid_act(walk, pr5, 1 + static_cast<int>(wrng() % 4));
    int j = 1 + static_cast<int>(wrng() % 4);
    double h = goldman(walk, pr5, j, j + 1);
    CHECK(h >= 0.0);
    CHECK(h <= 0.30 + 1e-8);
  }
}

TEST_CASE("json round trip and determinism") {
  auto pr = m_n(3, Rational(1, 4));
  SolverConfig cfg;
  cfg.seed = 7;
  cfg.restarts = 2;
  auto res = solve(pr, cfg);
  auto text = to_json(res, pr, cfg.seed);
  auto [pr2, res2] = from_json(text);
  CHECK(pr2.rank == 2);
  CHECK(pr2.labels.size() == 3);
  CHECK(pr2.labels == pr.labels);
  CHECK(relator_residual(res2.point, pr2) == doctest::Approx(res.residual).epsilon(1e-9));

  auto res_again = solve(pr, cfg);
  CHECK(to_json(res_again, pr, cfg.seed) == text);
}

TEST_CASE("product spectrum law") {
  for (int r : {2, 3}) {
    auto l = half_vertex(r, 1);
    Mat d = group::class_rep(l);
    std::mt19937_64 rng(100 + r);
    for (int trial = 0; trial < 1000; ++trial) {
      Mat u1 = group::haar_su(r, rng);
      Mat u2 = group::haar_su(r, rng);
      Mat prod = (u1 * d * u1.adjoint()) * (u2 * d * u2.adjoint());
      auto c = group::alcove_coordinates(prod);
      // Candidate family: omega_1 + eps * alpha_1^vee, eps in [-1/2, 0].
      double eps = -1.0 / r - c[1];
      CHECK(eps >= -0.5 - 1e-9);
      CHECK(eps <= 1e-9);
      CHECK(std::abs(c[0] - (1.0 - 1.0 / r + eps)) < 1e-9);
      for (int k = 2; k < r; ++k) CHECK(std::abs(c[k] + 1.0 / r) < 1e-9);
    }
  }
}

TEST_CASE("word problems: cup-extended pentagon") {
  // b1..b5 in C_{1/4}, cup pair c c' with c c' = 1, closure c c' b1..b5 = 1.
  WordProblem wp;
  wp.rank = 2;
  alcove::Label l(2, {Rational(1, 4), Rational(-1, 4)});
  for (int i = 0; i < 7; ++i) wp.class_vars.push_back(Marking{+1, l});
  wp.relations.push_back({{5, +1}, {6, +1}});
  wp.relations.push_back({{5, +1}, {6, +1}, {0, +1}, {1, +1}, {2, +1}, {3, +1}, {4, +1}});
  SolverConfig cfg;
  cfg.seed = 3;
  cfg.restarts = 3;
  auto sols = sample_word_solutions(wp, cfg);
  REQUIRE(!sols.empty());
  for (const auto& s : sols) {
    CHECK(s.residual < 1e-10);
    // The b-part solves the plain pentagon problem.
    Mat prod = Mat::Identity(2, 2);
    for (int i = 0; i < 5; ++i) prod *= s.g[i];
    CHECK((prod - Mat::Identity(2, 2)).norm() < 1e-9);
    CHECK((s.g[5] * s.g[6] - Mat::Identity(2, 2)).norm() < 1e-9);
  }
}
