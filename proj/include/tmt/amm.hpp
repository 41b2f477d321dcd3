#pragma once

#include "tmt/holovar.hpp"

#include <random>
#include <vector>

namespace tmt::amm {

using group::Mat;
using holovar::HolonomyPoint;
using holovar::ModuliProblem;

/// Tangent vector at a holonomy point: one ambient matrix per handle holonomy
/// a_i (any direction in the group) and per marking holonomy b_j (directions
/// tangent to the conjugacy class).
struct TangentVector {
  HolonomyPoint base;
  std::vector<Mat> a;
  std::vector<Mat> b;
};

/// -Re tr(x y), the invariant inner product used throughout.
double pairing(const Mat& x, const Mat& y);

/// Checks the tangency invariants: u^{-1} v anti-Hermitian traceless for every
/// component, class components within the class tangent space.
bool is_tangent(const TangentVector& v, const ModuliProblem& pr, double tol = 1e-10);

/// Least-squares solve of [x, g] = v for x in su(r).  The solution is unique
/// up to the centralizer of g, which every caller here quotients out.
Mat commutator_solve(const Mat& g, const Mat& v);

/// Two-form of the conjugacy class of mu on generating vector fields at g:
/// <Ad(g^{-1}) eta - Ad(g) eta, xi>.
double omega_conjugacy(const alcove::Label& mu, const Mat& g, const Mat& xi,
                       const Mat& eta);

/// Fused two-form of the moduli problem, evaluated by the recursive fusion
/// formula.  The splitting of the factor sequence does not affect the value;
/// the flag switches between leftmost- and rightmost-single-factor splitting
/// so independence can be checked.
double omega_total(const ModuliProblem& pr, const HolonomyPoint& p,
                   const TangentVector& v, const TangentVector& w,
                   bool leftmost_splitting = true);

/// Tangent vector of the conjugation action generated by xi in su(r).
TangentVector gauge_direction(const ModuliProblem& pr, const HolonomyPoint& p,
                              const Mat& xi);

/// Random valid tangent vector at p (class components generated as [x, b_j]).
TangentVector random_tangent(const ModuliProblem& pr, const HolonomyPoint& p,
                             std::mt19937_64& rng);

struct KernelReport {
  int level_tangent_dim = 0;  // dim of the tangent space to the identity level set
  int gauge_dim = 0;          // dim of the conjugation-gauge orbit
  int form_rank = 0;          // numeric rank of the fused form on the level set
  double gauge_pairing = 0;   // max |omega(gauge, level tangent)| observed
};

/// Numeric kernel analysis of the fused form on the identity level set at an
/// irreducible solution.
KernelReport reduced_kernel_report(const ModuliProblem& pr, const HolonomyPoint& p,
                                   double rank_threshold = 1e-6);

}  // namespace tmt::amm
