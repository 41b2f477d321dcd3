#pragma once

#include "tmt/group.hpp"
#include "tmt/rational.hpp"
#include "tmt/tangle.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tmt::holovar {

using group::Mat;

/// Flat-bundle moduli problem on a genus-g surface with marked points carrying
/// conjugacy-class labels; the marking sign is the exponent of that factor in
/// the relator.
struct ModuliProblem {
  int rank = 2;
  int genus = 0;
  std::vector<tangle::Marking> labels;
};

/// Class-constrained holonomies are stored through the parametrization
/// b_j = q_j D_j q_j^* with D_j the diagonal class representative, so class
/// membership is exact by construction.  a holds the 2g handle holonomies.
struct HolonomyPoint {
  std::vector<Mat> a;
  std::vector<Mat> q;
};

struct SolverConfig {
  std::uint64_t seed = 0;
  int restarts = 1;
  int max_iter = 20000;
  double tol_residual = 1e-10;
  double rank_threshold = 1e-6;
  double cluster_tol = 1e-5;
  bool use_certificates = true;
};

std::vector<Mat> b_matrices(const HolonomyPoint& p, const ModuliProblem& pr);

/// Relator value prod_i [a_{2i-1}, a_{2i}] * prod_j b_j^{eps_j}.
Mat relator(const HolonomyPoint& p, const ModuliProblem& pr);

/// Frobenius norm of relator - identity.
double relator_residual(const HolonomyPoint& p, const ModuliProblem& pr);

struct SolveResult {
  HolonomyPoint point;
  double residual = 0;
  int restart = 0;
  std::vector<double> restart_residuals;  // best residual of every restart
};

/// Multistart Riemannian descent on the q parameters (genus 0 only).  Throws
/// ProvablyEmpty when the spherical-triangle-inequality certificate applies
/// and certificates are enabled, NoConvergence when no restart reaches
/// tol_residual.
SolveResult solve(const ModuliProblem& pr, const SolverConfig& cfg);

/// Nullity of the linearized constraint at p minus the class-parameter
/// redundancy and the conjugation-gauge orbit dimension.
int tangent_dimension(const HolonomyPoint& p, const ModuliProblem& pr,
                      double rank_threshold = 1e-6);

/// Real dimension of the joint commutant of all holonomies in su(r).
int commutant_dimension(const HolonomyPoint& p, const ModuliProblem& pr);

/// Independent solves clustered by conjugation-invariant fingerprints.
int count_gauge_classes(const ModuliProblem& pr, const SolverConfig& cfg);

/// Half-twist of markings i, i+1 (1-based); both must carry the same label
/// and orientation.  Preserves the relator exactly.
HolonomyPoint braid_act(const HolonomyPoint& p, const ModuliProblem& pr, int i);

/// arccos(Re tr(b_j b_k)/2)/(2 pi) in [0, 1/2]; SU(2) only.
double goldman(const HolonomyPoint& p, const ModuliProblem& pr, int j, int k);

/// Spherical triangle-inequality emptiness certificate for SU(2) with n equal
/// labels mu: fires iff n*|pi - 2*pi*mu| < pi, recorded in units of pi.
struct EmptyCertificate {
  Rational lhs;  // n*|1 - 2*mu|
  Rational rhs;  // 1
  std::string text;
};
std::optional<EmptyCertificate> empty_chamber_certificate(int n, const Rational& mu);

std::vector<double> point_invariants(const HolonomyPoint& p, const ModuliProblem& pr);

std::string to_json(const SolveResult& res, const ModuliProblem& pr, std::uint64_t seed);
std::pair<ModuliProblem, SolveResult> from_json(const std::string& text);

/// General constraint problem: class-constrained variables (listed first),
/// then free SU(r) variables; each relation is a word (var, +-1) required to
/// multiply to the identity.  Used for correspondence cross-checks and as the
/// common engine behind solve().
struct WordProblem {
  int rank = 2;
  std::vector<tangle::Marking> class_vars;
  int free_vars = 0;
  std::vector<std::vector<std::pair<int, int>>> relations;
};

struct WordSolveResult {
  std::vector<Mat> g;  // all variables, class vars first
  std::vector<Mat> q;  // parametrization of the class vars
  double residual = 0;
  int restart = 0;
};

WordSolveResult solve_words(const WordProblem& wp, const SolverConfig& cfg);

/// One independent solve per restart; only converged results are returned.
std::vector<WordSolveResult> sample_word_solutions(const WordProblem& wp,
                                                   const SolverConfig& cfg);

int tangent_dimension_words(const WordProblem& wp, const WordSolveResult& sol,
                            double rank_threshold = 1e-6);

}  // namespace tmt::holovar
