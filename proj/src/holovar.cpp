#include "tmt/holovar.hpp"

#include "tmt/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tmt::holovar {

using group::class_rep;
using group::exp_su;
using group::haar_su;
using group::proj_su;
using group::su_basis;
using cplx = std::complex<double>;
using Word = std::vector<std::pair<int, int>>;

namespace {

WordProblem problem_words(const ModuliProblem& pr) {
  if (pr.rank < 2) fail(errc::invalid_rank, "rank must be at least 2");
  WordProblem wp;
  wp.rank = pr.rank;
  wp.class_vars = pr.labels;
  wp.free_vars = 2 * pr.genus;
  Word rel;
  const int nc = static_cast<int>(pr.labels.size());
  for (int h = 0; h < pr.genus; ++h) {
    int a1 = nc + 2 * h, a2 = nc + 2 * h + 1;
    rel.insert(rel.end(), {{a1, +1}, {a2, +1}, {a1, -1}, {a2, -1}});
  }
  for (int j = 0; j < nc; ++j) rel.emplace_back(j, pr.labels[j].sign);
  wp.relations.push_back(std::move(rel));
  return wp;
}

struct Engine {
  int r;
  int nc;
  int nfree;
  std::vector<Mat> d;                     // class reps
  const std::vector<Word>* rels;

  std::vector<Mat> q;                     // unitary parameters, nc entries
  std::vector<Mat> a;                     // free unitaries, nfree entries

  int nvars() const { return nc + nfree; }

  Mat var(int v) const { return v < nc ? Mat(q[v] * d[v] * q[v].adjoint()) : a[v - nc]; }

  std::vector<Mat> var_values() const {
    std::vector<Mat> g(nvars());
    for (int v = 0; v < nvars(); ++v) g[v] = var(v);
    return g;
  }

  static Mat word_value(const std::vector<Mat>& g, const Word& w, int r) {
    Mat m = Mat::Identity(r, r);
    for (auto [v, e] : w) m *= e > 0 ? g[v] : Mat(g[v].adjoint());
    return m;
  }

  double objective() const {
    auto g = var_values();
    double f = 0;
    for (const Word& w : *rels)
      f += 0.5 * (word_value(g, w, r) - Mat::Identity(r, r)).squaredNorm();
    return f;
  }

  double residual() const {
    auto g = var_values();
    double s = 0;
    for (const Word& w : *rels)
      s += (word_value(g, w, r) - Mat::Identity(r, r)).squaredNorm();
    return std::sqrt(s);
  }

  // Riemannian gradient per variable under <X,Y> = Re tr(X^* Y).
  std::vector<Mat> gradient() const {
    auto g = var_values();
    std::vector<Mat> c(nvars(), Mat::Zero(r, r));
    for (const Word& w : *rels) {
      const int m = static_cast<int>(w.size());
      std::vector<Mat> factors(m), prefix(m + 1), suffix(m + 1);
      for (int k = 0; k < m; ++k)
        factors[k] = w[k].second > 0 ? g[w[k].first] : Mat(g[w[k].first].adjoint());
      prefix[0] = Mat::Identity(r, r);
      for (int k = 0; k < m; ++k) prefix[k + 1] = prefix[k] * factors[k];
      suffix[m] = Mat::Identity(r, r);
      for (int k = m; k-- > 0;) suffix[k] = factors[k] * suffix[k + 1];
      Mat e = prefix[m] - Mat::Identity(r, r);
      for (int k = 0; k < m; ++k) {
        auto [v, ex] = w[k];
        Mat n = suffix[k + 1] * e.adjoint() * prefix[k];
        if (v < nc) {
          c[v] += factors[k] * n - n * factors[k];
        } else if (ex > 0) {
          c[v] += g[v] * n;
        } else {
          c[v] -= n * factors[k];
        }
      }
    }
    std::vector<Mat> grad(nvars());
    for (int v = 0; v < nvars(); ++v) grad[v] = proj_su(c[v].adjoint());
    return grad;
  }

  void step(const std::vector<Mat>& grad, double t) {
    for (int v = 0; v < nvars(); ++v) {
      Mat u = exp_su(Mat(-t * grad[v]));
      if (v < nc)
        q[v] = u * q[v];
      else
        a[v - nc] = u * a[v - nc];
    }
  }

  // Backtracking descent; returns final residual.
  double descend(int max_iter, double tol) {
    double t_prev = 1.0;
    for (int it = 0; it < max_iter; ++it) {
      double res = residual();
      if (res <= tol) return res;
      double f0 = 0.5 * res * res;
      auto grad = gradient();
      double slope = 0;
      for (const Mat& gm : grad) slope += gm.squaredNorm();
      if (slope < 1e-30) return res;
      double t = std::min(1.0, 2.0 * t_prev);
      Engine trial = *this;
      bool accepted = false;
      while (t > 1e-18) {
        trial.q = q;
        trial.a = a;
        trial.step(grad, t);
        if (trial.objective() <= f0 - 1e-4 * t * slope) {
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) return res;
      q = trial.q;
      a = trial.a;
      t_prev = t;
    }
    return residual();
  }
};

Engine make_engine(const WordProblem& wp) {
  Engine en;
  en.r = wp.rank;
  en.nc = static_cast<int>(wp.class_vars.size());
  en.nfree = wp.free_vars;
  en.rels = &wp.relations;
  for (const auto& m : wp.class_vars) {
    if (m.label.rank() != wp.rank) fail(errc::rank_mismatch, "label rank");
    en.d.push_back(class_rep(m.label));
  }
  for (const Word& w : wp.relations)
    for (auto [v, e] : w) {
      if (v < 0 || v >= en.nvars()) fail(errc::invalid_index, "relation references unknown variable");
      if (e != 1 && e != -1) fail(errc::invalid_word, "exponents must be +-1");
    }
  return en;
}

void randomize(Engine& en, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  en.q.clear();
  en.a.clear();
  for (int j = 0; j < en.nc; ++j) en.q.push_back(haar_su(en.r, rng));
  for (int j = 0; j < en.nfree; ++j) en.a.push_back(haar_su(en.r, rng));
}

}  // namespace

std::vector<Mat> b_matrices(const HolonomyPoint& p, const ModuliProblem& pr) {
  if (p.q.size() != pr.labels.size()) fail(errc::shape_error, "q count != label count");
  std::vector<Mat> b;
  for (std::size_t j = 0; j < p.q.size(); ++j)
    b.push_back(p.q[j] * class_rep(pr.labels[j].label) * p.q[j].adjoint());
  return b;
}

Mat relator(const HolonomyPoint& p, const ModuliProblem& pr) {
  if (static_cast<int>(p.a.size()) != 2 * pr.genus) fail(errc::shape_error, "a count != 2g");
  WordProblem wp = problem_words(pr);
  Engine en = make_engine(wp);
  en.q = p.q;
  en.a = p.a;
  return Engine::word_value(en.var_values(), wp.relations[0], pr.rank);
}

double relator_residual(const HolonomyPoint& p, const ModuliProblem& pr) {
  return (relator(p, pr) - Mat::Identity(pr.rank, pr.rank)).norm();
}

WordSolveResult solve_words(const WordProblem& wp, const SolverConfig& cfg) {
  if (cfg.restarts < 1) fail(errc::invalid_index, "restarts must be >= 1");
  Engine en = make_engine(wp);
  WordSolveResult best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int rs = 0; rs < cfg.restarts; ++rs) {
    randomize(en, cfg.seed + static_cast<std::uint64_t>(rs));
    double res = en.descend(cfg.max_iter, cfg.tol_residual);
    if (res < best.residual) {
      best.residual = res;
      best.restart = rs;
      best.g = en.var_values();
      best.q = en.q;
    }
  }
  return best;
}

std::vector<WordSolveResult> sample_word_solutions(const WordProblem& wp,
                                                   const SolverConfig& cfg) {
  Engine en = make_engine(wp);
  std::vector<WordSolveResult> out;
  for (int rs = 0; rs < cfg.restarts; ++rs) {
    randomize(en, cfg.seed + static_cast<std::uint64_t>(rs));
    double res = en.descend(cfg.max_iter, cfg.tol_residual);
    if (res <= cfg.tol_residual) {
      WordSolveResult r;
      r.residual = res;
      r.restart = rs;
      r.g = en.var_values();
      r.q = en.q;
      out.push_back(std::move(r));
    }
  }
  return out;
}

SolveResult solve(const ModuliProblem& pr, const SolverConfig& cfg) {
  if (pr.genus != 0) fail(errc::unsupported, "only genus 0 is solvable");
  if (pr.labels.empty()) fail(errc::shape_error, "no labels");
  if (cfg.restarts < 1) fail(errc::invalid_index, "restarts must be >= 1");
  if (cfg.use_certificates && pr.rank == 2) {
    bool uniform = true;
    for (const auto& m : pr.labels)
      if (!(m.label == pr.labels[0].label)) uniform = false;
    if (uniform) {
      Rational mu = pr.labels[0].label.entries()[0];
      if (auto cert =
              empty_chamber_certificate(static_cast<int>(pr.labels.size()), mu))
        fail(errc::provably_empty, cert->text);
    }
  }

  WordProblem wp = problem_words(pr);
  Engine en = make_engine(wp);
  SolveResult result;
  result.residual = std::numeric_limits<double>::infinity();
  for (int rs = 0; rs < cfg.restarts; ++rs) {
    randomize(en, cfg.seed + static_cast<std::uint64_t>(rs));
    double res = en.descend(cfg.max_iter, cfg.tol_residual);
    result.restart_residuals.push_back(res);
    if (res < result.residual) {
      result.residual = res;
      result.restart = rs;
      result.point.q = en.q;
      result.point.a = en.a;
    }
  }
  if (result.residual > cfg.tol_residual)
    fail(errc::no_convergence,
         "no restart converged; best residual " + std::to_string(result.residual));
  return result;
}

namespace {

int class_parameter_redundancy(const WordProblem& wp) {
  int total = 0;
  for (const auto& m : wp.class_vars)
    total += group::commutant_dimension({class_rep(m.label)});
  return total;
}

}  // namespace

int tangent_dimension_words(const WordProblem& wp, const WordSolveResult& sol,
                            double rank_threshold) {
  const int r = wp.rank;
  const int nc = static_cast<int>(wp.class_vars.size());
  const int nvars = nc + wp.free_vars;
  if (static_cast<int>(sol.g.size()) != nvars) fail(errc::shape_error, "solution size");
  auto basis = su_basis(r);
  const int bdim = static_cast<int>(basis.size());
  const int rows_per = 2 * r * r;
  Eigen::MatrixXd jac(rows_per * static_cast<int>(wp.relations.size()), nvars * bdim);
  jac.setZero();

  for (std::size_t ri = 0; ri < wp.relations.size(); ++ri) {
    const Word& w = wp.relations[ri];
    const int m = static_cast<int>(w.size());
    std::vector<Mat> factors(m), prefix(m + 1), suffix(m + 1);
    for (int k = 0; k < m; ++k)
      factors[k] = w[k].second > 0 ? sol.g[w[k].first] : Mat(sol.g[w[k].first].adjoint());
    prefix[0] = Mat::Identity(r, r);
    for (int k = 0; k < m; ++k) prefix[k + 1] = prefix[k] * factors[k];
    suffix[m] = Mat::Identity(r, r);
    for (int k = m; k-- > 0;) suffix[k] = factors[k] * suffix[k + 1];
    for (int k = 0; k < m; ++k) {
      auto [v, ex] = w[k];
      for (int bi = 0; bi < bdim; ++bi) {
        const Mat& x = basis[bi];
        Mat df;
        if (v < nc) {
          df = x * factors[k] - factors[k] * x;
        } else if (ex > 0) {
          df = x * factors[k];
        } else {
          df = -(factors[k] * x);
        }
        Mat dw = prefix[k] * df * suffix[k + 1];
        int col = v * bdim + bi;
        int row = static_cast<int>(ri) * rows_per;
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) {
            jac(row + 2 * (i * r + j), col) += dw(i, j).real();
            jac(row + 2 * (i * r + j) + 1, col) += dw(i, j).imag();
          }
      }
    }
  }
  int nullity = nvars * bdim - group::numeric_rank(jac, rank_threshold);
  int gauge = bdim - group::commutant_dimension(sol.g);
  return nullity - class_parameter_redundancy(wp) - gauge;
}

int tangent_dimension(const HolonomyPoint& p, const ModuliProblem& pr, double rank_threshold) {
  if (relator_residual(p, pr) > 1e-6) fail(errc::not_on_variety, "point is not flat");
  WordProblem wp = problem_words(pr);
  WordSolveResult sol;
  sol.q = p.q;
  Engine en = make_engine(wp);
  en.q = p.q;
  en.a = p.a;
  sol.g = en.var_values();
  return tangent_dimension_words(wp, sol, rank_threshold);
}

int commutant_dimension(const HolonomyPoint& p, const ModuliProblem& pr) {
  auto g = b_matrices(p, pr);
  g.insert(g.end(), p.a.begin(), p.a.end());
  return group::commutant_dimension(g);
}

std::vector<double> point_invariants(const HolonomyPoint& p, const ModuliProblem& pr) {
  auto g = b_matrices(p, pr);
  g.insert(g.end(), p.a.begin(), p.a.end());
  return group::invariant_vector(g);
}

int count_gauge_classes(const ModuliProblem& pr, const SolverConfig& cfg) {
  if (pr.genus != 0) fail(errc::unsupported, "only genus 0");
  WordProblem wp = problem_words(pr);
  auto sols = sample_word_solutions(wp, cfg);
  std::vector<std::vector<double>> clusters;
  for (const auto& s : sols) {
    auto inv = group::invariant_vector(s.g);
    bool fresh = true;
    for (const auto& c : clusters) {
      double dist = 0;
      for (std::size_t i = 0; i < inv.size(); ++i)
        dist = std::max(dist, std::abs(inv[i] - c[i]));
      if (dist < cfg.cluster_tol) fresh = false;
    }
    if (fresh) clusters.push_back(std::move(inv));
  }
  return static_cast<int>(clusters.size());
}

HolonomyPoint braid_act(const HolonomyPoint& p, const ModuliProblem& pr, int i) {
  const int n = static_cast<int>(pr.labels.size());
  if (i < 1 || i + 1 > n) fail(errc::invalid_index, "marking index out of range");
  if (!(pr.labels[i - 1] == pr.labels[i]))
    fail(errc::label_mismatch, "half-twist needs equal labels and orientations");
  auto b = b_matrices(p, pr);
  HolonomyPoint out = p;
  out.q[i - 1] = p.q[i];
  // For exponent +1 the pair maps to (b_{i+1}, b_{i+1}^{-1} b_i b_{i+1});
  // for exponent -1 to (b_{i+1}, b_{i+1} b_i b_{i+1}^{-1}).  Both preserve
  // the adjacent relator factor product exactly.
  if (pr.labels[i - 1].sign > 0)
    out.q[i] = b[i].adjoint() * p.q[i - 1];
  else
    out.q[i] = b[i] * p.q[i - 1];
  // Polar reprojection: deviations of q from unitarity cube per step through
  // b = q D q^* and would blow up under iterated twists.
  Eigen::JacobiSVD<Mat> svd(out.q[i], Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.q[i] = svd.matrixU() * svd.matrixV().adjoint();
  return out;
}

double goldman(const HolonomyPoint& p, const ModuliProblem& pr, int j, int k) {
  if (pr.rank != 2) fail(errc::unsupported, "Goldman function is defined for SU(2) only");
  const int n = static_cast<int>(pr.labels.size());
  if (j < 1 || j > n || k < 1 || k > n || j == k)
    fail(errc::invalid_index, "need two distinct marking indices");
  auto b = b_matrices(p, pr);
  double c = 0.5 * (b[j - 1] * b[k - 1]).trace().real();
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c) / (2.0 * std::numbers::pi);
}

std::optional<EmptyCertificate> empty_chamber_certificate(int n, const Rational& mu) {
  if (n < 1 || mu < 0 || mu > Rational(1, 2)) fail(errc::out_of_alcove, "need n >= 1, mu in [0, 1/2]");
  Rational gap = 1 - 2 * mu;
  if (gap < 0) gap = -gap;
  Rational lhs = n * gap;
  if (!(lhs < 1)) return std::nullopt;
  EmptyCertificate cert;
  cert.lhs = lhs;
  cert.rhs = 1;
  cert.text = "each holonomy lies at spherical distance |pi - 2*pi*mu| from -1, so the product of " +
              std::to_string(n) + " factors stays within " + to_string(lhs) +
              "*pi < pi of -1^" + std::to_string(n) + "; the relator cannot reach the identity";
  return cert;
}

namespace {

nlohmann::json matrix_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      rows.push_back({m(i, j).real(), m(i, j).imag()});
  return rows;
}

Mat matrix_from_json(const nlohmann::json& j, int r) {
  if (static_cast<int>(j.size()) != r * r) fail(errc::io_error, "matrix entry count");
  Mat m(r, r);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      const auto& e = j[i * r + k];
      m(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  return m;
}

}  // namespace

std::string to_json(const SolveResult& res, const ModuliProblem& pr, std::uint64_t seed) {
  nlohmann::json j;
  j["group"] = "SU(" + std::to_string(pr.rank) + ")";
  j["genus"] = pr.genus;
  j["labels"] = nlohmann::json::array();
  for (const auto& m : pr.labels)
    j["labels"].push_back({{"sign", m.sign}, {"label", m.label.str()}});
  j["matrices"]["a"] = nlohmann::json::array();
  for (const Mat& m : res.point.a) j["matrices"]["a"].push_back(matrix_json(m));
  j["matrices"]["q"] = nlohmann::json::array();
  for (const Mat& m : res.point.q) j["matrices"]["q"].push_back(matrix_json(m));
  j["residual"] = res.residual;
  j["seed"] = seed;
  return j.dump(2);
}

std::pair<ModuliProblem, SolveResult> from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(errc::io_error, std::string("bad solution JSON: ") + e.what());
  }
  ModuliProblem pr;
  std::string g = j.at("group").get<std::string>();
  if (g.rfind("SU(", 0) != 0 || g.back() != ')') fail(errc::io_error, "bad group string");
  pr.rank = std::stoi(g.substr(3, g.size() - 4));
  pr.genus = j.at("genus").get<int>();
  for (const auto& lj : j.at("labels"))
    pr.labels.push_back(tangle::Marking{
        lj.at("sign").get<int>(),
        alcove::parse_label(lj.at("label").get<std::string>(), pr.rank)});
  SolveResult res;
  for (const auto& mj : j.at("matrices").at("a"))
    res.point.a.push_back(matrix_from_json(mj, pr.rank));
  for (const auto& mj : j.at("matrices").at("q"))
    res.point.q.push_back(matrix_from_json(mj, pr.rank));
  res.residual = j.at("residual").get<double>();
  return {pr, res};
}

}  // namespace tmt::holovar
