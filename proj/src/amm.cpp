#include "tmt/amm.hpp"

#include "tmt/error.hpp"

#include <cmath>

namespace tmt::amm {

namespace {

using holovar::b_matrices;

double ip(const Mat& x, const Mat& y) { return -(x * y).trace().real(); }

Mat ad(const Mat& g, const Mat& x) { return g * x * g.adjoint(); }

// One multiplicative factor of the relator together with its tangent data:
// value phi, derivatives of phi along the two argument directions, and the
// factor's own two-form evaluated on that pair of directions.
struct Factor {
  Mat phi;
  Mat dv;
  Mat dw;
  double om = 0;
};

// Conjugacy-class factor b^eps.  The two-form on generating directions
// [xi, b], [eta, b] is <Ad(b^{-1}) eta - Ad(b) eta, xi>/2; inverting the
// moment map flips its sign.
Factor class_factor(const Mat& b, int eps, const Mat& vb, const Mat& wb) {
  Factor f;
  Mat xi = commutator_solve(b, vb);
  Mat eta = commutator_solve(b, wb);
  f.om = 0.5 * ip(b.adjoint() * eta * b - b * eta * b.adjoint(), xi);
  if (eps > 0) {
    f.phi = b;
    f.dv = vb;
    f.dw = wb;
  } else {
    Mat bi = b.adjoint();
    f.phi = bi;
    f.dv = -bi * vb * bi;
    f.dw = -bi * wb * bi;
    f.om = -f.om;
  }
  return f;
}

// Handle factor a b a^{-1} b^{-1} (internally fused double).
Factor double_factor(const Mat& a, const Mat& b, const Mat& va, const Mat& vb,
                     const Mat& wa, const Mat& wb) {
  Factor f;
  Mat ai = a.adjoint(), bi = b.adjoint();
  f.phi = a * b * ai * bi;
  auto dcomm = [&](const Mat& ua, const Mat& ub) {
    return ua * b * ai * bi + a * ub * ai * bi - a * b * ai * ua * ai * bi -
           f.phi * ub * bi;
  };
  f.dv = dcomm(va, vb);
  f.dw = dcomm(wa, wb);
  // Maurer-Cartan components of the two directions.
  Mat tva = ai * va, tvb = bi * vb, twa = ai * wa, twb = bi * wb;
  Mat bva = va * ai, bvb = vb * bi, bwa = wa * ai, bwb = wb * bi;
  double om = 0.5 * (ip(tva, bwb) - ip(twa, bvb)) + 0.5 * (ip(bva, twb) - ip(bwa, tvb));
  // Internal fusion term between the half moment maps ab and (ba)^{-1}.
  auto p1 = [&](const Mat& ua, const Mat& ub) { return bi * (ai * ua) * b + bi * ub; };
  auto p2 = [&](const Mat& ua, const Mat& ub) { return -ai * (bi * ub) * a - ai * ua; };
  om += 0.5 * (ip(p1(va, vb), p2(wa, wb)) - ip(p1(wa, wb), p2(va, vb)));
  f.om = om;
  return f;
}

// Fusion of two consecutive factors: product moment map plus the cross term
// <Phi_1^* theta ^ Phi_2^* theta-bar>/2.
Factor fuse(const Factor& f1, const Factor& f2) {
  Factor f;
  f.phi = f1.phi * f2.phi;
  f.dv = f1.dv * f2.phi + f1.phi * f2.dv;
  f.dw = f1.dw * f2.phi + f1.phi * f2.dw;
  Mat i1 = f1.phi.adjoint(), i2 = f2.phi.adjoint();
  double cross = 0.5 * (ip(i1 * f1.dv, f2.dw * i2) - ip(i1 * f1.dw, f2.dv * i2));
  f.om = f1.om + f2.om + cross;
  return f;
}

std::vector<Factor> factor_list(const ModuliProblem& pr, const HolonomyPoint& p,
                                const TangentVector& v, const TangentVector& w) {
  auto b = b_matrices(p, pr);
  std::vector<Factor> fs;
  for (int h = 0; h < pr.genus; ++h)
    fs.push_back(double_factor(p.a[2 * h], p.a[2 * h + 1], v.a[2 * h], v.a[2 * h + 1],
                               w.a[2 * h], w.a[2 * h + 1]));
  for (std::size_t j = 0; j < b.size(); ++j)
    fs.push_back(class_factor(b[j], pr.labels[j].sign, v.b[j], w.b[j]));
  return fs;
}

void check_based(const ModuliProblem& pr, const HolonomyPoint& p, const TangentVector& v) {
  auto same = [](const std::vector<Mat>& x, const std::vector<Mat>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if ((x[i] - y[i]).norm() > 1e-12) return false;
    return true;
  };
  if (v.a.size() != p.a.size() || v.b.size() != pr.labels.size() ||
      !same(v.base.a, p.a) || !same(v.base.q, p.q))
    fail(errc::base_mismatch, "tangent vector not based at the given point");
}

Eigen::VectorXd flatten(const TangentVector& v, int r) {
  const int per = 2 * r * r;
  Eigen::VectorXd out(per * static_cast<int>(v.a.size() + v.b.size()));
  int at = 0;
  auto put = [&](const Mat& m) {
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        out(at++) = m(i, j).real();
        out(at++) = m(i, j).imag();
      }
  };
  for (const Mat& m : v.a) put(m);
  for (const Mat& m : v.b) put(m);
  return out;
}

TangentVector unflatten(const Eigen::VectorXd& x, const ModuliProblem& pr,
                        const HolonomyPoint& p) {
  const int r = pr.rank;
  TangentVector v;
  v.base = p;
  int at = 0;
  auto take = [&]() {
    Mat m(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        m(i, j) = std::complex<double>(x(at), x(at + 1));
        at += 2;
      }
    return m;
  };
  for (std::size_t i = 0; i < p.a.size(); ++i) v.a.push_back(take());
  for (std::size_t j = 0; j < pr.labels.size(); ++j) v.b.push_back(take());
  return v;
}

}  // namespace

double pairing(const Mat& x, const Mat& y) { return ip(x, y); }

Mat commutator_solve(const Mat& g, const Mat& v) {
  const int r = static_cast<int>(g.rows());
  auto basis = group::su_basis(r);
  const int dim = static_cast<int>(basis.size());
  Eigen::MatrixXd a(2 * r * r, dim);
  Eigen::VectorXd rhs(2 * r * r);
  for (int c = 0; c < dim; ++c) {
    Mat comm = basis[c] * g - g * basis[c];
    int row = 0;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        a(row++, c) = comm(i, j).real();
        a(row++, c) = comm(i, j).imag();
      }
  }
  int row = 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      rhs(row++) = v(i, j).real();
      rhs(row++) = v(i, j).imag();
    }
  Eigen::VectorXd coef = a.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  Mat x = Mat::Zero(r, r);
  for (int c = 0; c < dim; ++c) x += coef(c) * basis[c];
  return x;
}

bool is_tangent(const TangentVector& v, const ModuliProblem& pr, double tol) {
  auto in_su = [&](const Mat& u, const Mat& dir) {
    Mat x = u.adjoint() * dir;
    return (x + x.adjoint()).norm() < tol && std::abs(x.trace()) < tol;
  };
  for (std::size_t i = 0; i < v.a.size(); ++i)
    if (!in_su(v.base.a[i], v.a[i])) return false;
  auto b = b_matrices(v.base, pr);
  for (std::size_t j = 0; j < v.b.size(); ++j) {
    if (!in_su(b[j], v.b[j])) return false;
    Mat x = commutator_solve(b[j], v.b[j]);
    if ((x * b[j] - b[j] * x - v.b[j]).norm() > tol * (1.0 + v.b[j].norm())) return false;
  }
  return true;
}

double omega_conjugacy(const alcove::Label& mu, const Mat& g, const Mat& xi,
                       const Mat& eta) {
  if (group::class_distance(g, mu) > 1e-6)
    fail(errc::not_in_class, "matrix is not in the labelled conjugacy class");
  Mat diff = g.adjoint() * eta * g - g * eta * g.adjoint();
  return ip(diff, xi);
}

double omega_total(const ModuliProblem& pr, const HolonomyPoint& p,
                   const TangentVector& v, const TangentVector& w,
                   bool leftmost_splitting) {
  check_based(pr, p, v);
  check_based(pr, p, w);
  auto fs = factor_list(pr, p, v, w);
  if (fs.empty()) return 0;
  if (leftmost_splitting) {
    Factor acc = fs.back();
    for (int i = static_cast<int>(fs.size()) - 2; i >= 0; --i) acc = fuse(fs[i], acc);
    return acc.om;
  }
  Factor acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = fuse(acc, fs[i]);
  return acc.om;
}

TangentVector gauge_direction(const ModuliProblem& pr, const HolonomyPoint& p,
                              const Mat& xi) {
  TangentVector v;
  v.base = p;
  for (const Mat& a : p.a) v.a.push_back(xi * a - a * xi);
  for (const Mat& b : b_matrices(p, pr)) v.b.push_back(xi * b - b * xi);
  return v;
}

TangentVector random_tangent(const ModuliProblem& pr, const HolonomyPoint& p,
                             std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto basis = group::su_basis(pr.rank);
  auto rand_su = [&]() {
    Mat x = Mat::Zero(pr.rank, pr.rank);
    for (const Mat& e : basis) x += gauss(rng) * e;
    return x;
  };
  TangentVector v;
  v.base = p;
  for (const Mat& a : p.a) v.a.push_back(rand_su() * a);
  for (const Mat& b : b_matrices(p, pr)) {
    Mat x = rand_su();
    v.b.push_back(x * b - b * x);
  }
  return v;
}

KernelReport reduced_kernel_report(const ModuliProblem& pr, const HolonomyPoint& p,
                                   double rank_threshold) {
  const int r = pr.rank;
  if (holovar::relator_residual(p, pr) > 1e-6)
    fail(errc::not_on_variety, "relator residual too large");
  if (holovar::commutant_dimension(p, pr) > 0)
    fail(errc::reducible, "kernel analysis requires an irreducible point");

  auto basis = group::su_basis(r);
  const int dim = static_cast<int>(basis.size());
  auto b = b_matrices(p, pr);
  const int nb = static_cast<int>(b.size());
  const int na = static_cast<int>(p.a.size());
  const int cols = dim * (na + nb);
  const int per = 2 * r * r;

  // Parameter directions: e * a_i for the handles, [e, b_j] for the classes.
  auto direction = [&](int c) {
    TangentVector v;
    v.base = p;
    v.a.assign(na, Mat::Zero(r, r));
    v.b.assign(nb, Mat::Zero(r, r));
    int slot = c / dim;
    const Mat& e = basis[c % dim];
    if (slot < na)
      v.a[slot] = e * p.a[slot];
    else {
      int j = slot - na;
      v.b[j] = e * b[j] - b[j] * e;
    }
    return v;
  };

  // Derivative of the relator along each parameter direction.
  TangentVector zero;
  zero.base = p;
  zero.a.assign(na, Mat::Zero(r, r));
  zero.b.assign(nb, Mat::Zero(r, r));
  Eigen::MatrixXd jac(per, cols);
  for (int c = 0; c < cols; ++c) {
    auto fs = factor_list(pr, p, direction(c), zero);
    Factor acc = fs.back();
    for (int i = static_cast<int>(fs.size()) - 2; i >= 0; --i) acc = fuse(fs[i], acc);
    int row = 0;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        jac(row++, c) = acc.dv(i, j).real();
        jac(row++, c) = acc.dv(i, j).imag();
      }
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rank_threshold * s(0)) ++rank;

  // Push the parameter-space kernel into ambient tangent vectors and
  // orthonormalize; the class parametrization is redundant by the
  // centralizers, so the image can be smaller than the nullity.
  Eigen::MatrixXd img(per * (na + nb), cols - rank);
  for (int k = rank; k < cols; ++k) {
    TangentVector v = zero;
    for (int c = 0; c < cols; ++c) {
      double coef = svd.matrixV()(c, k);
      if (std::abs(coef) < 1e-14) continue;
      TangentVector d = direction(c);
      for (int i = 0; i < na; ++i) v.a[i] += coef * d.a[i];
      for (int j = 0; j < nb; ++j) v.b[j] += coef * d.b[j];
    }
    img.col(k - rank) = flatten(v, r);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> isvd(img, Eigen::ComputeThinU);
  const auto& is = isvd.singularValues();
  int tdim = 0;
  for (int i = 0; i < is.size(); ++i)
    if (is(i) > rank_threshold * is(0)) ++tdim;

  std::vector<TangentVector> tangents;
  for (int k = 0; k < tdim; ++k)
    tangents.push_back(unflatten(isvd.matrixU().col(k), pr, p));

  KernelReport rep;
  rep.level_tangent_dim = tdim;
  rep.gauge_dim = dim - group::commutant_dimension([&] {
                    auto g = b;
                    g.insert(g.end(), p.a.begin(), p.a.end());
                    return g;
                  }());
  Eigen::MatrixXd gram(tdim, tdim);
  for (int i = 0; i < tdim; ++i) {
    gram(i, i) = 0;
    for (int j = i + 1; j < tdim; ++j) {
      double om = omega_total(pr, p, tangents[i], tangents[j]);
      gram(i, j) = om;
      gram(j, i) = -om;
    }
  }
  // The tangent basis is orthonormal, so a degenerate direction shows up as
  // a singular value near zero on an absolute scale.
  if (tdim > 0) {
    Eigen::BDCSVD<Eigen::MatrixXd> gsvd(gram);
    const auto& gs = gsvd.singularValues();
    double scale = std::max(1.0, gs.size() ? gs(0) : 0.0);
    for (int i = 0; i < gs.size(); ++i)
      if (gs(i) > rank_threshold * scale) ++rep.form_rank;
  }
  for (const Mat& e : basis) {
    TangentVector g = gauge_direction(pr, p, e);
    for (const auto& t : tangents)
      rep.gauge_pairing = std::max(rep.gauge_pairing, std::abs(omega_total(pr, p, g, t)));
  }
  return rep;
}

}  // namespace tmt::amm
