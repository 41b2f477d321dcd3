#include "tmt/group.hpp"

#include "tmt/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tmt::group {

using std::numbers::pi;
using cplx = std::complex<double>;

Mat class_rep(const alcove::Label& l) {
  const int r = l.rank();
  Mat d = Mat::Zero(r, r);
  for (int i = 0; i < r; ++i) {
    double a = 2.0 * pi * to_double(l.entries()[i]);
    d(i, i) = cplx(std::cos(a), std::sin(a));
  }
  return d;
}

Mat proj_su(const Mat& x) {
  Mat a = 0.5 * (x - x.adjoint());
  a -= (a.trace() / static_cast<double>(x.rows())) * Mat::Identity(x.rows(), x.cols());
  return a;
}

Mat exp_su(const Mat& x) {
  Eigen::SelfAdjointEigenSolver<Mat> es(cplx(0, -1) * x);
  Mat v = es.eigenvectors();
  Eigen::VectorXcd phases(x.rows());
  for (int i = 0; i < x.rows(); ++i) {
    double t = es.eigenvalues()(i);
    phases(i) = cplx(std::cos(t), std::sin(t));
  }
  return v * phases.asDiagonal() * v.adjoint();
}

Mat haar_su(int r, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat z(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) z(i, j) = cplx(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ();
  Mat rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < r; ++j) {
    cplx d = rr(j, j);
    q.col(j) *= d / std::abs(d);
  }
  cplx det = q.determinant();
  double theta = std::arg(det) / r;
  q *= cplx(std::cos(theta), -std::sin(theta));
  return q;
}

bool is_special_unitary(const Mat& u, double tol) {
  int r = static_cast<int>(u.rows());
  if (u.cols() != r) return false;
  if ((u.adjoint() * u - Mat::Identity(r, r)).norm() > tol) return false;
  return std::abs(u.determinant() - cplx(1, 0)) < tol;
}

std::vector<double> alcove_coordinates(const Mat& u) {
  const int r = static_cast<int>(u.rows());
  Eigen::ComplexEigenSolver<Mat> es(u);
  std::vector<double> f(r);
  for (int i = 0; i < r; ++i) {
    double a = std::arg(es.eigenvalues()(i)) / (2.0 * pi);  // in (-1/2, 1/2]
    a -= std::floor(a);                                     // in [0, 1)
    f[i] = a;
  }
  std::sort(f.rbegin(), f.rend());
  // det = 1 forces the angle sum to an integer m; subtracting one from the m
  // largest angles is the alcove representative.
  double sum = 0;
  for (double a : f) sum += a;
  int m = static_cast<int>(std::lround(sum));
  std::vector<double> out;
  out.reserve(r);
  for (int i = m; i < r; ++i) out.push_back(f[i]);
  for (int i = 0; i < m; ++i) out.push_back(f[i] - 1.0);
  return out;
}

double class_distance(const Mat& u, const alcove::Label& l) {
  auto c = alcove_coordinates(u);
  double worst = 0;
  for (int i = 0; i < l.rank(); ++i)
    worst = std::max(worst, std::abs(c[i] - to_double(l.entries()[i])));
  return worst;
}

std::vector<double> invariant_vector(const std::vector<Mat>& g) {
  std::vector<double> v;
  auto push = [&](const Mat& m) {
    cplx t = m.trace();
    v.push_back(t.real());
    v.push_back(t.imag());
  };
  const int n = static_cast<int>(g.size());
  for (int i = 0; i < n; ++i) push(g[i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) push(g[i] * g[j]);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        push(g[i] * g[j] * g[k]);
        push(g[i] * g[k] * g[j]);
      }
  return v;
}

std::vector<Mat> su_basis(int r) {
  std::vector<Mat> basis;
  for (int k = 0; k + 1 < r; ++k) {
    Mat m = Mat::Zero(r, r);
    m(k, k) = cplx(0, 1);
    m(k + 1, k + 1) = cplx(0, -1);
    basis.push_back(m);
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      Mat m = Mat::Zero(r, r);
      m(i, j) = 1;
      m(j, i) = -1;
      basis.push_back(m);
      Mat s = Mat::Zero(r, r);
      s(i, j) = cplx(0, 1);
      s(j, i) = cplx(0, 1);
      basis.push_back(s);
    }
  return basis;
}

int numeric_rank(const Eigen::MatrixXd& m, double rel_threshold) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0) return 0;
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rel_threshold * s(0)) ++rank;
  return rank;
}

int commutant_dimension(const std::vector<Mat>& g, double rel_threshold) {
  if (g.empty()) fail(errc::shape_error, "empty tuple");
  const int r = static_cast<int>(g[0].rows());
  auto basis = su_basis(r);
  const int dim = static_cast<int>(basis.size());
  Eigen::MatrixXd a(2 * r * r * static_cast<int>(g.size()), dim);
  for (int c = 0; c < dim; ++c) {
    int row = 0;
    for (const Mat& m : g) {
      Mat comm = basis[c] * m - m * basis[c];
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          a(row++, c) = comm(i, j).real();
          a(row++, c) = comm(i, j).imag();
        }
    }
  }
  return dim - numeric_rank(a, rel_threshold);
}

}  // namespace tmt::group
