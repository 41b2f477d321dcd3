#pragma once

#include "tmt/alcove.hpp"

#include <Eigen/Dense>

#include <random>
#include <vector>

namespace tmt::group {

using Mat = Eigen::MatrixXcd;

/// Diagonal representative exp(2*pi*i*diag(l)) of the conjugacy class of l.
Mat class_rep(const alcove::Label& l);

/// Orthogonal projection of an arbitrary matrix onto su(r):
/// anti-Hermitian, traceless.
Mat proj_su(const Mat& x);

/// exp(x) for anti-Hermitian x, via the eigendecomposition of -i*x.
Mat exp_su(const Mat& x);

/// Haar-random element of SU(r): QR of a complex Gaussian matrix with phase
/// correction, then det normalized by a scalar r-th root.
Mat haar_su(int r, std::mt19937_64& rng);

bool is_special_unitary(const Mat& u, double tol = 1e-9);

/// Eigenvalue angles of a special unitary matrix mapped to the fundamental
/// alcove: weakly decreasing, summing to zero, spread at most one.
std::vector<double> alcove_coordinates(const Mat& u);

/// Max distance of alcove_coordinates(u) from the entries of l.
double class_distance(const Mat& u, const alcove::Label& l);

/// Conjugation-invariant fingerprint of a matrix tuple: real and imaginary
/// parts of traces of single elements, ordered pairs, and triples (both
/// orientations).
std::vector<double> invariant_vector(const std::vector<Mat>& g);

/// Real basis of su(r): diagonal i*(e_k - e_{k+1}) followed by off-diagonal
/// antisymmetric and i*symmetric pairs; r^2 - 1 elements.
std::vector<Mat> su_basis(int r);

/// Real dimension of {xi in su(r) : xi m = m xi for all m in g}.
int commutant_dimension(const std::vector<Mat>& g, double rel_threshold = 1e-6);

/// Rank of a real matrix by SVD with a relative singular-value cutoff.
int numeric_rank(const Eigen::MatrixXd& m, double rel_threshold);

}  // namespace tmt::group
