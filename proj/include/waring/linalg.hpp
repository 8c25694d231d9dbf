#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace waring {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Session default: relative rank threshold, residual bound and eigenvector
// separation (condition number < 1/tol) all use this value unless overridden.
inline constexpr double kDefaultTol = 1e-8;

// Singular values above the threshold. tol > 0 means tol * sigma_max;
// tol == 0 means max(rows, cols) * eps * sigma_max.
int numerical_rank(const Mat& m, double tol = 0.0);
double rank_threshold(const Eigen::VectorXd& sv, Eigen::Index rows, Eigen::Index cols,
                      double tol);

// Truncated pseudoinverse with the same threshold rule.
Mat pinv(const Mat& m, double tol = 0.0);

// Orthonormal basis of the right null space (columns).
Mat null_space(const Mat& m, double tol = 0.0);

// Minimum-norm least squares, rank truncated by tol.
Vec lstsq(const Mat& a, const Vec& b, double tol = 0.0);

Complex determinant(const Mat& m);

// sigma_max / sigma_min; infinity when sigma_min == 0.
double condition_number(const Mat& m);

// Standard complex Gaussian entries: (N(0,1) + i N(0,1)) / sqrt 2.
Vec complex_gaussian(Eigen::Index size, std::mt19937_64& rng);
Mat complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);

}  // namespace waring
