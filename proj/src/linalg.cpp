#include "waring/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace waring {

double rank_threshold(const Eigen::VectorXd& sv, Eigen::Index rows, Eigen::Index cols,
                      double tol) {
  if (sv.size() == 0) return 0.0;
  const double smax = sv.maxCoeff();
  if (tol > 0) return tol * smax;
  return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() *
         smax;
}

namespace {

int count_above(const Eigen::VectorXd& sv, double thr) {
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > thr) ++r;
  return r;
}

}  // namespace

int numerical_rank(const Mat& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv.maxCoeff() == 0.0) return 0;
  return count_above(sv, rank_threshold(sv, m.rows(), m.cols(), tol));
}

Mat pinv(const Mat& m, double tol) {
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Mat out = Mat::Zero(m.cols(), m.rows());
  if (sv.size() == 0 || sv.maxCoeff() == 0.0) return out;
  const double thr = rank_threshold(sv, m.rows(), m.cols(), tol);
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > thr)
      out += svd.matrixV().col(i) * (1.0 / sv[i]) * svd.matrixU().col(i).adjoint();
  return out;
}

Mat null_space(const Mat& m, double tol) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return Mat::Identity(cols, cols);
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int r = 0;
  if (sv.size() > 0 && sv.maxCoeff() > 0.0)
    r = count_above(sv, rank_threshold(sv, m.rows(), m.cols(), tol));
  return svd.matrixV().rightCols(cols - r);
}

Vec lstsq(const Mat& a, const Vec& b, double tol) { return pinv(a, tol) * b; }

Complex determinant(const Mat& m) {
  if (m.rows() == 0) return Complex(1.0, 0.0);
  return Eigen::PartialPivLU<Mat>(m).determinant();
}

double condition_number(const Mat& m) {
  Eigen::BDCSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 1.0;
  const double smin = sv.minCoeff();
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv.maxCoeff() / smin;
}

Vec complex_gaussian(Eigen::Index size, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(size);
  const double s = std::sqrt(0.5);
  for (Eigen::Index i = 0; i < size; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v[i] = Complex(s * re, s * im);
  }
  return v;
}

Mat complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) m.row(i) = complex_gaussian(cols, rng).transpose();
  return m;
}

}  // namespace waring
