#pragma once

// Helpers shared by the unit tests and the acceptance runner. Nothing here
// calls into the code under test except to build inputs.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "waring/hankel.hpp"
#include "waring/linalg.hpp"
#include "waring/tensor.hpp"

namespace support {

using waring::Complex;
using waring::Exponent;
using waring::Mat;
using waring::Vec;

// r generic affine points (first coordinate 1).
inline Mat generic_points(int r, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Mat z = waring::complex_gaussian(r, n + 1, rng);
  z.col(0).setOnes();
  return z;
}

inline Vec generic_weights(int r, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xfeedULL);
  return waring::complex_gaussian(r, rng);
}

inline Mat affine(const Mat& pts) {
  Mat out = pts;
  for (Eigen::Index i = 0; i < out.rows(); ++i) out.row(i) /= out(i, 0);
  return out;
}

// Max coordinate error of the best greedy matching of `got` rows onto
// `want` rows, after scaling every point to first coordinate 1. Infinity if
// the counts differ.
inline double match_error(const Mat& want, const Mat& got) {
  if (want.rows() != got.rows() || want.cols() != got.cols()) return std::numeric_limits<double>::infinity();
  const Mat a = affine(want), b = affine(got);
  std::vector<bool> used(b.rows(), false);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index arg = -1;
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      if (used[j]) continue;
      const double e = (a.row(i) - b.row(j)).cwiseAbs().maxCoeff();
      if (e < best) best = e, arg = j;
    }
    if (arg < 0) return std::numeric_limits<double>::infinity();
    used[arg] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

// Distance from point p to the nearest row of pts (affine coordinates).
inline double nearest(const Mat& pts, const Eigen::RowVectorXcd& p) {
  const Mat a = affine(pts);
  const Eigen::RowVectorXcd q = p / p(0);
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < a.rows(); ++i) best = std::min(best, (a.row(i) - q).cwiseAbs().maxCoeff());
  return best;
}

// det H_{B+row, B+col} with degree > d entries read from y, computed by
// filling the bordered Hankel matrix entry by entry.
inline Complex bordered_det(const waring::SymTensor& phi, const std::vector<Exponent>& basis,
                            const Exponent& row, const Exponent& col, const std::vector<Exponent>& vars,
                            const Vec& y) {
  const auto val = [&](const Exponent& g) -> Complex {
    int deg = 0;
    for (int e : g) deg += e;
    if (deg <= phi.d()) return phi[g];
    const auto it = std::find(vars.begin(), vars.end(), g);
    return it == vars.end() ? Complex(0.0) : y(it - vars.begin());
  };
  const auto add = [](const Exponent& a, const Exponent& b) {
    Exponent s(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) s[k] = a[k] + b[k];
    return s;
  };
  std::vector<Exponent> rows = basis, cols = basis;
  rows.push_back(row);
  cols.push_back(col);
  Mat h(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b) h(a, b) = val(add(rows[a], cols[b]));
  return h.determinant();
}

// Coefficients and constant of an affine function of y, by evaluation at
// 0 and at the unit vectors.
template <class F>
std::pair<Vec, Complex> affine_coefficients(F f, int nvars) {
  const Complex c0 = f(Vec::Zero(nvars));
  Vec g(nvars);
  for (int v = 0; v < nvars; ++v) g(v) = f(Vec::Unit(nvars, v)) - c0;
  return {g, c0};
}

inline double relative_smallest_sv(const Mat& m) {
  Eigen::BDCSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) / s(0);
}

}  // namespace support
