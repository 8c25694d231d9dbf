#include "waring/jennrich.hpp"

#include <random>

#include "waring/error.hpp"

namespace waring {

SliceSet slices(const SymTensor& phi) {
  if (phi.d() < 3) throw Error(Errc::OrderTooSmall, "slices need d >= 3");
  const int n = phi.n();
  SliceSet out;
  out.D = (phi.d() - 1) / 2;
  const auto rows = monomials_up_to(n, out.D);
  const auto cols = monomials_up_to(n, phi.d() - 1 - out.D);
  for (int j = 0; j <= n; ++j) {
    Mat s(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < cols.size(); ++b) {
        Exponent g = rows[a] + cols[b];
        if (j > 0) ++g[static_cast<std::size_t>(j - 1)];
        s(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = phi[g];
      }
    out.slices.push_back(std::move(s));
  }
  return out;
}

WeightFit solve_weights(const SymTensor& phi, const PointSet& points) {
  WeightFit fit;
  if (points.rows() == 0) {
    fit.weights = Vec();
    fit.residual = phi.is_zero() ? 0.0 : 1.0;
    return fit;
  }
  const Mat v = vandermonde(points, phi.monomials()).transpose();
  fit.weights = v.colPivHouseholderQr().solve(phi.coeffs());
  fit.residual = reconstruction_residual(phi, Decomposition{points, fit.weights});
  return fit;
}

namespace {

struct EigenRead {
  Mat vectors;   // columns, in the slice row space
  Vec values;
  double cond = 0.0;
};

EigenRead diagonalize(const SliceSet& ss, const Mat& us, const Mat& p0, std::mt19937_64& rng) {
  const Vec a = complex_gaussian(static_cast<Eigen::Index>(ss.slices.size()), rng);
  Mat g = Mat::Zero(us.cols(), us.cols());
  for (std::size_t j = 0; j < ss.slices.size(); ++j)
    g += a[static_cast<Eigen::Index>(j)] * (us.adjoint() * ss.slices[j] * p0 * us);
  Eigen::ComplexEigenSolver<Mat> es(g);
  EigenRead r;
  r.values = es.eigenvalues();
  r.vectors = us * es.eigenvectors();
  r.cond = condition_number(es.eigenvectors());
  return r;
}

}  // namespace

Decomposition jennrich_decompose(const SymTensor& phi, std::uint64_t seed, double tol) {
  const int n = phi.n();
  if (phi.is_zero()) return Decomposition{PointSet(0, n + 1), Vec()};
  const SliceSet ss = slices(phi);
  std::mt19937_64 rng(seed);
  // Base of the pencil: a random combination of all slices, so a point with
  // z_0 = 0 still counts and surfaces as a normalization failure.
  const Vec b = complex_gaussian(static_cast<Eigen::Index>(ss.slices.size()), rng);
  Mat s0 = Mat::Zero(ss.slices[0].rows(), ss.slices[0].cols());
  for (std::size_t j = 0; j < ss.slices.size(); ++j) s0 += b[static_cast<Eigen::Index>(j)] * ss.slices[j];
  Eigen::BDCSVD<Mat> svd(s0, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double thr = rank_threshold(sv, s0.rows(), s0.cols(), tol);
  const int s = static_cast<int>((sv.array() > thr).count());
  const Mat us = svd.matrixU().leftCols(s);
  const Mat p0 = pinv(s0, tol);

  EigenRead er = diagonalize(ss, us, p0, rng);
  if (!(er.cond < 1.0 / tol)) er = diagonalize(ss, us, p0, rng);  // one redraw
  if (!(er.cond < 1.0 / tol))
    throw Error(Errc::DefectiveSpectrum,
                "random slice combination has fewer than " + std::to_string(s) +
                    " independent eigenvectors (rank exceeds the middle catalecticant?)");

  Decomposition dec;
  dec.points = PointSet(s, n + 1);
  for (int i = 0; i < s; ++i) {
    Vec v = er.vectors.col(i);
    if (std::abs(v[0]) <= tol * v.norm())
      throw Error(Errc::NormalizationFailure,
                  "eigenvector vanishes at the constant monomial; apply a random change of basis");
    v /= v[0];
    dec.points(i, 0) = 1.0;
    for (int j = 1; j <= n; ++j) dec.points(i, j) = v[j];
  }
  const WeightFit fit = solve_weights(phi, dec.points);
  dec.weights = fit.weights;
  if (!(fit.residual <= tol))
    throw Error(Errc::ResidualTooLarge,
                "reconstruction residual " + std::to_string(fit.residual) + " exceeds tolerance");
  return dec;
}

}  // namespace waring
