#include "waring/tensor.hpp"

#include <cmath>

#include "waring/error.hpp"

namespace waring {

SymTensor::SymTensor(int n, int d) : n_(n), d_(d) {
  if (n < 1 || d < 0) throw Error(Errc::OutOfRange, "SymTensor needs n >= 1 and d >= 0");
  mons_ = std::make_shared<const std::vector<Exponent>>(monomials_up_to(n, d));
  coeffs_ = Vec::Zero(static_cast<Eigen::Index>(mons_->size()));
}

Complex SymTensor::operator[](const Exponent& a) const {
  if (degree(a) > d_) throw Error(Errc::OutOfRange, "exponent " + to_string(a) + " exceeds order");
  return coeffs_[static_cast<Eigen::Index>(glex_position(a))];
}

Complex& SymTensor::at(const Exponent& a) {
  if (degree(a) > d_) throw Error(Errc::OutOfRange, "exponent " + to_string(a) + " exceeds order");
  return coeffs_[static_cast<Eigen::Index>(glex_position(a))];
}

bool SymTensor::is_zero() const { return coeffs_.size() == 0 || coeffs_.isZero(0.0); }

namespace {

Complex power_product(const PointSet& z, Eigen::Index i, const Exponent& a) {
  Complex v(1.0, 0.0);
  for (std::size_t j = 0; j < a.size(); ++j)
    for (int p = 0; p < a[j]; ++p) v *= z(i, static_cast<Eigen::Index>(j) + 1);
  return v;
}

double multinomial(int d, const Exponent& a) {
  double r = std::lgamma(d + 1.0) - std::lgamma(d - degree(a) + 1.0);
  for (int v : a) r -= std::lgamma(v + 1.0);
  return std::round(std::exp(r));
}

}  // namespace

SymTensor tensor_from_points(const PointSet& points, const Vec& weights, int d) {
  if (weights.size() != points.rows())
    throw Error(Errc::DimensionMismatch, "weights length differs from point count");
  const int n = static_cast<int>(points.cols()) - 1;
  SymTensor phi(n, d);
  const auto& mons = phi.monomials();
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (std::size_t k = 0; k < mons.size(); ++k) {
      Complex v = weights[i] * power_product(points, i, mons[k]);
      for (int p = degree(mons[k]); p < d; ++p) v *= points(i, 0);
      phi.coeffs()[static_cast<Eigen::Index>(k)] += v;
    }
  }
  return phi;
}

Mat vandermonde(const PointSet& points, const std::vector<Exponent>& monomials) {
  Mat v(points.rows(), static_cast<Eigen::Index>(monomials.size()));
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    for (std::size_t k = 0; k < monomials.size(); ++k)
      v(i, static_cast<Eigen::Index>(k)) = power_product(points, i, monomials[k]);
  return v;
}

Mat catalecticant(const SymTensor& phi, int k) {
  if (k < 0 || k > phi.d()) throw Error(Errc::OutOfRange, "catalecticant index outside [0, d]");
  const auto rows = monomials_up_to(phi.n(), phi.d() - k);
  const auto cols = monomials_up_to(phi.n(), k);
  Mat c(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b)
      c(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = phi[rows[a] + cols[b]];
  return c;
}

std::vector<int> hilbert_function(const SymTensor& phi, double tol) {
  std::vector<int> h;
  for (int k = 0; k <= phi.d(); ++k) h.push_back(numerical_rank(catalecticant(phi, k), tol));
  return h;
}

int regularity(const PointSet& points, double tol) {
  const int n = static_cast<int>(points.cols()) - 1;
  const auto s = points.rows();
  for (int k = 0; k <= s; ++k)
    if (numerical_rank(vandermonde(points, monomials_up_to(n, k)), tol) == s) return k;
  throw Error(Errc::Unreachable, "Vandermonde rank never reaches the point count (repeated points?)");
}

SymTensor apply_gl(const SymTensor& phi, const Mat& m) {
  const int n = phi.n(), d = phi.d();
  if (m.rows() != n + 1 || m.cols() != n + 1)
    throw Error(Errc::DimensionMismatch, "GL matrix must be (n+1) x (n+1)");
  if (numerical_rank(m) < n + 1) throw Error(Errc::Singular, "GL matrix is numerically singular");

  const auto& mons = phi.monomials();
  const std::size_t total = mons.size();
  // shift[k][j]: position of mons[k] + e_j.
  std::vector<std::vector<std::size_t>> shift(total, std::vector<std::size_t>(static_cast<std::size_t>(n)));
  for (std::size_t k = 0; k < total; ++k)
    if (degree(mons[k]) < d)
      for (int j = 0; j < n; ++j) shift[k][static_cast<std::size_t>(j)] = glex_position(mons[k] + unit(n, j));

  Vec result = Vec::Zero(static_cast<Eigen::Index>(total));
  Vec poly(static_cast<Eigen::Index>(total)), next(static_cast<Eigen::Index>(total));
  for (std::size_t a = 0; a < total; ++a) {
    const Complex c = phi.coeffs()[static_cast<Eigen::Index>(a)] * multinomial(d, mons[a]);
    if (c == Complex(0.0, 0.0)) continue;
    // Expand prod_k (sum_j M_{jk} x_j)^{A_k} with A = (d - |a|, a).
    poly.setZero();
    poly[0] = 1.0;
    int t = 0;
    auto multiply = [&](Eigen::Index col) {
      const std::size_t live = static_cast<std::size_t>(binomial(n + t, n));
      const std::size_t out = static_cast<std::size_t>(binomial(n + t + 1, n));
      next.head(static_cast<Eigen::Index>(out)).setZero();
      for (std::size_t k = 0; k < live; ++k) {
        if (degree(mons[k]) > t) break;
        const Complex p = poly[static_cast<Eigen::Index>(k)];
        if (p == Complex(0.0, 0.0)) continue;
        next[static_cast<Eigen::Index>(k)] += m(0, col) * p;
        for (int j = 0; j < n; ++j)
          next[static_cast<Eigen::Index>(shift[k][static_cast<std::size_t>(j)])] += m(j + 1, col) * p;
      }
      poly.head(static_cast<Eigen::Index>(out)) = next.head(static_cast<Eigen::Index>(out));
      ++t;
    };
    for (int p = degree(mons[a]); p < d; ++p) multiply(0);
    for (int j = 0; j < n; ++j)
      for (int p = 0; p < mons[a][static_cast<std::size_t>(j)]; ++p) multiply(j + 1);
    result += c * poly;
  }
  SymTensor out(n, d);
  for (std::size_t b = 0; b < total; ++b)
    out.coeffs()[static_cast<Eigen::Index>(b)] = result[static_cast<Eigen::Index>(b)] / multinomial(d, mons[b]);
  return out;
}

EssentialVars essential_vars(const SymTensor& phi, double tol) {
  const int n = phi.n();
  if (phi.d() < 1) throw Error(Errc::OrderTooSmall, "essential variables need d >= 1");
  EssentialVars ev;
  const Mat cat1 = catalecticant(phi, 1);
  Eigen::BDCSVD<Mat> svd(cat1, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int count = 0;
  if (sv.size() > 0 && sv.maxCoeff() > 0.0)
    count = static_cast<int>((sv.array() > rank_threshold(sv, cat1.rows(), cat1.cols(), tol)).count());
  ev.count = count;
  if (count == n + 1 || count == 0) {
    ev.basis = Mat::Identity(n + 1, n + 1).topRows(count);
    ev.transform = Mat::Identity(n + 1, n + 1);
    ev.reduced = phi;
    return ev;
  }
  // Row space of Cat_1 holds every point of every decomposition. Lead with the
  // projection of e0 so the new x0 stays nonzero on those points.
  const Mat w = svd.matrixV().leftCols(count).conjugate();
  Vec pe0 = w * w.row(0).adjoint();
  Mat seed(n + 1, count + 1);
  seed.col(0) = pe0;
  seed.rightCols(count) = w;
  Eigen::HouseholderQR<Mat> qr_w(seed);
  Mat q_w = Mat(qr_w.householderQ()).leftCols(count);
  // Fix the phase of the first column so that (u1^H z) has the phase of z0.
  const Complex ph = q_w.col(0).dot(pe0);
  q_w.col(0) *= ph / std::abs(ph);
  Mat seeded(n + 1, count + n + 1);
  seeded.leftCols(count) = q_w;
  seeded.rightCols(n + 1) = Mat::Identity(n + 1, n + 1);
  Eigen::HouseholderQR<Mat> qr_full(seeded);
  Mat q = Mat(qr_full.householderQ());
  q.leftCols(count) = q_w;
  const Mat transform = q.adjoint();
  ev.transform = transform;
  ev.basis = transform.topRows(count);
  const SymTensor moved = apply_gl(phi, transform);
  SymTensor reduced(count - 1 > 0 ? count - 1 : 1, phi.d());
  if (count - 1 > 0) {
    for (const auto& a : reduced.monomials()) {
      Exponent full_a(static_cast<std::size_t>(n), 0);
      for (std::size_t j = 0; j < a.size(); ++j) full_a[j] = a[j];
      reduced.at(a) = moved[full_a];
    }
  } else {
    // Single essential variable: keep one dummy variable with zero entries.
    reduced.at(Exponent{0}) = moved[Exponent(static_cast<std::size_t>(n), 0)];
  }
  ev.reduced = reduced;
  return ev;
}

double reconstruction_residual(const SymTensor& phi, const Decomposition& dec) {
  const SymTensor rec = tensor_from_points(dec.points, dec.weights, phi.d());
  const double num = (rec.coeffs() - phi.coeffs()).norm();
  const double den = phi.coeffs().norm();
  return den > 0 ? num / den : num;
}

Decomposition pull_back(const Decomposition& dec, const Mat& m, int d, double tol) {
  Decomposition out;
  const Mat minv_t = m.inverse().transpose();
  out.points = dec.points * minv_t;
  out.weights = dec.weights;
  for (Eigen::Index i = 0; i < out.points.rows(); ++i) {
    const Complex z0 = out.points(i, 0);
    if (std::abs(z0) <= tol * out.points.row(i).norm())
      throw Error(Errc::NormalizationFailure, "point has vanishing x0 coordinate after change of basis");
    out.points.row(i) /= z0;
    if (out.weights.size() > 0) out.weights[i] *= std::pow(z0, d);
  }
  return out;
}

Mat random_gl(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Mat g = complex_gaussian(n + 1, n + 1, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  return Mat(qr.householderQ());
}

}  // namespace waring
