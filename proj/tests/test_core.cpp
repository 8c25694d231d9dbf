#include <doctest.h>

#include <set>

#include "support.hpp"
#include "waring/error.hpp"
#include "waring/exponent.hpp"
#include "waring/linalg.hpp"
#include "waring/tensor.hpp"

using namespace waring;

namespace {

// z^a over the dehomogenized coordinates, z(0) carrying the leftover degree
Complex power(const Eigen::RowVectorXcd& z, const Exponent& a, int d) {
  Complex v = std::pow(z(0), d - degree(a));
  for (std::size_t k = 0; k < a.size(); ++k) v *= std::pow(z(k + 1), a[k]);
  return v;
}

Mat manual_vandermonde(const Mat& pts, const std::vector<Exponent>& mons) {
  Mat v(pts.rows(), mons.size());
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    for (std::size_t j = 0; j < mons.size(); ++j) {
      Complex p = 1.0;
      for (std::size_t k = 0; k < mons[j].size(); ++k) p *= std::pow(pts(i, k + 1), mons[j][k]);
      v(i, j) = p;
    }
  return v;
}

}  // namespace

TEST_CASE("graded-lex enumeration") {
  CHECK(monomials_up_to(1, 2) == std::vector<Exponent>{{0}, {1}, {2}});
  CHECK(monomials_up_to(2, 1) == std::vector<Exponent>{{0, 0}, {1, 0}, {0, 1}});
  CHECK(monomials_up_to(3, 2).size() == 10);
  // x1^2 < x1 x2 < x2^2
  CHECK(glex_less({2, 0}, {1, 1}));
  CHECK(glex_less({1, 1}, {0, 2}));
  CHECK(glex_less({0, 2}, {3, 0}));

  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= 4; ++k) {
      const auto mons = monomials_up_to(n, k);
      CHECK(static_cast<std::int64_t>(mons.size()) == binomial(n + k, k));
      CHECK(std::is_sorted(mons.begin(), mons.end(), GlexLess{}));
      CHECK(std::set<Exponent>(mons.begin(), mons.end()).size() == mons.size());
      for (std::size_t i = 0; i < mons.size(); ++i) CHECK(glex_position(mons[i]) == i);
    }
}

TEST_CASE("numerical rank") {
  CHECK(numerical_rank(Mat::Identity(5, 5)) == 5);
  CHECK(numerical_rank(Mat::Zero(4, 3)) == 0);
  std::mt19937_64 rng(3);
  const Vec u = complex_gaussian(6, rng), v = complex_gaussian(4, rng);
  CHECK(numerical_rank(u * v.transpose()) == 1);
  const Mat a = complex_gaussian(8, 5, rng);
  CHECK(null_space(a * complex_gaussian(5, 7, rng)).cols() == 2);
}

TEST_CASE("tensor from points") {
  SUBCASE("single power") {
    Mat z(1, 2);
    z << 1.0, 2.0;
    const SymTensor t = tensor_from_points(z, Vec::Ones(1), 2);
    CHECK(std::abs(t[{0}] - 1.0) < 1e-15);
    CHECK(std::abs(t[{1}] - 2.0) < 1e-15);
    CHECK(std::abs(t[{2}] - 4.0) < 1e-15);
  }
  SUBCASE("difference of squares gives x0 x1") {
    Mat z(2, 2);
    z << 1.0, 1.0, 1.0, -1.0;
    Vec w(2);
    w << 0.25, -0.25;
    const SymTensor t = tensor_from_points(z, w, 2);
    // moment convention: x0 x1 = 2 phi_(1) x0 x1
    CHECK(std::abs(t[{0}]) < 1e-15);
    CHECK(std::abs(t[{1}] - 0.5) < 1e-15);
    CHECK(std::abs(t[{2}]) < 1e-15);
  }
  SUBCASE("matches an explicit outer-product sum") {
    const int n = 2, d = 4, r = 5;
    const Mat z = support::generic_points(r, n, 11);
    Mat zz = z;
    zz.col(0) = Vec::LinSpaced(r, 0.5, 1.5);  // not dehomogenized on purpose
    const Vec w = support::generic_weights(r, 11);
    const SymTensor t = tensor_from_points(zz, w, d);
    const int m = n + 1;
    std::vector<Complex> full(m * m * m * m, 0.0);
    for (int p = 0; p < r; ++p)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          for (int c = 0; c < m; ++c)
            for (int e = 0; e < m; ++e)
              full[((a * m + b) * m + c) * m + e] += w(p) * zz(p, a) * zz(p, b) * zz(p, c) * zz(p, e);
    for (const Exponent& a : t.monomials()) {
      std::vector<int> idx;
      for (int k = 0; k < n; ++k) idx.insert(idx.end(), a[k], k + 1);
      idx.resize(d, 0);
      const Complex want = full[((idx[0] * m + idx[1]) * m + idx[2]) * m + idx[3]];
      CHECK(std::abs(t[a] - want) < 1e-12);
    }
  }
}

TEST_CASE("catalecticants") {
  const int n = 3, d = 4, r = 7;
  const Mat z = support::generic_points(r, n, 21);
  const Vec w = support::generic_weights(r, 21);
  const SymTensor t = tensor_from_points(z, w, d);
  for (int k = 0; k <= d; ++k) {
    const Mat want = manual_vandermonde(z, monomials_up_to(n, d - k)).transpose() * w.asDiagonal() *
                     manual_vandermonde(z, monomials_up_to(n, k));
    CHECK((catalecticant(t, k) - want).norm() < 1e-10 * want.norm());
  }
  CHECK(numerical_rank(catalecticant(t, 2)) == 7);
  CHECK((vandermonde(z, monomials_up_to(n, 2)) - manual_vandermonde(z, monomials_up_to(n, 2))).norm() < 1e-14);

  const auto h = hilbert_function(t);
  REQUIRE(h.size() == static_cast<std::size_t>(d + 1));
  CHECK(h[0] == 1);
  for (int k = 0; k <= d; ++k) CHECK(h[k] == h[d - k]);

  SymTensor bin(1, 6);
  bin.at({1}) = 1.0 / 6;
  bin.at({2}) = 1.0 / 15;
  CHECK(hilbert_function(bin) == std::vector<int>{1, 2, 3, 3, 3, 2, 1});

  Mat one(1, 4);
  one << 1.0, 0.5, -2.0, 3.0;
  const auto h1 = hilbert_function(tensor_from_points(one, Vec::Ones(1), 5));
  for (int v : h1) CHECK(v == 1);
}

TEST_CASE("regularity") {
  Mat e = Mat::Zero(4, 4);
  e.col(0).setOnes();
  for (int i = 1; i < 4; ++i) e(i, i) = 1.0;
  CHECK(regularity(e) == 1);

  Mat col = support::generic_points(3, 2, 5);
  col.row(2) = 0.3 * col.row(0) + 0.7 * col.row(1);
  CHECK(numerical_rank(manual_vandermonde(col, monomials_up_to(2, 1))) == 2);
  CHECK(numerical_rank(manual_vandermonde(col, monomials_up_to(2, 2))) == 3);
  CHECK(regularity(col) == 2);

  for (int n = 2; n <= 4; ++n) CHECK(regularity(support::generic_points(2 * n + 1, n, 40 + n)) == 2);
}

TEST_CASE("change of basis") {
  const int n = 2, d = 4, r = 4;
  const Mat z = support::generic_points(r, n, 31);
  const Vec w = support::generic_weights(r, 31);
  const SymTensor t = tensor_from_points(z, w, d);

  CHECK((apply_gl(t, Mat::Identity(3, 3)).coeffs() - t.coeffs()).norm() < 1e-13);

  std::mt19937_64 rng(9);
  const Mat m = complex_gaussian(3, 3, rng);
  // sum lambda (M z)^{(x)d}, built directly from the moved points
  const SymTensor want = tensor_from_points(z * m.transpose(), w, d);
  const SymTensor got = apply_gl(t, m);
  CHECK((got.coeffs() - want.coeffs()).norm() < 1e-11 * want.coeffs().norm());
  CHECK(hilbert_function(got) == hilbert_function(t));

  // a point of the moved tensor pulls back to the original
  Decomposition moved{z * m.transpose(), w};
  const Decomposition back = pull_back(moved, m, d);
  CHECK(support::match_error(z, back.points) < 1e-10);
  CHECK(reconstruction_residual(t, back) < 1e-10);

  const Mat g = random_gl(n, 17);
  CHECK((g.adjoint() * g - Mat::Identity(3, 3)).norm() < 1e-12);
  CHECK_THROWS_AS(apply_gl(t, Mat::Identity(2, 2)), Error);
}

TEST_CASE("essential variables") {
  const SymTensor mono = [] {
    SymTensor t(2, 4);
    t.at({1, 2}) = 1.0 / 12;  // x0 x1 x2^2
    return t;
  }();
  CHECK(essential_vars(mono).count == 3);

  Mat flat = support::generic_points(5, 3, 51);
  flat.col(3).setZero();
  const SymTensor t = tensor_from_points(flat, support::generic_weights(5, 51), 4);
  const EssentialVars ev = essential_vars(t);
  CHECK(ev.count == numerical_rank(catalecticant(t, 1)));
  CHECK(ev.count == 3);
  CHECK(ev.reduced.n() == 2);

  const SymTensor g = tensor_from_points(support::generic_points(5, 4, 52), support::generic_weights(5, 52), 4);
  CHECK(essential_vars(g).count == 5);
}

TEST_CASE("reconstruction residual") {
  const Mat z = support::generic_points(3, 2, 61);
  const Vec w = support::generic_weights(3, 61);
  const SymTensor t = tensor_from_points(z, w, 3);
  CHECK(reconstruction_residual(t, {z, w}) < 1e-14);
  CHECK(reconstruction_residual(t, {z, 2.0 * w}) == doctest::Approx(1.0).epsilon(1e-12));
}
