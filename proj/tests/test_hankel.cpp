#include <doctest.h>

#include <set>

#include "support.hpp"
#include "waring/error.hpp"
#include "waring/hankel.hpp"

using namespace waring;

namespace {

// The binary example in the scaling where both nonzero moments are 1.
SymTensor binary_example() {
  SymTensor t(1, 6);
  t.at({1}) = 1.0;
  t.at({2}) = 1.0;
  return t;
}

// True moments y_g = sum lambda z^g for every g in vars.
MomentAssignment true_moments(const Mat& z, const Vec& w, const std::vector<Exponent>& vars) {
  MomentAssignment y;
  for (const Exponent& g : vars) {
    Complex s = 0.0;
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
      Complex p = w(i);
      for (std::size_t k = 0; k < g.size(); ++k) p *= std::pow(z(i, k + 1), g[k]);
      s += p;
    }
    y[g] = s;
  }
  return y;
}

std::vector<Exponent> exps(std::initializer_list<Exponent> l) { return l; }

}  // namespace

TEST_CASE("hankel entries") {
  const HankelMatrix h(binary_example());
  // rows |a| <= 6, columns |b| <= 7; unknowns y_{x^7} .. y_{x^13}
  const HankelEntry e = h.entry({0}, {1});
  CHECK(e.known);
  CHECK(std::abs(e.value - 1.0) < 1e-15);
  CHECK(!h.entry({3}, {4}).known);
  CHECK(h.entry({3}, {4}).moment == Exponent{7});
  CHECK(h.entry({6}, {6}).moment == Exponent{12});

  // n = 2, d = 4: unknown entries are exactly the exponents of size 5..9
  const SymTensor t = tensor_from_points(support::generic_points(3, 2, 1), Vec::Ones(3), 4);
  const HankelMatrix h2(t);
  std::set<Exponent> unknown;
  for (const auto& a : h2.row_index())
    for (const auto& b : h2.col_index()) {
      const HankelEntry en = h2.entry(a, b);
      if (en.known)
        CHECK(std::abs(en.value - t[a + b]) < 1e-15);
      else
        unknown.insert(en.moment);
    }
  std::set<Exponent> want;
  for (int k = 5; k <= 9; ++k)
    for (const auto& g : monomials_of_degree(2, k)) want.insert(g);
  CHECK(unknown == want);
  CHECK_THROWS_AS(h2.value({5, 0}, {}), Error);
}

TEST_CASE("find_basis") {
  CHECK(find_basis(binary_example()).elements() == exps({{0}, {1}, {2}}));

  const SymTensor g4 = tensor_from_points(support::generic_points(4, 2, 2), support::generic_weights(4, 2), 4);
  CHECK(find_basis(g4).elements() == exps({{0, 0}, {1, 0}, {0, 1}, {2, 0}}));

  // six points in the plane x3 = 0 and one off it
  Mat z = support::generic_points(7, 3, 3);
  z.block(0, 3, 6, 1).setZero();
  const MonomialBasis b = find_basis(tensor_from_points(z, Vec::Ones(7), 4));
  CHECK(b.elements() ==
        exps({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0}, {1, 1, 0}, {0, 2, 0}}));
  CHECK(b.connected_to_one());

  for (std::uint64_t s = 0; s < 4; ++s) {
    const SymTensor t = tensor_from_points(support::generic_points(9, 4, 10 + s), Vec::Ones(9), 4);
    const MonomialBasis fb = find_basis(t);
    CHECK(fb.size() == 9);
    CHECK(fb.connected_to_one());
    std::vector<Exponent> rows = fb.elements();
    CHECK(numerical_rank(hankel(t).evaluate(rows, rows, {})) == 9);
  }
  CHECK(find_basis(SymTensor(2, 4)).size() == 0);
}

TEST_CASE("moment variables") {
  CHECK(moment_variables(first_monomials(2, 4), 2, 4) == exps({{5, 0}, {4, 1}}));
  CHECK(moment_variables(first_monomials(2, 3), 2, 4).empty());
  for (int n = 2; n <= 6; ++n)
    CHECK(static_cast<std::int64_t>(moment_variables(first_monomials(n, 2 * n + 1), n, 4).size()) ==
          binomial(n + 2, 3));
}

TEST_CASE("determinantal residuals") {
  const int n = 2, r = 4;
  const Mat z = support::generic_points(r, n, 20);
  const Vec w = support::generic_weights(r, 20);
  const SymTensor t = tensor_from_points(z, w, 4);
  const MonomialBasis b = first_monomials(n, r);
  const auto vars = moment_variables(b, n, 4);
  const HankelMatrix h(t);

  const DeterminantalResiduals good = determinantal_residuals(h, b, true_moments(z, w, vars));
  for (double v : good.values) CHECK(v <= 1e-7 * good.scale);

  MomentAssignment junk;
  std::mt19937_64 rng(5);
  for (const auto& g : vars) junk[g] = complex_gaussian(1, rng)(0);
  const DeterminantalResiduals bad = determinantal_residuals(h, b, junk);
  CHECK(*std::max_element(bad.values.begin(), bad.values.end()) > 1e-3 * bad.scale);

  // no unknowns at all: B of degree 1 and a tensor of rank |B|
  const Mat z3 = support::generic_points(3, n, 21);
  const SymTensor t3 = tensor_from_points(z3, Vec::Ones(3), 4);
  const DeterminantalResiduals none = determinantal_residuals(HankelMatrix(t3), first_monomials(n, 3), {});
  for (double v : none.values) CHECK(v <= 1e-9);
}

TEST_CASE("multiplication matrices") {
  SUBCASE("rank one") {
    Mat z(1, 3);
    z << 1.0, 0.5, -2.0;
    const SymTensor t = tensor_from_points(z, Vec::Ones(1), 4);
    const MultiplicationMatrices m = multiplication_matrices(HankelMatrix(t), first_monomials(2, 1), {});
    REQUIRE(m.mats.size() == 2);
    CHECK(std::abs(m.mats[0](0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(m.mats[1](0, 0) + 2.0) < 1e-14);
  }
  SUBCASE("binary, displayed last row") {
    const Complex y7(0.7, 0.2), y8(-1.1, 0.4), y9(0.3, -0.9);
    const MomentAssignment y{{{7}, y7}, {{8}, y8}, {{9}, y9}};
    const MultiplicationMatrices m = multiplication_matrices(HankelMatrix(binary_example()), first_monomials(1, 5), y);
    const Mat& m1 = m.mats[0];
    // shift structure above the last row
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 5; ++j) CHECK(std::abs(m1(i, j) - (j == i + 1 ? 1.0 : 0.0)) < 1e-12);
    const Complex want[5] = {y7, -y7, y7, y9 / y7 - y8 * y8 / (y7 * y7), y8 / y7};
    for (int j = 0; j < 5; ++j) CHECK(std::abs(m1(4, j) - want[j]) < 1e-12);
  }
  SUBCASE("true moments commute and give the points back") {
    const int n = 3, r = 6;
    const Mat z = support::generic_points(r, n, 30);
    const Vec w = support::generic_weights(r, 30);
    const SymTensor t = tensor_from_points(z, w, 4);
    const MonomialBasis b = first_monomials(n, r);
    const auto y = true_moments(z, w, moment_variables(b, n, 4));
    const MultiplicationMatrices m = multiplication_matrices(HankelMatrix(t), b, y);
    double norm = 0.0;
    for (const Mat& a : m.mats) norm = std::max(norm, a.norm());
    CHECK(commuting_residuals(m) <= 1e-7 * norm * norm);
    const Decomposition d = extract_decomposition(m, 0);
    CHECK(support::match_error(z, d.points) < 1e-8);
  }
  SUBCASE("commutator of random matrices") {
    std::mt19937_64 rng(4);
    MultiplicationMatrices m;
    m.basis = first_monomials(2, 3);
    m.mats = {complex_gaussian(3, 3, rng), complex_gaussian(3, 3, rng)};
    CHECK(commuting_residuals(m) > 1e-2);
    m.mats.resize(1);
    CHECK(commuting_residuals(m) == 0.0);
  }
}

TEST_CASE("binary decompositions") {
  const SymTensor t = binary_example();
  try {
    binary_decompose(t, 3, 0);
    FAIL("s = 3 should be defective");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Defective);
  }
  try {
    binary_decompose(t, 4, 0);
    FAIL("s = 4 should be singular");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SingularPrincipalBlock);
  }
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const BinaryResult r5 = binary_decompose(t, 5, seed);
    CHECK(r5.free_parameters == 3);
    CHECK(r5.residual < 1e-8);
    CHECK(r5.decomposition.points.rows() == 5);
    const BinaryResult r6 = binary_decompose(t, 6, seed);
    CHECK(r6.free_parameters == 5);
    CHECK(r6.residual < 1e-8);
  }
  // supplied parameters are used as given
  const MomentAssignment p{{{7}, 1.0}, {{8}, 0.5}, {{9}, -0.25}};
  const BinaryResult rp = binary_decompose(t, 5, 99, p);
  CHECK(rp.params.at({8}) == Complex(0.5));
  CHECK(rp.residual < 1e-8);
}
