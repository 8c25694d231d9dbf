#include <doctest.h>

#include "support.hpp"
#include "waring/error.hpp"
#include "waring/finite_field.hpp"
#include "waring/linear_solver.hpp"

using namespace waring;

namespace {

bool trial_division(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

// Laplace expansion mod p, only for tiny matrices.
std::uint64_t laplace(const std::vector<std::vector<std::uint64_t>>& m, std::uint64_t p) {
  const std::size_t k = m.size();
  if (k == 1) return m[0][0] % p;
  std::uint64_t acc = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::vector<std::uint64_t>> sub;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<std::uint64_t> row;
      for (std::size_t cc = 0; cc < k; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      sub.push_back(row);
    }
    const std::uint64_t term = static_cast<std::uint64_t>((unsigned __int128)m[0][c] * laplace(sub, p) % p);
    acc = c % 2 ? (acc + p - term) % p : (acc + term) % p;
  }
  return acc;
}

// Largest k with a nonzero k x k minor.
int minor_rank(const FFMatrix& a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  for (std::size_t k = std::min(rows, cols); k > 0; --k) {
    std::vector<std::size_t> rsel(k), csel(k);
    std::function<bool(std::size_t, std::size_t, std::size_t, std::size_t)> pick;
    pick = [&](std::size_t ri, std::size_t rstart, std::size_t ci, std::size_t cstart) -> bool {
      if (ri < k) {
        for (std::size_t r = rstart; r < rows; ++r) {
          rsel[ri] = r;
          if (pick(ri + 1, r + 1, ci, cstart)) return true;
        }
        return false;
      }
      if (ci < k) {
        for (std::size_t c = cstart; c < cols; ++c) {
          csel[ci] = c;
          if (pick(ri, rstart, ci + 1, c + 1)) return true;
        }
        return false;
      }
      std::vector<std::vector<std::uint64_t>> m(k, std::vector<std::uint64_t>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = a(rsel[i], csel[j]);
      return laplace(m, a.prime()) != 0;
    };
    if (pick(0, 0, 0, 0)) return static_cast<int>(k);
  }
  return 0;
}

}  // namespace

TEST_CASE("primes and modular arithmetic") {
  for (std::uint64_t p = 0; p < 2000; ++p) CHECK(is_prime(p) == trial_division(p));
  CHECK(is_prime(kDefaultPrime));
  CHECK(is_prime((1ULL << 61) - 1));
  CHECK(!is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(!is_prime(4));

  std::mt19937_64 rng(1);
  for (std::uint64_t p : std::vector<std::uint64_t>{kDefaultPrime, (1ULL << 61) - 1, 18446744073709551557ULL}) {
    for (int k = 0; k < 200; ++k) {
      const std::uint64_t a = rng() % p, b = rng() % p;
      CHECK(mulmod(a, b, p) == static_cast<std::uint64_t>((unsigned __int128)a * b % p));
      if (a) CHECK(mulmod(a, invmod(a, p), p) == 1);
    }
    CHECK(powmod(3, p - 1, p) == 1);
  }
  CHECK(reduce(-1, 7) == 6);
  CHECK(reduce(15, 7) == 1);
}

TEST_CASE("rank mod p") {
  FFMatrix id(101, 5, 5);
  for (int i = 0; i < 5; ++i) id(i, i) = 1;
  CHECK(ff_rank(id) == 5);
  CHECK(ff_determinant(id) == 1);

  std::mt19937_64 rng(2);
  FFMatrix dup(101, 4, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) dup(i, j) = rng() % 101;
  for (int j = 0; j < 4; ++j) dup(3, j) = dup(1, j);
  CHECK(ff_rank(dup) < 4);
  CHECK(ff_determinant(dup) == 0);

  FFMatrix big(kDefaultPrime, 30, 20);
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < 20; ++j) big(i, j) = rng() % kDefaultPrime;
  CHECK(ff_rank(big) == 20);

  // against minors, including a deficient fixture over a small field
  for (std::uint64_t p : std::vector<std::uint64_t>{kDefaultPrime, 5}) {
    for (int trial = 0; trial < 5; ++trial) {
      FFMatrix m(p, 6, 4);
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = rng() % p;
      if (trial % 2)
        for (int i = 0; i < 6; ++i) m(i, 3) = (m(i, 0) + 2 * m(i, 1)) % p;
      CHECK(ff_rank(m) == minor_rank(m));
      FFMatrix sq(p, 4, 4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) sq(i, j) = m(i, j);
      std::vector<std::vector<std::uint64_t>> v(4, std::vector<std::uint64_t>(4));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) v[i][j] = m(i, j);
      CHECK(ff_determinant(sq) == laplace(v, p));
    }
  }
  CHECK_THROWS_AS(ff_rank(FFMatrix(4, 2, 2)), Error);
}

TEST_CASE("exact determinant") {
  CHECK(exact_determinant({{2, 1}, {1, 1}}) == 1);
  // Vandermonde: prod (x_j - x_i)
  const std::vector<long long> x{-2, 0, 1, 3, 7};
  std::vector<std::vector<long long>> v;
  __int128 want = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<long long> row;
    long long p = 1;
    for (std::size_t j = 0; j < x.size(); ++j, p *= x[i]) row.push_back(p);
    v.push_back(row);
    for (std::size_t j = i + 1; j < x.size(); ++j) want *= x[j] - x[i];
  }
  CHECK(exact_determinant(v) == want);
  CHECK(exact_determinant({{1, 2}, {2, 4}}) == 0);
}

TEST_CASE("assembly over F_p") {
  CHECK(structural_shape(2, 4) == std::pair<int, int>{2, 2});
  CHECK(structural_shape(4, 9, true) == std::pair<int, int>{24, 20});
  const FFPointSet pts = random_ff_points(4, 9, kDefaultPrime, 3);
  CHECK(pts.points.size() == 9);
  for (const auto& z : pts.points) CHECK(z[0] == 1);
  const FFMatrix a = ff_assemble(4, 9, pts, true);
  CHECK(a.rows() == 24);
  CHECK(a.cols() == 20);
}

TEST_CASE("float and F_p matrices agree on small integer points") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> small(-3, 3);
  for (auto [n, r] : std::vector<std::pair<int, int>>{{2, 4}, {3, 6}, {3, 7}}) {
    for (int trial = 0; trial < 3; ++trial) {
      Mat z(r, n + 1);
      FFPointSet pts;
      pts.n = n;
      for (int i = 0; i < r; ++i) {
        std::vector<std::uint64_t> row{1};
        z(i, 0) = 1.0;
        for (int k = 1; k <= n; ++k) {
          const int v = small(rng);
          z(i, k) = v;
          row.push_back(reduce(v, pts.p));
        }
        pts.points.push_back(row);
      }
      const SymTensor phi = tensor_from_points(z, Vec::Ones(r), 4);
      const MonomialBasis b = first_monomials(n, r);
      if (std::abs(determinant(hankel(phi).evaluate(b.elements(), b.elements(), {}))) < 0.5) continue;
      const LinSystem sys = assemble_linear_system(phi, b);
      const FFMatrix a = ff_assemble(n, r, pts);
      REQUIRE(a.rows() == static_cast<std::size_t>(sys.A.rows()));
      REQUIRE(a.cols() == static_cast<std::size_t>(sys.A.cols()));
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
          const double v = sys.A(i, j).real();
          CHECK(std::abs(v - std::round(v)) < 1e-6 * std::max(1.0, std::abs(v)));
          CHECK(a(i, j) == reduce(std::llround(v), pts.p));
        }
    }
  }
}

TEST_CASE("format verification") {
  const VerifyResult ok = verify_format(4, 11);
  CHECK(ok.status == FormatStatus::FullColumnRank);
  CHECK(ok.rank == ok.columns);
  CHECK(verify_format(2, 5).status == FormatStatus::NotEnoughEquations);
  CHECK_THROWS_AS(verify_format(3, 4), Error);   // r <= n+1
  CHECK_THROWS_AS(verify_format(2, 7), Error);   // r > C(n+2,2)
  CHECK_THROWS_AS(verify_format(2, 4, 4), Error);

  // certificate round trip
  const FFCertificate back = FFCertificate::parse(ok.certificate.to_string());
  CHECK(back.points.points == ok.certificate.points.points);
  CHECK(back.reverify());
  CHECK(back.to_string() == ok.certificate.to_string());

  // two equal points make the principal block singular; the witness is gone
  FFCertificate bad = back;
  bad.points.points[1] = bad.points.points[0];
  bool rejected = false;
  try {
    rejected = !bad.reverify();
  } catch (const Error&) {
    rejected = true;
  }
  CHECK(rejected);

  CHECK_THROWS_AS(FFCertificate::parse("nonsense\n"), Error);
  CHECK_THROWS_AS(FFCertificate::parse("ffcert v1\np=7 n=2\n"), Error);
}

TEST_CASE("table rows") {
  const TableRow two = reproduce_row(2, kDefaultPrime, 0, 3);
  CHECK(two.r_max == 4);
  const TableRow five = reproduce_row(5, kDefaultPrime, 0, 3);
  CHECK(five.r_max == 15);
  const auto rows = reproduce_table(2, 4, kDefaultPrime, 0, 3, 2);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].n == 2);
  CHECK(rows[2].r_max == 11);
  CHECK(rows[2].c_max == 1);
  CHECK(rows[2].r_prime == 9);
}
