#include "waring/finite_field.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <mutex>
#include <thread>

#include "waring/error.hpp"
#include "waring/linear_solver.hpp"

namespace waring {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  if (p <= (1ULL << 32)) return (a * b) % p;
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw Error(Errc::Singular, "zero has no inverse mod p");
  return powmod(a, p - 2, p);
}

std::uint64_t reduce(long long v, std::uint64_t p) {
  const long long m = static_cast<long long>(p);
  long long r = v % m;
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
    if (p % q == 0) return p == q;
  std::uint64_t d = p - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases decide primality for all p < 2^64.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, p);
    if (x == 1 || x == p - 1) continue;
    bool witness = true;
    for (int k = 1; k < s && witness; ++k) {
      x = mulmod(x, x, p);
      if (x == p - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

FFMatrix::FFMatrix(std::uint64_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

namespace {

void require_prime(std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not an odd prime");
}

// row -= f * pivot over the columns from `from` on.
void axpy(std::vector<std::uint64_t>& row, const std::vector<std::uint64_t>& pivot, std::uint64_t f,
          std::size_t from, std::uint64_t p) {
  const std::uint64_t neg = (p - f) % p;
  for (std::size_t c = from; c < row.size(); ++c)
    if (pivot[c]) row[c] = (row[c] + mulmod(neg, pivot[c], p)) % p;
}

// Inverse of a square matrix mod p, or empty when singular. Also returns det.
std::vector<std::vector<std::uint64_t>> invert(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p,
                                               std::uint64_t& det) {
  const std::size_t n = a.size();
  std::vector<std::vector<std::uint64_t>> inv(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) {
      det = 0;
      return {};
    }
    if (piv != c) {
      std::swap(a[piv], a[c]);
      std::swap(inv[piv], inv[c]);
      det = (p - det) % p;
    }
    det = mulmod(det, a[c][c], p);
    const std::uint64_t s = invmod(a[c][c], p);
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] = mulmod(a[c][k], s, p);
      inv[c][k] = mulmod(inv[c][k], s, p);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const std::uint64_t f = a[r][c];
      axpy(a[r], a[c], f, 0, p);
      axpy(inv[r], inv[c], f, 0, p);
    }
  }
  return inv;
}

}  // namespace

int ff_rank(const FFMatrix& m) {
  const std::uint64_t p = m.prime();
  require_prime(p);
  const std::size_t cols = m.cols();
  // Echelon rows keyed by pivot column, each scaled to a leading 1.
  std::vector<std::vector<std::uint64_t>> basis(cols);
  std::size_t rank = 0;
  std::vector<std::uint64_t> row(cols);
  for (std::size_t r = 0; r < m.rows() && rank < cols; ++r) {
    row.assign(m.row(r), m.row(r) + cols);
    for (std::size_t c = 0; c < cols; ++c) {
      if (row[c] == 0) continue;
      if (basis[c].empty()) {
        const std::uint64_t s = invmod(row[c], p);
        for (std::size_t k = c; k < cols; ++k) row[k] = mulmod(row[k], s, p);
        basis[c] = row;
        ++rank;
        break;
      }
      axpy(row, basis[c], row[c], c, p);
    }
  }
  return static_cast<int>(rank);
}

std::uint64_t ff_determinant(const FFMatrix& m) {
  require_prime(m.prime());
  if (m.rows() != m.cols()) throw Error(Errc::DimensionMismatch, "determinant needs a square matrix");
  std::vector<std::vector<std::uint64_t>> a(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) a[r].assign(m.row(r), m.row(r) + m.cols());
  std::uint64_t det = 0;
  invert(std::move(a), m.prime(), det);
  return det;
}

FFPointSet random_ff_points(int n, int r, std::uint64_t p, std::uint64_t seed) {
  require_prime(p);
  FFPointSet ps;
  ps.p = p;
  ps.n = n;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  std::set<std::vector<std::uint64_t>> seen;
  while (static_cast<int>(ps.points.size()) < r) {
    std::vector<std::uint64_t> z(static_cast<std::size_t>(n + 1));
    z[0] = 1;
    for (int i = 1; i <= n; ++i) z[static_cast<std::size_t>(i)] = dist(rng);
    if (seen.insert(z).second) ps.points.push_back(z);
  }
  return ps;
}

FFMatrix ff_assemble(int n, int r, const FFPointSet& pts, bool unpaired_only) {
  const std::uint64_t p = pts.p;
  require_prime(p);
  if (pts.n != n) throw Error(Errc::DimensionMismatch, "point dimension differs from n");
  const MonomialBasis b = first_monomials(n, r);
  const auto vars = moment_variables(b, n, 4);
  const auto eqs = linear_equations(b, unpaired_only);

  // phi_g = sum_i z_i^g for |g| <= 4.
  std::map<Exponent, std::uint64_t> phi;
  for (const auto& g : monomials_up_to(n, 4)) {
    std::uint64_t s = 0;
    for (const auto& z : pts.points) {
      std::uint64_t t = 1;
      for (int i = 0; i < n; ++i) t = mulmod(t, powmod(z[static_cast<std::size_t>(i + 1)], static_cast<std::uint64_t>(g[static_cast<std::size_t>(i)]), p), p);
      s = (s + t) % p;
    }
    phi[g] = s;
  }
  const std::size_t rr = b.size();
  std::vector<std::vector<std::uint64_t>> hbb(rr, std::vector<std::uint64_t>(rr));
  for (std::size_t i = 0; i < rr; ++i)
    for (std::size_t j = 0; j < rr; ++j) hbb[i][j] = phi.at(b[i] + b[j]);
  std::uint64_t det = 0;
  const auto inv = invert(hbb, p, det);
  if (det == 0)
    throw Error(Errc::SingularPrincipalBlock, "principal Hankel block is singular mod p; redraw points", "ff_assemble");

  std::map<Exponent, int> var_of;
  for (std::size_t k = 0; k < vars.size(); ++k) var_of[vars[k]] = static_cast<int>(k);
  std::map<Exponent, std::vector<std::uint64_t>> solved;
  auto cofactors = [&](const Exponent& theta) -> const std::vector<std::uint64_t>& {
    auto it = solved.find(theta);
    if (it != solved.end()) return it->second;
    std::vector<std::uint64_t> x(rr, 0);
    for (std::size_t i = 0; i < rr; ++i) {
      std::uint64_t s = 0;
      for (std::size_t k = 0; k < rr; ++k) s = (s + mulmod(inv[i][k], phi.at(b[k] + theta), p)) % p;
      x[i] = mulmod(s, det, p);  // det * H^{-1} h_theta
    }
    return solved.emplace(theta, std::move(x)).first->second;
  };

  FFMatrix a(p, eqs.size(), vars.size());
  auto add = [&](std::size_t row, const Exponent& eta, const Exponent& theta, bool positive, bool corner) {
    const auto& x = cofactors(theta);
    auto put = [&](const Exponent& g, std::uint64_t c) {
      if (degree(g) <= 4) return;  // constants only feed b
      const auto col = static_cast<std::size_t>(var_of.at(g));
      const std::uint64_t v = positive ? c : (p - c) % p;
      a(row, col) = (a(row, col) + v) % p;
    };
    for (std::size_t k = 0; k < rr; ++k) put(eta + b[k], (p - x[k]) % p);
    if (corner) put(eta + theta, det);
  };
  for (std::size_t row = 0; row < eqs.size(); ++row) {
    const auto& e = eqs[row];
    add(row, e.row(), e.col(), true, !e.paired);
    if (e.paired) add(row, e.alpha + unit(n, e.j), e.beta + unit(n, e.i), false, false);
  }
  return a;
}

const char* status_name(FormatStatus s) {
  switch (s) {
    case FormatStatus::FullColumnRank: return "FullColumnRank";
    case FormatStatus::Deficient: return "Deficient";
    case FormatStatus::NotEnoughEquations: return "NotEnoughEquations";
  }
  return "?";
}

std::string FFCertificate::to_string() const {
  std::ostringstream os;
  os << "ffcert v1\n";
  os << "p=" << points.p << " n=" << points.n << " r=" << r << "\n";
  for (const auto& z : points.points) {
    for (std::size_t k = 0; k < z.size(); ++k) os << (k ? " " : "") << z[k];
    os << "\n";
  }
  if (unpaired_only) os << "equations=unpaired\n";
  os << "rank=" << rank << " columns=" << columns << "\n";
  return os.str();
}

FFCertificate FFCertificate::parse(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto fail = [](const std::string& why) { return Error(Errc::Parse, "ffcert: " + why); };
  if (!std::getline(is, line) || line != "ffcert v1") throw fail("line 1: expected 'ffcert v1'");
  FFCertificate c;
  if (!std::getline(is, line)) throw fail("line 2: missing header");
  unsigned long long p = 0;
  int n = 0, r = 0;
  if (std::sscanf(line.c_str(), "p=%llu n=%d r=%d", &p, &n, &r) != 3) throw fail("line 2: expected 'p=<p> n=<n> r=<r>'");
  c.points.p = p;
  c.points.n = n;
  c.r = r;
  for (int k = 0; k < r; ++k) {
    if (!std::getline(is, line)) throw fail("line " + std::to_string(k + 3) + ": missing point row");
    std::istringstream ls(line);
    std::vector<std::uint64_t> z;
    unsigned long long v;
    while (ls >> v) z.push_back(v);
    if (static_cast<int>(z.size()) != n + 1) throw fail("line " + std::to_string(k + 3) + ": expected n+1 integers");
    c.points.points.push_back(z);
  }
  if (!std::getline(is, line)) throw fail("missing rank line");
  if (line == "equations=unpaired") {
    c.unpaired_only = true;
    if (!std::getline(is, line)) throw fail("missing rank line");
  }
  if (std::sscanf(line.c_str(), "rank=%d columns=%d", &c.rank, &c.columns) != 2)
    throw fail("expected 'rank=<k> columns=<|Y|>'");
  return c;
}

bool FFCertificate::reverify() const {
  const FFMatrix a = ff_assemble(points.n, r, points, unpaired_only);
  return static_cast<int>(a.cols()) == columns && rank == columns && ff_rank(a) == columns;
}

std::pair<int, int> structural_shape(int n, int r, bool unpaired_only) {
  const MonomialBasis b = first_monomials(n, r);
  return {static_cast<int>(linear_equations(b, unpaired_only).size()),
          static_cast<int>(moment_variables(b, n, 4).size())};
}

VerifyResult verify_points(const FFPointSet& points, int r, bool unpaired_only) {
  VerifyResult v;
  const FFMatrix a = ff_assemble(points.n, r, points, unpaired_only);
  v.rows = static_cast<int>(a.rows());
  v.columns = static_cast<int>(a.cols());
  if (v.rows < v.columns) {
    v.status = FormatStatus::NotEnoughEquations;
    return v;
  }
  v.rank = ff_rank(a);
  v.trials_used = 1;
  v.status = v.rank == v.columns ? FormatStatus::FullColumnRank : FormatStatus::Deficient;
  v.certificate = {points, r, unpaired_only, v.rank, v.columns};
  return v;
}

VerifyResult verify_format(int n, int r, std::uint64_t p, std::uint64_t seed, int trials, bool unpaired_only) {
  require_prime(p);
  if (n < 1 || r < n + 2 || r > binomial(n + 2, 2))
    throw Error(Errc::OutOfRange, "need n+1 < r <= C(n+2,2)");
  VerifyResult best;
  const auto [rows, cols] = structural_shape(n, r, unpaired_only);
  best.rows = rows;
  best.columns = cols;
  if (rows < cols) {
    best.status = FormatStatus::NotEnoughEquations;
    return best;
  }
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    VerifyResult v;
    try {
      v = verify_points(random_ff_points(n, r, p, s), r, unpaired_only);
    } catch (const Error& e) {
      if (e.code() != Errc::SingularPrincipalBlock) throw;
      v = verify_points(random_ff_points(n, r, p, s ^ 0xa5a5a5a5a5a5a5a5ULL), r, unpaired_only);
    }
    v.trials_used = t + 1;
    if (v.status == FormatStatus::FullColumnRank) return v;
    if (v.rank >= best.rank) best = v;
  }
  best.trials_used = trials;
  best.status = FormatStatus::Deficient;
  return best;
}

TableRow reproduce_row(int n, std::uint64_t p, std::uint64_t seed, int trials) {
  TableRow row;
  row.n = n;
  // Largest r first: the first full-rank hit is the maximum.
  for (int r = static_cast<int>(binomial(n + 2, 2)); r >= n + 2; --r) {
    const auto [rows, cols] = structural_shape(n, r);
    if (rows < cols) continue;
    if (verify_format(n, r, p, seed, trials).status == FormatStatus::FullColumnRank) {
      row.r_max = r;
      break;
    }
  }
  for (int c = n; c >= 1; --c) {
    int r = 0;
    for (int j = 0; j <= c; ++j) r += n - j + 1;
    if (r > binomial(n + 2, 2)) continue;
    const auto [rows, cols] = structural_shape(n, r, true);
    if (rows < cols) continue;
    if (verify_format(n, r, p, seed, trials, true).status == FormatStatus::FullColumnRank) {
      row.c_max = c;
      row.r_prime = r;
      break;
    }
  }
  return row;
}

std::vector<TableRow> reproduce_table(int n_min, int n_max, std::uint64_t p, std::uint64_t seed, int trials,
                                      int jobs) {
  if (n_min < 2 || n_max < n_min) throw Error(Errc::OutOfRange, "need 2 <= n_min <= n_max");
  std::vector<TableRow> rows(static_cast<std::size_t>(n_max - n_min + 1));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (int k = next++; k < static_cast<int>(rows.size()); k = next++) {
      try {
        rows[static_cast<std::size_t>(k)] = reproduce_row(n_min + k, p, seed, trials);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < std::max(jobs, 1); ++j) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

__int128 exact_determinant(std::vector<std::vector<long long>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<__int128>> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw Error(Errc::DimensionMismatch, "determinant needs a square matrix");
    a[i].assign(m[i].begin(), m[i].end());
  }
  if (n == 0) return 1;
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[s], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace waring
