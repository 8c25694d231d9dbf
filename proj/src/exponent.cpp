#include "waring/exponent.hpp"

#include <algorithm>
#include <numeric>

namespace waring {

int degree(const Exponent& a) { return std::accumulate(a.begin(), a.end(), 0); }

Exponent operator+(const Exponent& a, const Exponent& b) {
  Exponent c(a);
  for (std::size_t j = 0; j < c.size(); ++j) c[j] += b[j];
  return c;
}

Exponent unit(int n, int i) {
  Exponent e(static_cast<std::size_t>(n), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return e;
}

bool glex_less(const Exponent& a, const Exponent& b) {
  const int da = degree(a), db = degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

// Number of exponents in m variables with total degree exactly t.
std::int64_t compositions(int t, int m) {
  if (m == 0) return t == 0 ? 1 : 0;
  return binomial(t + m - 1, m - 1);
}

}  // namespace

std::size_t glex_position(const Exponent& a) {
  const int n = static_cast<int>(a.size());
  const int k = degree(a);
  std::int64_t pos = k == 0 ? 0 : binomial(n + k - 1, n);
  int rem = k;
  for (int j = 0; j < n; ++j) {
    for (int v = a[static_cast<std::size_t>(j)] + 1; v <= rem; ++v)
      pos += compositions(rem - v, n - j - 1);
    rem -= a[static_cast<std::size_t>(j)];
  }
  return static_cast<std::size_t>(pos);
}

namespace {

void fill_degree(int n, int j, int rem, Exponent& cur, std::vector<Exponent>& out) {
  if (j == n - 1) {
    cur[static_cast<std::size_t>(j)] = rem;
    out.push_back(cur);
    return;
  }
  for (int v = rem; v >= 0; --v) {
    cur[static_cast<std::size_t>(j)] = v;
    fill_degree(n, j + 1, rem - v, cur, out);
  }
}

}  // namespace

std::vector<Exponent> monomials_of_degree(int n, int k) {
  std::vector<Exponent> out;
  if (n <= 0 || k < 0) return out;
  Exponent cur(static_cast<std::size_t>(n), 0);
  fill_degree(n, 0, k, cur, out);
  return out;
}

std::vector<Exponent> monomials_up_to(int n, int k) {
  std::vector<Exponent> out;
  for (int t = 0; t <= k; ++t) {
    auto layer = monomials_of_degree(n, t);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::string to_string(const Exponent& a) {
  std::string s;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] == 0) continue;
    if (!s.empty()) s += '*';
    s += 'x' + std::to_string(j + 1);
    if (a[j] > 1) s += '^' + std::to_string(a[j]);
  }
  return s.empty() ? "1" : s;
}

}  // namespace waring
