#include "waring/monomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "waring/error.hpp"
#include "waring/jennrich.hpp"

namespace waring {

MonomialSpec::MonomialSpec(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  if (degrees_.size() < 2) throw Error(Errc::OutOfRange, "a monomial spec needs at least d0 and d1");
  if (degrees_[0] < 1) throw Error(Errc::OutOfRange, "d0 must be at least 1");
  if (!std::is_sorted(degrees_.begin(), degrees_.end()))
    throw Error(Errc::OutOfRange, "degrees must be non-decreasing (d0 <= d1 <= ... <= dn)");
  for (int v : degrees_) d_ += v;
}

SymTensor MonomialSpec::tensor() const {
  SymTensor t(n(), d());
  t.at(dbar()) = 1.0;
  return t;
}

std::string MonomialSpec::to_string() const {
  std::string s;
  for (std::size_t j = 0; j < degrees_.size(); ++j) {
    if (j) s += "*";
    s += "x" + std::to_string(j);
    if (degrees_[j] != 1) s += "^" + std::to_string(degrees_[j]);
  }
  return s;
}

MonomialBasis monomial_basis(const MonomialSpec& spec) {
  const Exponent top = spec.dbar();
  std::vector<Exponent> el;
  Exponent a(top.size(), 0);
  while (true) {
    el.push_back(a);
    std::size_t k = 0;
    while (k < a.size() && a[k] == top[k]) a[k++] = 0;
    if (k == a.size()) break;
    ++a[k];
  }
  return MonomialBasis(spec.n(), el);
}

GradedVarSet parameter_set(const MonomialSpec& spec) {
  GradedVarSet g;
  const MonomialBasis b = monomial_basis(spec);
  g.vars = moment_variables(b, spec.n(), spec.d());
  const Exponent top = spec.dbar();
  const int step = spec.d0() + 1;
  for (const auto& v : g.vars) {
    const int excess = degree(v) - spec.d();
    const int k = (excess + step - 1) / step;
    int l = 0;
    for (std::size_t i = 0; i < v.size(); ++i) l += v[i] > top[i];
    g.grade.push_back(k);
    g.exceed.push_back(l);
    g.max_grade = std::max(g.max_grade, k);
    if (l == 1) g.params.push_back(v);
  }
  return g;
}

namespace {

// Monomials in a1..an of degree exactly t with a_j <= d_j; summing over
// degrees <= t gives h_I(t) once a0 absorbs the remainder.
std::int64_t bounded_count(const Exponent& top, std::size_t from, int t) {
  if (t < 0) return 0;
  if (from == top.size()) return t == 0 ? 1 : 0;
  std::int64_t c = 0;
  for (int e = 0; e <= std::min(t, top[from]); ++e) c += bounded_count(top, from + 1, t - e);
  return c;
}

std::int64_t hilbert_of_ideal(const Exponent& top, int t) {
  std::int64_t c = 0;
  for (int s = 0; s <= t; ++s) c += bounded_count(top, 0, s);
  return c;
}

Mat basis_block(const HankelMatrix& h, const MonomialBasis& b, const MomentAssignment& y) {
  return h.evaluate(b.elements(), b.elements(), y);
}

struct Representation {
  Exponent row;
  Exponent col;
};

// Unpaired representations of g: a + b + e_i + e_j = g with a x_i, b x_j
// outside B and a x_j or b x_i inside, in graded-lex order of (a, i, j).
std::vector<Representation> representations(const MonomialBasis& b, const Exponent& g) {
  const int n = b.n();
  std::vector<Representation> out;
  for (const auto& a : b.elements())
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        Exponent be = g;
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) {
          be[static_cast<std::size_t>(k)] -= a[static_cast<std::size_t>(k)] + (k == i) + (k == j);
          ok = be[static_cast<std::size_t>(k)] >= 0;
        }
        if (!ok || !b.contains(be)) continue;
        const Exponent ai = a + unit(n, i), aj = a + unit(n, j);
        const Exponent bi = be + unit(n, i), bj = be + unit(n, j);
        if (b.contains(ai) || b.contains(bj)) continue;
        if (!b.contains(aj) && !b.contains(bi)) continue;
        out.push_back({ai, bj});
      }
  return out;
}

Complex schur_value(const HankelMatrix& h, const MonomialBasis& b, const Eigen::PartialPivLU<Mat>& lu,
                    const Representation& rep, const MomentAssignment& y) {
  const Mat u = h.evaluate(b.elements(), {rep.row}, y);
  const Mat v = h.evaluate(b.elements(), {rep.col}, y);
  return (u.transpose() * lu.solve(v))(0, 0);
}

}  // namespace

int vsp_dimension(const MonomialSpec& spec) {
  const int direct = static_cast<int>(parameter_set(spec).params.size());
  const Exponent top = spec.dbar();
  std::int64_t dual = 0;
  for (int j = 1; j <= spec.n(); ++j) dual += hilbert_of_ideal(top, spec.degrees()[static_cast<std::size_t>(j)] - spec.d0());
  if (dual != direct)
    throw Error(Errc::InternalMismatch, "parameter count " + std::to_string(direct) +
                                            " disagrees with the Hilbert function count " + std::to_string(dual));
  return direct;
}

std::int64_t monomial_rank(const MonomialSpec& spec) {
  std::int64_t r = 1;
  for (int j = 1; j <= spec.n(); ++j) r *= spec.degrees()[static_cast<std::size_t>(j)] + 1;
  return r;
}

MomentAssignment canonical_assignment(const MonomialSpec& spec) {
  const Exponent top = spec.dbar();
  MomentAssignment m;
  for (const auto& p : parameter_set(spec).params) m[p] = 0.0;
  for (int i = 0; i < spec.n(); ++i) {
    Exponent g = top;
    g[static_cast<std::size_t>(i)] = 2 * top[static_cast<std::size_t>(i)] + 1;
    m[g] = 1.0;
  }
  return m;
}

MomentAssignment graded_solve(const MonomialSpec& spec, const MomentAssignment& yp) {
  const GradedVarSet gv = parameter_set(spec);
  const MonomialBasis b = monomial_basis(spec);
  const HankelMatrix h(spec.tensor());

  // Unresolved entries hold 0. The grade-k equation for g involves only
  // lower grades besides its own corner, so the placeholders never matter.
  for (const auto& [g, v] : yp)
    if (std::find(gv.params.begin(), gv.params.end(), g) == gv.params.end())
      throw Error(Errc::OutOfRange, "y_" + to_string(g) + " is not a parameter");
  MomentAssignment y;
  for (const auto& v : gv.vars) y[v] = 0.0;
  for (const auto& p : gv.params) {
    auto it = yp.find(p);
    if (it == yp.end()) throw Error(Errc::OutOfRange, "missing value for parameter y_" + to_string(p));
    y[p] = it->second;
  }
  for (int k = 1; k <= gv.max_grade; ++k) {
    const MomentAssignment snapshot = y;
    Eigen::PartialPivLU<Mat> lu(basis_block(h, b, snapshot));
    for (std::size_t t = 0; t < gv.vars.size(); ++t) {
      if (gv.grade[t] != k || gv.exceed[t] == 1) continue;
      const auto reps = representations(b, gv.vars[t]);
      if (reps.empty())
        throw Error(Errc::InternalMismatch, "no determinantal equation isolates y_" + to_string(gv.vars[t]),
                    "graded_solve");
      y[gv.vars[t]] = schur_value(h, b, lu, reps.front(), snapshot);
    }
  }
  return y;
}

double representation_spread(const MonomialSpec& spec, const MomentAssignment& full) {
  const GradedVarSet gv = parameter_set(spec);
  const MonomialBasis b = monomial_basis(spec);
  const HankelMatrix h(spec.tensor());
  Eigen::PartialPivLU<Mat> lu(basis_block(h, b, full));
  double worst = 0.0;
  for (std::size_t t = 0; t < gv.vars.size(); ++t) {
    if (gv.exceed[t] == 1) continue;
    const Complex v = full.at(gv.vars[t]);
    for (const auto& rep : representations(b, gv.vars[t]))
      worst = std::max(worst, std::abs(schur_value(h, b, lu, rep, full) - v));
  }
  return worst;
}

Decomposition canonical_decomposition(const MonomialSpec& spec) {
  const MonomialBasis b = monomial_basis(spec);
  const int n = spec.n();
  Decomposition dec;
  dec.points = PointSet(static_cast<Eigen::Index>(b.size()), n + 1);
  for (std::size_t k = 0; k < b.size(); ++k) {
    dec.points(static_cast<Eigen::Index>(k), 0) = 1.0;
    for (int i = 0; i < n; ++i) {
      const int di = spec.degrees()[static_cast<std::size_t>(i + 1)];
      const double angle = 2.0 * std::numbers::pi * b[k][static_cast<std::size_t>(i)] / (di + 1);
      dec.points(static_cast<Eigen::Index>(k), i + 1) = std::polar(1.0, angle);
    }
  }
  dec.weights = solve_weights(spec.tensor(), dec.points).weights;
  return dec;
}

MonomialResult monomial_decompose(const MonomialSpec& spec, const MomentAssignment& params,
                                  std::uint64_t seed, double tol) {
  const GradedVarSet gv = parameter_set(spec);
  const MonomialBasis b = monomial_basis(spec);
  MonomialResult out;
  std::mt19937_64 rng(seed);
  const Vec draw = complex_gaussian(static_cast<Eigen::Index>(gv.params.size()), rng);
  for (std::size_t k = 0; k < gv.params.size(); ++k) {
    auto it = params.find(gv.params[k]);
    out.params[gv.params[k]] = it != params.end() ? it->second : draw[static_cast<Eigen::Index>(k)];
  }
  out.moments = graded_solve(spec, out.params);
  const SymTensor phi = spec.tensor();
  const auto mm = multiplication_matrices(hankel(phi), b, out.moments, tol);
  out.decomposition = extract_decomposition(mm, seed + 1, tol);
  const WeightFit fit = solve_weights(phi, out.decomposition.points);
  out.decomposition.weights = fit.weights;
  out.residual = fit.residual;
  if (!(out.residual <= tol))
    throw Error(Errc::ResidualTooLarge, "reconstruction residual " + std::to_string(out.residual) +
                                            " exceeds tolerance", "solve_weights");
  return out;
}

TorusResult torus_equivalent(const MonomialSpec& spec, const MomentAssignment& p1,
                             const MomentAssignment& p2, double tol) {
  const int n = spec.n();
  const Exponent top = spec.dbar();
  const double loose = std::sqrt(tol);
  std::vector<std::vector<long long>> rows;
  std::vector<Complex> rhs;
  for (const auto& g : parameter_set(spec).params) {
    auto a = p1.find(g), c = p2.find(g);
    if (a == p1.end() || c == p2.end()) throw Error(Errc::OutOfRange, "missing value for parameter y_" + to_string(g));
    const bool z1 = std::abs(a->second) <= tol, z2 = std::abs(c->second) <= tol;
    if (z1 && z2) continue;
    if (z1 != z2) return {};
    std::vector<long long> r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(i)] - top[static_cast<std::size_t>(i)];
    rows.push_back(r);
    rhs.push_back(c->second / a->second);
  }

  // Integer row echelon; row ops act multiplicatively on the right side.
  auto combine = [&](std::size_t dst, std::size_t src, long long k) {
    for (int i = 0; i < n; ++i) rows[dst][static_cast<std::size_t>(i)] -= k * rows[src][static_cast<std::size_t>(i)];
    rhs[dst] /= std::pow(rhs[src], static_cast<double>(k));
  };
  std::size_t pivot_row = 0;
  std::vector<std::pair<std::size_t, int>> pivots;
  for (int col = 0; col < n && pivot_row < rows.size(); ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot_row; r < rows.size(); ++r)
        if (rows[r][static_cast<std::size_t>(col)] != 0 &&
            (best == rows.size() || std::llabs(rows[r][static_cast<std::size_t>(col)]) <
                                        std::llabs(rows[best][static_cast<std::size_t>(col)])))
          best = r;
      if (best == rows.size()) break;
      std::swap(rows[best], rows[pivot_row]);
      std::swap(rhs[best], rhs[pivot_row]);
      bool clean = true;
      for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
        const long long q = rows[r][static_cast<std::size_t>(col)] / rows[pivot_row][static_cast<std::size_t>(col)];
        if (q != 0) combine(r, pivot_row, q);
        if (rows[r][static_cast<std::size_t>(col)] != 0) clean = false;
      }
      if (clean) {
        pivots.emplace_back(pivot_row, col);
        ++pivot_row;
        break;
      }
    }
  }
  for (std::size_t r = pivot_row; r < rows.size(); ++r)
    if (std::abs(rhs[r] - 1.0) > loose) return {};

  TorusResult res;
  res.tau = Vec::Ones(n);
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const auto [r, col] = *it;
    Complex rest = 1.0;
    for (int i = col + 1; i < n; ++i)
      rest *= std::pow(res.tau[i], static_cast<double>(rows[r][static_cast<std::size_t>(i)]));
    res.tau[col] = std::pow(rhs[r] / rest, 1.0 / static_cast<double>(rows[r][static_cast<std::size_t>(col)]));
  }
  // The root choice above is one branch; confirm it against the input.
  for (const auto& g : parameter_set(spec).params) {
    const Complex a = p1.at(g), c = p2.at(g);
    Complex s = 1.0;
    for (int i = 0; i < n; ++i)
      s *= std::pow(res.tau[i], static_cast<double>(g[static_cast<std::size_t>(i)] - top[static_cast<std::size_t>(i)]));
    if (std::abs(s * a - c) > loose * std::max({std::abs(a), std::abs(c), 1.0})) return {};
  }
  res.equivalent = true;
  return res;
}

}  // namespace waring
