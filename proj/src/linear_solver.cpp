#include "waring/linear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "waring/error.hpp"
#include "waring/jennrich.hpp"

namespace waring {

namespace {

void require_order4(int d) {
  if (d != 4) throw Error(Errc::OrderUnsupported, "the linear path handles d = 4 only");
}

Mat principal_block(const SymTensor& phi, const MonomialBasis& b) {
  const auto& el = b.elements();
  Mat h(static_cast<Eigen::Index>(el.size()), static_cast<Eigen::Index>(el.size()));
  for (std::size_t p = 0; p < el.size(); ++p)
    for (std::size_t q = 0; q < el.size(); ++q)
      h(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = phi[el[p] + el[q]];
  return h;
}

Vec known_column(const SymTensor& phi, const MonomialBasis& b, const Exponent& x) {
  const auto& el = b.elements();
  Vec v(static_cast<Eigen::Index>(el.size()));
  for (std::size_t p = 0; p < el.size(); ++p) {
    const Exponent g = el[p] + x;
    if (degree(g) > phi.d()) throw Error(Errc::InternalMismatch, "expected a known Hankel column");
    v[static_cast<Eigen::Index>(p)] = phi[g];
  }
  return v;
}

// Column H_{B, x} = u + S y where S picks moment variables.
struct AffineColumn {
  Vec constant;
  std::vector<std::pair<int, int>> picks;  // (position in B, variable index)
};

AffineColumn affine_column(const SymTensor& phi, const MonomialBasis& b,
                           const std::map<Exponent, int>& var_of, const Exponent& x) {
  AffineColumn a;
  const auto& el = b.elements();
  a.constant = Vec::Zero(static_cast<Eigen::Index>(el.size()));
  for (std::size_t p = 0; p < el.size(); ++p) {
    const Exponent g = el[p] + x;
    if (degree(g) <= phi.d()) {
      a.constant[static_cast<Eigen::Index>(p)] = phi[g];
    } else {
      auto it = var_of.find(g);
      if (it == var_of.end())
        throw Error(Errc::InternalMismatch, "Hankel entry y_" + to_string(g) + " is not a moment variable");
      a.picks.emplace_back(static_cast<int>(p), it->second);
    }
  }
  return a;
}

Vec evaluate(const AffineColumn& a, const Vec& y) {
  Vec v = a.constant;
  for (auto [p, k] : a.picks) v[p] += y[k];
  return v;
}

Mat derivative(const AffineColumn& a, const Mat& nullspace) {
  Mat d = Mat::Zero(a.constant.size(), nullspace.cols());
  for (auto [p, k] : a.picks) d.row(p) += nullspace.row(k);
  return d;
}

std::map<Exponent, int> index_vars(const std::vector<Exponent>& vars) {
  std::map<Exponent, int> m;
  for (std::size_t k = 0; k < vars.size(); ++k) m[vars[k]] = static_cast<int>(k);
  return m;
}

}  // namespace

EquationKind classify_equation(const MonomialBasis& b, int d, const Exponent& alpha, int i,
                               const Exponent& beta, int j) {
  require_order4(d);
  const int n = b.n();
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw Error(Errc::OutOfRange, "variable indices must differ and lie in [0, n)");
  if (!b.contains(alpha) || !b.contains(beta)) throw Error(Errc::OutOfRange, "exponents must lie in B");
  const Exponent ai = alpha + unit(n, i), aj = alpha + unit(n, j);
  const Exponent bi = beta + unit(n, i), bj = beta + unit(n, j);
  if (degree(alpha + beta) <= d - 2 || alpha == beta) return EquationKind::Zero;
  if ((b.contains(ai) || b.contains(bj)) && (b.contains(aj) || b.contains(bi))) return EquationKind::Zero;
  const int da = degree(alpha), db = degree(beta);
  if (da == d / 2 && db == d / 2 - 1 && (!b.contains(bi) || !b.contains(bj))) return EquationKind::Linear;
  if (db == d / 2 && da == d / 2 - 1 && (!b.contains(ai) || !b.contains(aj))) return EquationKind::Linear;
  return EquationKind::Quadratic;
}

Exponent EquationIndex::row() const { return alpha + unit(static_cast<int>(alpha.size()), i); }
Exponent EquationIndex::col() const { return beta + unit(static_cast<int>(beta.size()), j); }

std::string EquationIndex::to_string() const {
  const int n = static_cast<int>(alpha.size());
  std::string s = "(" + waring::to_string(row()) + ", " + waring::to_string(col()) + ")";
  if (paired)
    s += " - (" + waring::to_string(alpha + unit(n, j)) + ", " + waring::to_string(beta + unit(n, i)) + ")";
  return s;
}

std::vector<EquationIndex> linear_equations(const MonomialBasis& b, bool unpaired_only) {
  const int n = b.n();
  const auto b2 = b.of_degree(2);
  const auto b1 = b.of_degree(1);

  std::map<std::pair<Exponent, Exponent>, EquationIndex> single;
  std::map<std::pair<Exponent, Exponent>, EquationIndex> paired;
  auto key_less = [](const std::pair<Exponent, Exponent>& u, const std::pair<Exponent, Exponent>& v) {
    if (u.first != v.first) return glex_less(u.first, v.first);
    return glex_less(u.second, v.second);
  };
  for (const auto& al : b2)
    for (const auto& be : b1)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          const bool in_i = b.contains(be + unit(n, i));
          const bool in_j = b.contains(be + unit(n, j));
          EquationIndex e{false, al, i, be, j};
          if (in_i && !in_j) {
            single.emplace(std::make_pair(e.row(), e.col()), e);
          } else if (!in_i && !in_j && i < j && !unpaired_only) {
            // The two halves are (a+e_i, b+e_j) and (a+e_j, b+e_i); key on the
            // unordered pair so the same relation is not added twice.
            std::pair<Exponent, Exponent> h1{e.row(), e.col()};
            std::pair<Exponent, Exponent> h2{al + unit(n, j), be + unit(n, i)};
            e.paired = true;
            auto key = key_less(h1, h2) ? h1 : h2;
            paired.emplace(key, e);
          }
        }
  std::vector<std::pair<std::pair<Exponent, Exponent>, EquationIndex>> s1(single.begin(), single.end());
  std::vector<std::pair<std::pair<Exponent, Exponent>, EquationIndex>> s2(paired.begin(), paired.end());
  auto by_key = [&](const auto& u, const auto& v) { return key_less(u.first, v.first); };
  std::sort(s1.begin(), s1.end(), by_key);
  std::sort(s2.begin(), s2.end(), by_key);
  std::vector<EquationIndex> out;
  for (auto& [k, e] : s1) out.push_back(e);
  for (auto& [k, e] : s2) out.push_back(e);
  return out;
}

LinSystem assemble_linear_system(const SymTensor& phi, const MonomialBasis& b, bool unpaired_only,
                                 double tol) {
  require_order4(phi.d());
  const int n = phi.n();
  LinSystem sys;
  sys.vars = moment_variables(b, n, phi.d());
  sys.eqs = linear_equations(b, unpaired_only);
  const auto var_of = index_vars(sys.vars);

  const Mat hbb = principal_block(phi, b);
  if (numerical_rank(hbb, tol) < static_cast<int>(b.size()))
    throw Error(Errc::SingularPrincipalBlock, "principal Hankel block is singular", "assemble");
  Eigen::PartialPivLU<Mat> lu(hbb);
  sys.det_hbb = lu.determinant();
  const Complex det = sys.det_hbb;

  const auto rows = static_cast<Eigen::Index>(sys.eqs.size());
  sys.A = Mat::Zero(rows, static_cast<Eigen::Index>(sys.vars.size()));
  sys.b = Vec::Zero(rows);

  std::map<Exponent, Vec, GlexLess> solved;  // H_BB^{-1} h_theta per column monomial
  auto add_det = [&](Eigen::Index row, const Exponent& eta, const Exponent& theta, double sign, bool corner) {
    auto it = solved.find(theta);
    if (it == solved.end()) it = solved.emplace(theta, lu.solve(known_column(phi, b, theta))).first;
    const Vec& x = it->second;
    // det H_{B+eta, B+theta} = det * (H_{eta,theta} - h_eta^T x).
    auto put = [&](const Exponent& g, Complex coeff) {
      if (degree(g) > phi.d()) {
        auto v = var_of.find(g);
        if (v == var_of.end())
          throw Error(Errc::InternalMismatch, "entry y_" + to_string(g) + " is not a moment variable", "assemble");
        sys.A(row, v->second) += sign * coeff;
      } else {
        sys.b[row] -= sign * coeff * phi[g];
      }
    };
    for (std::size_t p = 0; p < b.size(); ++p) put(eta + b[p], -det * x[static_cast<Eigen::Index>(p)]);
    // In a paired row both halves share the corner y_{eta+theta}, so it cancels.
    if (corner) put(eta + theta, det);
  };

  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& e = sys.eqs[static_cast<std::size_t>(r)];
    add_det(r, e.row(), e.col(), 1.0, !e.paired);
    if (e.paired) add_det(r, e.alpha + unit(n, e.j), e.beta + unit(n, e.i), -1.0, false);
  }
  return sys;
}

std::vector<QuadraticRelation> quadratic_relations(const MonomialBasis& b) {
  const int n = b.n();
  const auto b2 = b.of_degree(2);
  std::vector<QuadraticRelation> out;
  for (std::size_t p = 0; p < b2.size(); ++p)
    for (std::size_t q = p + 1; q < b2.size(); ++q)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.push_back({b2[p], i, b2[q], j});
  return out;
}

Complex quadratic_value(const SymTensor& phi, const MonomialBasis& b, const std::vector<Exponent>& vars,
                        const QuadraticRelation& q, const Vec& y) {
  const int n = phi.n();
  const auto var_of = index_vars(vars);
  Eigen::PartialPivLU<Mat> lu(principal_block(phi, b));
  auto col = [&](const Exponent& x) { return evaluate(affine_column(phi, b, var_of, x), y); };
  const Vec ai = col(q.alpha + unit(n, q.i)), aj = col(q.alpha + unit(n, q.j));
  const Vec bi = col(q.beta + unit(n, q.i)), bj = col(q.beta + unit(n, q.j));
  const Vec gbj = lu.solve(bj), gbi = lu.solve(bi);
  return -(ai.transpose() * gbj)(0) + (aj.transpose() * gbi)(0);
}

MomentAssignment ExtensionResult::member(const Vec& t) const {
  MomentAssignment m;
  Vec y = particular;
  if (nullspace.cols() > 0 && t.size() == nullspace.cols()) y += nullspace * t;
  for (std::size_t k = 0; k < vars.size(); ++k) m[vars[k]] = y[static_cast<Eigen::Index>(k)];
  return m;
}

const char* kind_name(ExtensionResult::Kind k) {
  switch (k) {
    case ExtensionResult::Kind::Unique: return "Unique";
    case ExtensionResult::Kind::Family: return "Family";
    case ExtensionResult::Kind::Fail: return "Fail";
  }
  return "?";
}

ExtensionResult solve_extension(const SymTensor& phi, const MonomialBasis& b, std::uint64_t seed,
                                double tol, int max_rounds) {
  require_order4(phi.d());
  const int n = phi.n();
  const LinSystem sys = assemble_linear_system(phi, b, false, tol);
  ExtensionResult res;
  res.vars = sys.vars;
  res.initial_equations = static_cast<int>(sys.eqs.size());
  const auto nv = static_cast<Eigen::Index>(sys.vars.size());
  const auto var_of = index_vars(sys.vars);

  // Row-normalized working copy; rows added by the loop go below.
  std::vector<Vec> rows;
  std::vector<Complex> rhs;
  for (Eigen::Index r = 0; r < sys.A.rows(); ++r) {
    const double nr = sys.A.row(r).norm();
    if (nr == 0.0) continue;
    rows.push_back(sys.A.row(r).transpose() / nr);
    rhs.push_back(sys.b[r] / nr);
  }

  Eigen::PartialPivLU<Mat> lu(principal_block(phi, b));
  const auto relations = quadratic_relations(b);
  struct Cols {
    AffineColumn ai, aj, bi, bj;
  };
  std::vector<Cols> rel_cols;
  for (const auto& q : relations)
    rel_cols.push_back({affine_column(phi, b, var_of, q.alpha + unit(n, q.i)),
                        affine_column(phi, b, var_of, q.alpha + unit(n, q.j)),
                        affine_column(phi, b, var_of, q.beta + unit(n, q.i)),
                        affine_column(phi, b, var_of, q.beta + unit(n, q.j))});
  const double loose = std::sqrt(tol);

  for (int round = 0;; ++round) {
    res.rounds = round;
    Mat a(static_cast<Eigen::Index>(rows.size()), nv);
    Vec rhsv(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      a.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
      rhsv[static_cast<Eigen::Index>(r)] = rhs[r];
    }
    res.equations = static_cast<int>(rows.size());
    if (nv == 0) {
      res.particular = Vec();
      res.nullspace = Mat();
      res.rank = 0;
    } else if (a.rows() == 0) {
      res.particular = Vec::Zero(nv);
      res.nullspace = Mat::Identity(nv, nv);
      res.rank = 0;
    } else {
      res.particular = lstsq(a, rhsv, tol);
      res.nullspace = null_space(a, tol);
      res.rank = static_cast<int>(nv - res.nullspace.cols());
      const double denom = std::max({rhsv.norm(), a.norm() * res.particular.norm(), 1e-300});
      res.residual = (a * res.particular - rhsv).norm() / denom;
      if (res.residual > tol) {
        res.kind = ExtensionResult::Kind::Fail;
        res.reason = "linear system inconsistent";
        return res;
      }
    }

    const Mat& ns = res.nullspace;
    const Vec y0 = nv == 0 ? Vec() : res.particular;
    bool remains = false;
    std::vector<Vec> new_rows;
    std::vector<Complex> new_rhs;
    for (const auto& c : rel_cols) {
      const Vec uai = evaluate(c.ai, y0), uaj = evaluate(c.aj, y0);
      const Vec ubi = evaluate(c.bi, y0), ubj = evaluate(c.bj, y0);
      const Vec gubj = lu.solve(ubj), gubi = lu.solve(ubi);
      const Complex c0 = -(uai.transpose() * gubj)(0) + (uaj.transpose() * gubi)(0);
      double scale = uai.norm() * gubj.norm() + uaj.norm() * gubi.norm();
      Vec g;
      Mat quad;
      if (ns.cols() > 0) {
        const Mat dai = derivative(c.ai, ns), daj = derivative(c.aj, ns);
        const Mat dbi = derivative(c.bi, ns), dbj = derivative(c.bj, ns);
        const Mat gdbj = lu.solve(dbj), gdbi = lu.solve(dbi);
        g = -(dai.transpose() * gubj + gdbj.transpose() * uai) + (daj.transpose() * gubi + gdbi.transpose() * uaj);
        const Mat m = -dai.transpose() * gdbj + daj.transpose() * gdbi;
        quad = (m + m.transpose()) / 2.0;
        scale = (uai.norm() + dai.norm()) * (gubj.norm() + gdbj.norm()) +
                (uaj.norm() + daj.norm()) * (gubi.norm() + gdbi.norm());
      }
      const double thr = loose * std::max(scale, 1e-300);
      const bool q_zero = quad.size() == 0 || quad.norm() <= thr;
      const bool g_zero = g.size() == 0 || g.norm() <= thr;
      if (!q_zero) {
        remains = true;
      } else if (!g_zero) {
        // g^T t + c0 = 0 with t = N^H (y - y0).
        const Vec row = (g.transpose() * ns.adjoint()).transpose();
        const Complex rv = (g.transpose() * ns.adjoint() * y0)(0) - c0;
        const double nr = row.norm();
        new_rows.push_back(row / nr);
        new_rhs.push_back(rv / nr);
      } else if (std::abs(c0) > thr) {
        res.kind = ExtensionResult::Kind::Fail;
        res.reason = "quadratic relations inconsistent with the linear solution";
        return res;
      }
    }

    if (new_rows.empty()) {
      if (remains) {
        res.kind = ExtensionResult::Kind::Fail;
        res.reason = "quadratic relations remain";
        return res;
      }
      break;
    }
    if (round + 1 >= max_rounds) {
      res.kind = ExtensionResult::Kind::Fail;
      res.reason = "quadratic relations remain after " + std::to_string(max_rounds) + " rounds";
      return res;
    }
    rows.insert(rows.end(), new_rows.begin(), new_rows.end());
    rhs.insert(rhs.end(), new_rhs.begin(), new_rhs.end());
  }

  res.kind = res.nullspace.cols() == 0 ? ExtensionResult::Kind::Unique : ExtensionResult::Kind::Family;

  // Independent check along one sampled member.
  if (res.kind == ExtensionResult::Kind::Family && !relations.empty()) {
    std::mt19937_64 rng(seed);
    const Vec t = complex_gaussian(res.nullspace.cols(), rng);
    const Vec y = res.particular + res.nullspace * t;
    for (const auto& c : rel_cols) {
      const Vec ai = evaluate(c.ai, y), aj = evaluate(c.aj, y);
      const Vec gbj = lu.solve(evaluate(c.bj, y)), gbi = lu.solve(evaluate(c.bi, y));
      const Complex q = -(ai.transpose() * gbj)(0) + (aj.transpose() * gbi)(0);
      const double scale = ai.norm() * gbj.norm() + aj.norm() * gbi.norm();
      if (std::abs(q) > loose * std::max(scale, 1e-300)) {
        res.kind = ExtensionResult::Kind::Fail;
        res.reason = "sampled family member violates a quadratic relation";
        return res;
      }
    }
  }
  return res;
}

std::string Certificate::to_string() const {
  std::ostringstream os;
  os << "format n=" << n << " r=" << r << " |Y|=" << y << " |E_lin|=" << e_lin << " rankA=" << rank_a
     << " unique=" << (unique ? "true" : "false") << " residual=" << residual;
  if (family_dim > 0) os << " family_dim=" << family_dim;
  os << " rounds=" << rounds;
  return os.str();
}

namespace {

// Rank of the monomial when phi has a single nonzero coefficient, else 0.
std::int64_t single_monomial_rank(const SymTensor& phi) {
  int nonzero = 0;
  Exponent which;
  for (std::size_t k = 0; k < phi.size(); ++k)
    if (phi.coeffs()[static_cast<Eigen::Index>(k)] != Complex(0.0, 0.0)) {
      ++nonzero;
      which = phi.monomials()[k];
    }
  if (nonzero != 1) return 0;
  std::vector<int> degs{phi.d() - degree(which)};
  degs.insert(degs.end(), which.begin(), which.end());
  std::sort(degs.begin(), degs.end());
  std::int64_t r = 1;
  for (std::size_t k = 1; k < degs.size(); ++k) r *= degs[k] + 1;
  return r;
}

constexpr int kFamilyDraws = 3;

Decompose4Result decompose4_concise(const SymTensor& phi, std::uint64_t seed, double tol,
                                    const std::optional<MonomialBasis>& basis) {
  Decompose4Result out;
  if (basis) {
    out.basis = *basis;
  } else if (const auto mr = single_monomial_rank(phi); mr > 0) {
    const int rk = numerical_rank(catalecticant(phi, 2), tol);
    if (mr > rk)
      throw Error(Errc::ConditionViolated,
                  "monomial of rank " + std::to_string(mr) + " exceeds rank(Cat_2) = " + std::to_string(rk) +
                      "; use the monomial subcommand",
                  "find_basis");
  }
  if (!basis) out.basis = find_basis(phi, tol);
  out.extension = solve_extension(phi, out.basis, seed, tol);
  const auto& ext = out.extension;
  if (ext.kind == ExtensionResult::Kind::Fail) throw Error(Errc::AlgorithmFail, ext.reason, "solve_extension");

  // A family member is only good for a generic parameter; an unlucky draw
  // (a moving point sent far off, or a repeated eigenvalue) gets redrawn.
  const bool family = ext.kind == ExtensionResult::Kind::Family;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  WeightFit fit;
  for (int draw = 0;; ++draw) {
    const Vec t = family ? complex_gaussian(ext.nullspace.cols(), rng) : Vec();
    try {
      const auto mm = multiplication_matrices(hankel(phi), out.basis, ext.member(t), tol);
      Decomposition dec = extract_decomposition(mm, seed + 1 + draw, tol);
      fit = solve_weights(phi, dec.points);
      dec.weights = fit.weights;
      out.decomposition = dec;
    } catch (const Error&) {
      if (!family || draw + 1 >= kFamilyDraws) throw;
      continue;
    }
    if (!family || fit.residual <= tol || draw + 1 >= kFamilyDraws) break;
  }

  auto& c = out.certificate;
  c.n = phi.n();
  c.r = static_cast<int>(out.basis.size());
  c.y = static_cast<int>(ext.vars.size());
  c.e_lin = ext.initial_equations;
  c.rank_a = ext.rank;
  c.unique = ext.kind == ExtensionResult::Kind::Unique;
  c.family_dim = static_cast<int>(ext.nullspace.cols());
  c.rounds = ext.rounds;
  c.residual = fit.residual;
  return out;
}

}  // namespace

Decompose4Result decompose4(const SymTensor& phi, std::uint64_t seed, double tol, bool randomize,
                            const std::optional<MonomialBasis>& basis) {
  require_order4(phi.d());
  Decompose4Result out;
  const int n = phi.n();
  if (basis && (randomize || basis->n() != n))
    throw Error(Errc::ConditionViolated, "an explicit basis must be in the input variables, without --randomize",
                "find_basis");
  if (basis) {
    out = decompose4_concise(phi, seed, tol, basis);
  } else if (randomize) {
    const Mat m = random_gl(n, seed + 0x5bd1e995ULL);
    out = decompose4(apply_gl(phi, m), seed, tol, false);
    out.decomposition = pull_back(out.decomposition, m, phi.d(), tol);
  } else {
    const EssentialVars ev = essential_vars(phi, tol);
    if (ev.count == 0) {
      out.decomposition.points = PointSet(0, n + 1);
      out.decomposition.weights = Vec();
      out.certificate.n = n;
      out.certificate.unique = true;
      return out;
    }
    if (ev.count == n + 1) {
      out = decompose4_concise(phi, seed, tol, std::nullopt);
    } else {
      out = decompose4_concise(ev.reduced, seed, tol, std::nullopt);
      Decomposition padded;
      padded.points = PointSet::Zero(out.decomposition.points.rows(), n + 1);
      padded.points.leftCols(ev.count) = out.decomposition.points;
      padded.weights = out.decomposition.weights;
      out.decomposition = pull_back(padded, ev.transform, phi.d(), tol);
      out.certificate.n = n;
    }
  }
  out.certificate.residual = reconstruction_residual(phi, out.decomposition);
  if (!(out.certificate.residual <= tol))
    throw Error(Errc::ResidualTooLarge,
                "reconstruction residual " + std::to_string(out.certificate.residual) + " exceeds tolerance",
                "solve_weights");
  return out;
}

Counts count_Y_E1(int n, int c) {
  if (n < 1 || c < 1 || c > n) throw Error(Errc::OutOfRange, "need 1 <= c <= n");
  auto C = [](int a, int k) { return binomial(a, k); };
  Counts out;
  out.y = C(c + 4, 5) + (n - c) * C(c + 3, 4) + C(n - c + 1, 2) * C(c + 2, 3) + C(n - c + 2, 3) * C(c + 1, 2);
  out.e1 = C(n - c + 1, 2) * (C(c + 2, 3) + (n - c) * C(c + 1, 2));
  return out;
}

double tstar() {
  auto p = [](double t) { return -2.0 / 15.0 * t * t * t + 11.0 / 24.0 * t * t - 0.5 * t + 1.0 / 6.0; };
  // p(0.5) > 0 > p(0.7); the only real root in (0, 1) lies between.
  double lo = 0.5, hi = 0.7;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (p(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// Binomials as polynomials in a real argument, so c = t n need not be an
// integer.
double binomial_poly(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (x - i) / (i + 1);
  return r;
}

double count_gap(double n, double c) {
  auto C = binomial_poly;
  const double y = C(c + 4, 5) + (n - c) * C(c + 3, 4) + C(n - c + 1, 2) * C(c + 2, 3) + C(n - c + 2, 3) * C(c + 1, 2);
  const double e1 = C(n - c + 1, 2) * (C(c + 2, 3) + (n - c) * C(c + 1, 2));
  return e1 - y;
}

}  // namespace

int count_threshold(double t) {
  if (!(t > 0.0) || !(t < tstar())) throw Error(Errc::OutOfRange, "t must lie in (0, t*)");
  constexpr int kHorizon = 64;
  constexpr int kCap = 1 << 20;
  int run_start = -1;
  for (int m = 1; m < kCap + kHorizon; ++m) {
    if (count_gap(m, t * m) < 0.0) {
      run_start = -1;
      continue;
    }
    if (run_start < 0) run_start = m;
    if (m - run_start >= kHorizon) return run_start;
  }
  throw Error(Errc::Unverifiable, "no threshold found below the search cap");
}

}  // namespace waring
