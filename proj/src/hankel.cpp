#include "waring/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "waring/error.hpp"
#include "waring/jennrich.hpp"

namespace waring {

HankelMatrix::HankelMatrix(SymTensor phi) : phi_(std::move(phi)) {}

HankelMatrix hankel(const SymTensor& phi) { return HankelMatrix(phi); }

HankelEntry HankelMatrix::entry(const Exponent& a, const Exponent& b) const {
  const Exponent g = a + b;
  HankelEntry e;
  if (degree(g) <= d()) {
    e.known = true;
    e.value = phi_[g];
  } else {
    e.known = false;
    e.moment = g;
  }
  return e;
}

Complex HankelMatrix::value(const Exponent& g, const MomentAssignment& y) const {
  if (degree(g) <= d()) return phi_[g];
  auto it = y.find(g);
  if (it == y.end()) throw Error(Errc::OutOfRange, "moment variable y_" + to_string(g) + " is unassigned");
  return it->second;
}

Mat HankelMatrix::evaluate(const std::vector<Exponent>& rows, const std::vector<Exponent>& cols,
                           const MomentAssignment& y) const {
  Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b)
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = value(rows[a] + cols[b], y);
  return m;
}

MonomialBasis::MonomialBasis(int n, std::vector<Exponent> elems) : n_(n), elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end(), glex_less);
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool MonomialBasis::contains(const Exponent& a) const { return position(a) >= 0; }

int MonomialBasis::position(const Exponent& a) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), a, glex_less);
  if (it == elems_.end() || *it != a) return -1;
  return static_cast<int>(it - elems_.begin());
}

int MonomialBasis::degree() const {
  int d = 0;
  for (const auto& e : elems_) d = std::max(d, waring::degree(e));
  return d;
}

std::vector<int> MonomialBasis::sizes_by_degree() const {
  std::vector<int> s(static_cast<std::size_t>(degree() + 1), 0);
  for (const auto& e : elems_) ++s[static_cast<std::size_t>(waring::degree(e))];
  return s;
}

std::vector<Exponent> MonomialBasis::of_degree(int k) const {
  std::vector<Exponent> out;
  for (const auto& e : elems_)
    if (waring::degree(e) == k) out.push_back(e);
  return out;
}

bool MonomialBasis::connected_to_one() const {
  for (const auto& e : elems_) {
    if (waring::degree(e) == 0) continue;
    bool ok = false;
    for (std::size_t j = 0; j < e.size() && !ok; ++j) {
      if (e[j] == 0) continue;
      Exponent f = e;
      --f[j];
      ok = contains(f);
    }
    if (!ok) return false;
  }
  return true;
}

std::vector<Exponent> MonomialBasis::shifted(int i) const {
  std::vector<Exponent> out;
  out.reserve(elems_.size());
  for (const auto& e : elems_) out.push_back(e + unit(n_, i));
  return out;
}

MonomialBasis first_monomials(int n, int r) {
  int k = 0;
  while (binomial(n + k, n) < r) ++k;
  auto mons = monomials_up_to(n, k);
  mons.resize(static_cast<std::size_t>(r));
  return MonomialBasis(n, mons);
}

MonomialBasis find_basis(const SymTensor& phi, double tol) {
  const int n = phi.n();
  const int half = phi.d() / 2;
  if (phi.is_zero()) return MonomialBasis(n, {});
  const Mat cat = catalecticant(phi, half);
  const auto cols = monomials_up_to(n, half);

  auto rank_of = [&](const std::vector<std::size_t>& idx) {
    Mat sub(cat.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = cat.col(static_cast<Eigen::Index>(idx[c]));
    return numerical_rank(sub, tol);
  };

  std::vector<int> h;
  for (int k = 0; k <= half; ++k)
    h.push_back(numerical_rank(cat.leftCols(static_cast<Eigen::Index>(binomial(n + k, n))), tol));

  std::vector<Exponent> chosen{Exponent(static_cast<std::size_t>(n), 0)};
  std::vector<std::size_t> idx{0};
  if (h[0] == 0)
    throw Error(Errc::SingularPrincipalBlock, "constant column of the catalecticant vanishes", "find_basis");
  for (int k = 1; k <= half; ++k) {
    const int target = h[static_cast<std::size_t>(k)] - h[static_cast<std::size_t>(k - 1)];
    std::set<Exponent, GlexLess> cands;
    for (const auto& b : chosen)
      if (degree(b) == k - 1)
        for (int i = 0; i < n; ++i) cands.insert(b + unit(n, i));
    int accepted = 0;
    int current = static_cast<int>(idx.size());
    for (const auto& c : cands) {
      if (accepted == target) break;
      idx.push_back(glex_position(c));
      const int r = rank_of(idx);
      if (r > current) {
        chosen.push_back(c);
        current = r;
        ++accepted;
      } else {
        idx.pop_back();
      }
    }
    if (accepted < target)
      throw Error(Errc::SingularPrincipalBlock,
                  "could not find " + std::to_string(target) + " independent degree-" + std::to_string(k) +
                      " columns among the shifts of the current basis",
                  "find_basis");
  }
  MonomialBasis basis(n, chosen);
  Mat sub(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b)
      sub(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = phi[basis[a] + basis[b]];
  if (numerical_rank(sub, tol) < static_cast<int>(basis.size()))
    throw Error(Errc::SingularPrincipalBlock, "principal Hankel block on the basis is singular", "find_basis");
  return basis;
}

std::vector<Exponent> moment_variables(const MonomialBasis& b, int n, int d) {
  std::set<Exponent, GlexLess> ys;
  for (const auto& a : b.elements())
    for (const auto& c : b.elements()) {
      const Exponent s = a + c;
      if (degree(s) + 1 < d + 1) continue;
      for (int i = 0; i < n; ++i) ys.insert(s + unit(n, i));
    }
  return {ys.begin(), ys.end()};
}

DeterminantalResiduals determinantal_residuals(const HankelMatrix& h, const MonomialBasis& b,
                                               const MomentAssignment& y) {
  DeterminantalResiduals out;
  const int n = h.n();
  const auto& el = b.elements();
  const std::size_t r = el.size();
  Mat m1(static_cast<Eigen::Index>(r + 1), static_cast<Eigen::Index>(r + 1));
  Mat m2 = m1;
  const Mat hbb = h.evaluate(el, el, y);
  for (const auto& al : el)
    for (const auto& be : el)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const Exponent ai = al + unit(n, i), aj = al + unit(n, j);
          const Exponent bi = be + unit(n, i), bj = be + unit(n, j);
          const Exponent corner = ai + bj;  // equals aj + bi
          // The corner appears in both determinants with the same cofactor
          // det(H_BB), so an unassigned corner cancels; use 0 for it.
          auto val = [&](const Exponent& g) {
            if (degree(g) > h.d() && g == corner && !y.count(g)) return Complex(0.0, 0.0);
            return h.value(g, y);
          };
          auto fill = [&](Mat& m, const Exponent& row, const Exponent& col) {
            m.topLeftCorner(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = hbb;
            for (std::size_t c = 0; c < r; ++c) {
              m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = val(row + el[c]);
              m(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(r)) = val(el[c] + col);
            }
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = val(row + col);
          };
          fill(m1, ai, bj);
          fill(m2, aj, bi);
          const Complex d1 = determinant(m1), d2 = determinant(m2);
          out.scale = std::max({out.scale, std::abs(d1), std::abs(d2)});
          out.values.push_back(std::abs(d1 - d2));
        }
  return out;
}

MultiplicationMatrices multiplication_matrices(const HankelMatrix& h, const MonomialBasis& b,
                                               const MomentAssignment& y, double tol) {
  MultiplicationMatrices out;
  out.basis = b;
  const Mat hbb = h.evaluate(b.elements(), b.elements(), y);
  if (numerical_rank(hbb, tol) < static_cast<int>(b.size()))
    throw Error(Errc::SingularPrincipalBlock, "principal Hankel block is singular", "multiplication_matrices");
  Eigen::PartialPivLU<Mat> lu(hbb.transpose());
  for (int i = 0; i < h.n(); ++i) {
    const Mat hbi = h.evaluate(b.elements(), b.shifted(i), y);
    out.mats.push_back(lu.solve(hbi.transpose()).transpose());
  }
  return out;
}

double commuting_residuals(const MultiplicationMatrices& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.mats.size(); ++i)
    for (std::size_t j = i + 1; j < m.mats.size(); ++j) {
      const Mat c = m.mats[i] * m.mats[j] - m.mats[j] * m.mats[i];
      if (c.size() > 0) worst = std::max(worst, c.cwiseAbs().maxCoeff());
    }
  return worst;
}

Decomposition extract_decomposition(const MultiplicationMatrices& m, std::uint64_t seed, double tol) {
  const auto& b = m.basis;
  const int n = b.n();
  const std::size_t r = b.size();
  const int one = b.position(Exponent(static_cast<std::size_t>(n), 0));
  std::vector<int> xs;
  for (int j = 0; j < n; ++j) xs.push_back(b.position(unit(n, j)));
  if (one < 0 || std::any_of(xs.begin(), xs.end(), [](int p) { return p < 0; }))
    throw Error(Errc::ConditionViolated,
                "basis must contain 1, x1, ..., xn; reduce to essential variables first", "extract");

  std::mt19937_64 rng(seed);
  Mat vecs;
  bool separated = false;
  for (int attempt = 0; attempt < 2 && !separated; ++attempt) {
    const Vec a = complex_gaussian(n, rng);
    Mat g = Mat::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
    for (int i = 0; i < n; ++i) g += a[i] * m.mats[static_cast<std::size_t>(i)];
    Eigen::ComplexEigenSolver<Mat> es(g);
    vecs = es.eigenvectors();
    separated = condition_number(vecs) < 1.0 / tol;
  }
  if (!separated)
    throw Error(Errc::Defective, "multiplication matrices are defective for this assignment", "extract");

  const double check = std::sqrt(tol);
  Decomposition dec;
  dec.points = PointSet(static_cast<Eigen::Index>(r), n + 1);
  for (std::size_t k = 0; k < r; ++k) {
    Vec v = vecs.col(static_cast<Eigen::Index>(k));
    if (std::abs(v[one]) <= tol * v.norm())
      throw Error(Errc::NormalizationFailure,
                  "eigenvector vanishes at the constant monomial; apply a random change of basis", "extract");
    v /= v[one];
    dec.points(static_cast<Eigen::Index>(k), 0) = 1.0;
    for (int j = 0; j < n; ++j) {
      const Complex z = v[xs[static_cast<std::size_t>(j)]];
      dec.points(static_cast<Eigen::Index>(k), j + 1) = z;
      const Mat& mj = m.mats[static_cast<std::size_t>(j)];
      const double err = (mj * v - z * v).norm();
      const double ref = std::max(mj.norm(), 1.0) * v.norm();
      if (err > check * ref)
        throw Error(Errc::EigenvalueMismatch,
                    "eigenvector is not shared by M_" + std::to_string(j + 1), "extract");
    }
  }
  return dec;
}

BinaryResult binary_decompose(const SymTensor& phi, int s, std::uint64_t seed,
                              const MomentAssignment& params, double tol) {
  if (phi.n() != 1) throw Error(Errc::DimensionMismatch, "binary path needs n = 1");
  if (s < 1) throw Error(Errc::OutOfRange, "decomposition size must be positive");
  std::vector<Exponent> el;
  for (int k = 0; k < s; ++k) el.push_back(Exponent{k});
  const MonomialBasis b(1, el);
  const auto ys = moment_variables(b, 1, phi.d());

  BinaryResult out;
  out.free_parameters = static_cast<int>(ys.size());
  std::mt19937_64 rng(seed);
  const Vec draw = complex_gaussian(static_cast<Eigen::Index>(ys.size()), rng);
  for (std::size_t k = 0; k < ys.size(); ++k) {
    auto it = params.find(ys[k]);
    out.params[ys[k]] = it != params.end() ? it->second : draw[static_cast<Eigen::Index>(k)];
  }
  const HankelMatrix h(phi);
  const auto mm = multiplication_matrices(h, b, out.params, tol);
  Decomposition dec = extract_decomposition(mm, seed + 1, tol);
  const WeightFit fit = solve_weights(phi, dec.points);
  dec.weights = fit.weights;
  out.decomposition = dec;
  out.residual = fit.residual;
  return out;
}

}  // namespace waring
