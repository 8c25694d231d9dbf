#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "waring/tensor.hpp"

namespace waring {

// Values of the moment variables y_g, keyed by exponent g (|g| > d).
using MomentAssignment = std::map<Exponent, Complex>;

struct HankelEntry {
  bool known = true;
  Complex value{};  // when known
  Exponent moment;  // when not known
};

class HankelMatrix {
 public:
  explicit HankelMatrix(SymTensor phi);

  int n() const { return phi_.n(); }
  int d() const { return phi_.d(); }
  const SymTensor& tensor() const { return phi_; }

  // Rows |a| <= d, columns |b| <= d+1.
  std::vector<Exponent> row_index() const { return monomials_up_to(n(), d()); }
  std::vector<Exponent> col_index() const { return monomials_up_to(n(), d() + 1); }

  HankelEntry entry(const Exponent& a, const Exponent& b) const;

  // phi_g when |g| <= d, otherwise the assigned value; throws if unassigned.
  Complex value(const Exponent& g, const MomentAssignment& y) const;

  Mat evaluate(const std::vector<Exponent>& rows, const std::vector<Exponent>& cols,
               const MomentAssignment& y) const;

 private:
  SymTensor phi_;
};

HankelMatrix hankel(const SymTensor& phi);

class MonomialBasis {
 public:
  MonomialBasis() = default;
  MonomialBasis(int n, std::vector<Exponent> elems);  // sorts graded-lex, dedups

  int n() const { return n_; }
  std::size_t size() const { return elems_.size(); }
  const std::vector<Exponent>& elements() const { return elems_; }
  const Exponent& operator[](std::size_t i) const { return elems_[i]; }

  bool contains(const Exponent& a) const;
  int position(const Exponent& a) const;  // -1 when absent
  int degree() const;
  std::vector<int> sizes_by_degree() const;
  std::vector<Exponent> of_degree(int k) const;
  bool connected_to_one() const;
  std::vector<Exponent> shifted(int i) const;  // x_{i+1} * B, i in [0, n)

 private:
  int n_ = 0;
  std::vector<Exponent> elems_;
};

// The first r monomials of the graded-lex order.
MonomialBasis first_monomials(int n, int r);

MonomialBasis find_basis(const SymTensor& phi, double tol = kDefaultTol);

std::vector<Exponent> moment_variables(const MonomialBasis& b, int n, int d);

struct DeterminantalResiduals {
  std::vector<double> values;
  double scale = 0.0;  // largest |det| encountered
};

DeterminantalResiduals determinantal_residuals(const HankelMatrix& h, const MonomialBasis& b,
                                               const MomentAssignment& y);

struct MultiplicationMatrices {
  MonomialBasis basis;
  std::vector<Mat> mats;  // M_i = H_{B,B_i} H_{B,B}^{-1}
};

MultiplicationMatrices multiplication_matrices(const HankelMatrix& h, const MonomialBasis& b,
                                               const MomentAssignment& y, double tol = kDefaultTol);

double commuting_residuals(const MultiplicationMatrices& m);

// Points from the joint eigenvectors; weights left empty.
Decomposition extract_decomposition(const MultiplicationMatrices& m, std::uint64_t seed,
                                    double tol = kDefaultTol);

struct BinaryResult {
  Decomposition decomposition;
  MomentAssignment params;
  int free_parameters = 0;
  double residual = 0.0;
};

// n = 1, B = {1, x, ..., x^{s-1}}; every moment variable is free. Values are
// taken from `params` where given, the rest drawn from `seed`.
BinaryResult binary_decompose(const SymTensor& phi, int s, std::uint64_t seed,
                              const MomentAssignment& params = {}, double tol = kDefaultTol);

}  // namespace waring
