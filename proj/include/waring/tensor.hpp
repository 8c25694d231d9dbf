#pragma once

#include <memory>
#include <vector>

#include "waring/exponent.hpp"
#include "waring/linalg.hpp"

namespace waring {

// Points are rows z_i = (z_{i,0}, ..., z_{i,n}); dehomogenized rows have
// z_{i,0} = 1.
using PointSet = Mat;

struct Decomposition {
  PointSet points;  // s x (n+1)
  Vec weights;      // length s, may be empty before solve_weights
};

// Symmetric tensor of order d in n+1 variables, stored as the moment values
// phi_a (no multinomial scaling) densely in graded-lex order of |a| <= d.
class SymTensor {
 public:
  SymTensor() = default;
  SymTensor(int n, int d);

  int n() const { return n_; }
  int d() const { return d_; }
  std::size_t size() const { return static_cast<std::size_t>(coeffs_.size()); }

  Complex operator[](const Exponent& a) const;
  Complex& at(const Exponent& a);

  const Vec& coeffs() const { return coeffs_; }
  Vec& coeffs() { return coeffs_; }

  // Graded-lex monomial list backing the coefficient vector.
  const std::vector<Exponent>& monomials() const { return *mons_; }

  bool is_zero() const;

 private:
  int n_ = 0;
  int d_ = 0;
  Vec coeffs_;
  std::shared_ptr<const std::vector<Exponent>> mons_;
};

// coeffs[a] = sum_i lambda_i z_{i,0}^{d-|a|} z_i^a. With z_{i,0} = 1 this
// is the plain sum_i lambda_i z_i^a.
SymTensor tensor_from_points(const PointSet& points, const Vec& weights, int d);

Mat vandermonde(const PointSet& points, const std::vector<Exponent>& monomials);

// Rows |a| <= d-k, columns |b| <= k, entry phi_{a+b}.
Mat catalecticant(const SymTensor& phi, int k);

std::vector<int> hilbert_function(const SymTensor& phi, double tol = kDefaultTol);

int regularity(const PointSet& points, double tol = kDefaultTol);

// Returns the tensor sum lambda_i (M z_i)^{(x)d}, computed from the
// coefficients alone via f(x) -> f(M^T x) on the associated form.
SymTensor apply_gl(const SymTensor& phi, const Mat& m);

struct EssentialVars {
  int count = 0;
  Mat basis;      // count x (n+1), rows span the row space of Cat_1
  Mat transform;  // unitary (n+1)x(n+1); reduced = apply_gl(phi, transform) truncated
  SymTensor reduced;
};

EssentialVars essential_vars(const SymTensor& phi, double tol = kDefaultTol);

// ||tensor_from_points(dec) - phi|| / ||phi|| (absolute when phi == 0).
double reconstruction_residual(const SymTensor& phi, const Decomposition& dec);

// Given a decomposition of apply_gl(phi, m), return one of phi: points
// m^{-1} w rescaled so the x0 entry is 1, weights scaled by x0^d.
Decomposition pull_back(const Decomposition& dec, const Mat& m, int d, double tol = kDefaultTol);

// Random well-conditioned GL element for the "random change of basis" step.
Mat random_gl(int n, std::uint64_t seed);

}  // namespace waring
