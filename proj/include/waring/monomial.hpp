#pragma once

#include <cstdint>
#include <vector>

#include "waring/hankel.hpp"

namespace waring {

// x0^{d0} x1^{d1} ... xn^{dn} with 1 <= d0 <= d1 <= ... <= dn.
class MonomialSpec {
 public:
  explicit MonomialSpec(std::vector<int> degrees);

  int n() const { return static_cast<int>(degrees_.size()) - 1; }
  int d() const { return d_; }
  int d0() const { return degrees_[0]; }
  const std::vector<int>& degrees() const { return degrees_; }
  Exponent dbar() const { return Exponent(degrees_.begin() + 1, degrees_.end()); }

  // The monomial as a tensor: moment value 1 at dbar, 0 elsewhere.
  SymTensor tensor() const;
  std::string to_string() const;

 private:
  std::vector<int> degrees_;
  int d_ = 0;
};

struct GradedVarSet {
  std::vector<Exponent> vars;  // all of Y, graded-lex
  std::vector<int> grade;      // k with (k-1)(d0+1)+1 <= |g|-d <= k(d0+1)
  std::vector<int> exceed;     // number of i with g_i > d_i
  std::vector<Exponent> params;  // exceed == 1
  int max_grade = 0;
};

// {x^a : 0 <= a_i <= d_i}.
MonomialBasis monomial_basis(const MonomialSpec& spec);

GradedVarSet parameter_set(const MonomialSpec& spec);

// |Y_P|, cross-checked against sum_j h_I(d_j - d0) for I = (a_j^{d_j+1}).
int vsp_dimension(const MonomialSpec& spec);

// prod_{j >= 1} (d_j + 1).
std::int64_t monomial_rank(const MonomialSpec& spec);

// Y_P values: 1 on the n parameters with g_i = 2 d_i + 1 and g_j = d_j
// otherwise, 0 on the rest.
MomentAssignment canonical_assignment(const MonomialSpec& spec);

// Resolves every moment variable from the Y_P values, grade by grade, each
// from one bordered determinant that is affine in its corner.
MomentAssignment graded_solve(const MonomialSpec& spec, const MomentAssignment& yp);

// Largest disagreement between the corner value and the Schur complement
// over every unpaired representation of every non-parameter variable.
double representation_spread(const MonomialSpec& spec, const MomentAssignment& full);

// Points (1, z1^{a1}, ..., zn^{an}) over the grid 0 <= a_i <= d_i with z_i a
// primitive (d_i+1)-th root of unity, plus fitted weights.
Decomposition canonical_decomposition(const MonomialSpec& spec);

struct MonomialResult {
  Decomposition decomposition;
  MomentAssignment params;  // Y_P values used
  MomentAssignment moments; // every moment variable
  double residual = 0.0;
};

// Y_P values from `params` where given, the rest complex Gaussian from seed.
MonomialResult monomial_decompose(const MonomialSpec& spec, const MomentAssignment& params,
                                  std::uint64_t seed, double tol = kDefaultTol);

struct TorusResult {
  bool equivalent = false;
  Vec tau;  // valid when equivalent
};

// Is there tau in (C*)^n with tau^{g - dbar} p1(g) = p2(g) for all g in Y_P?
// A parameter that vanishes in exactly one assignment makes the answer no.
TorusResult torus_equivalent(const MonomialSpec& spec, const MomentAssignment& p1,
                             const MomentAssignment& p2, double tol = kDefaultTol);

}  // namespace waring
