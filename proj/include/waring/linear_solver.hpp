#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "waring/hankel.hpp"

namespace waring {

enum class EquationKind { Zero, Linear, Quadratic };

// Degree of det H_{B+a x_i, B+b x_j} - det H_{B+a x_j, B+b x_i} as a
// polynomial in the moment variables. Only d = 4 is supported.
EquationKind classify_equation(const MonomialBasis& b, int d, const Exponent& alpha, int i,
                               const Exponent& beta, int j);

// One linear relation. Unpaired: det H_{B+row, B+col} = 0 with row = alpha+e_i,
// col = beta+e_j and beta+e_i in B. Paired: the same determinant minus the one
// with i and j swapped.
struct EquationIndex {
  bool paired = false;
  Exponent alpha;
  int i = 0;
  Exponent beta;
  int j = 0;

  Exponent row() const;
  Exponent col() const;
  std::string to_string() const;
};

// Unpaired relations first (graded-lex on (row, col)), then paired ones.
std::vector<EquationIndex> linear_equations(const MonomialBasis& b, bool unpaired_only = false);

struct LinSystem {
  Mat A;  // scaled by det H_BB, as the expanded determinants are
  Vec b;
  std::vector<Exponent> vars;  // graded-lex
  std::vector<EquationIndex> eqs;
  Complex det_hbb{};
};

LinSystem assemble_linear_system(const SymTensor& phi, const MonomialBasis& b,
                                 bool unpaired_only = false, double tol = kDefaultTol);

// Quadratic relations for d = 4: alpha < beta both of degree 2, i < j.
struct QuadraticRelation {
  Exponent alpha;
  int i = 0;
  Exponent beta;
  int j = 0;
};

std::vector<QuadraticRelation> quadratic_relations(const MonomialBasis& b);

// The relation divided by det H_BB, as a function of the moment vector
// (ordered like LinSystem::vars). The degree-6 corner cancels.
Complex quadratic_value(const SymTensor& phi, const MonomialBasis& b, const std::vector<Exponent>& vars,
                        const QuadraticRelation& q, const Vec& y);

struct ExtensionResult {
  enum class Kind { Unique, Family, Fail };
  Kind kind = Kind::Fail;
  std::vector<Exponent> vars;
  Vec particular;  // minimum-norm solution
  Mat nullspace;   // orthonormal columns; empty for Unique
  std::string reason;
  int rank = 0;
  int equations = 0;  // linear rows used, including those added by the loop
  int initial_equations = 0;
  int rounds = 0;
  double residual = 0.0;

  MomentAssignment member(const Vec& t) const;
  MomentAssignment assignment() const { return member(Vec::Zero(nullspace.cols())); }
};

const char* kind_name(ExtensionResult::Kind k);

ExtensionResult solve_extension(const SymTensor& phi, const MonomialBasis& b, std::uint64_t seed,
                                double tol = kDefaultTol, int max_rounds = 4);

struct Certificate {
  int n = 0;
  int r = 0;
  int y = 0;
  int e_lin = 0;
  int rank_a = 0;
  bool unique = false;
  int family_dim = 0;
  int rounds = 0;
  double residual = 0.0;

  std::string to_string() const;
};

struct Decompose4Result {
  Decomposition decomposition;
  Certificate certificate;
  MonomialBasis basis;
  ExtensionResult extension;
};

// find_basis -> linear system -> extension -> eigenvectors -> weights.
// Inessential variables are removed first and restored afterwards; with
// `randomize` the tensor is moved by a random unitary before everything.
// An explicit basis replaces find_basis and needs a concise, unmoved tensor.
Decompose4Result decompose4(const SymTensor& phi, std::uint64_t seed, double tol = kDefaultTol,
                            bool randomize = false, const std::optional<MonomialBasis>& basis = std::nullopt);

struct Counts {
  std::int64_t y = 0;
  std::int64_t e1 = 0;
};

// |Y| and the number of unpaired relations for B = first r monomials with
// r = sum_{j=0..c} (n-j+1).
Counts count_Y_E1(int n, int c);

// Root in (0,1) of -(2/15)t^3 + (11/24)t^2 - t/2 + 1/6.
double tstar();

// Smallest n with e1 >= y at every m in [n, n+64], where the count formulas
// are read as polynomials in (m, c) with c = t m not rounded.
int count_threshold(double t);

}  // namespace waring
