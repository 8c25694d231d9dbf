#pragma once

#include <cstdint>
#include <vector>

#include "waring/tensor.hpp"

namespace waring {

// slices[j](a, b) = phi_{a+b+e_j}, e_0 adding nothing; rows |a| <= D,
// columns |b| <= d-1-D with D = floor((d-1)/2).
struct SliceSet {
  int D = 0;
  std::vector<Mat> slices;
};

SliceSet slices(const SymTensor& phi);

struct WeightFit {
  Vec weights;
  double residual = 0.0;  // relative, see reconstruction_residual
};

// Least squares for vandermonde(points, <= d)^T lambda = coeffs(phi).
WeightFit solve_weights(const SymTensor& phi, const PointSet& points);

// Simultaneous diagonalization through one random combination of the
// slices. Requires rank(phi) = rank of the middle catalecticant.
Decomposition jennrich_decompose(const SymTensor& phi, std::uint64_t seed, double tol = kDefaultTol);

}  // namespace waring
