#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "waring/hankel.hpp"

namespace waring {

inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t p);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);
std::uint64_t reduce(long long v, std::uint64_t p);

class FFMatrix {
 public:
  FFMatrix(std::uint64_t p, std::size_t rows, std::size_t cols);

  std::uint64_t prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::uint64_t* row(std::size_t r) const { return data_.data() + r * cols_; }

 private:
  std::uint64_t p_;
  std::size_t rows_, cols_;
  std::vector<std::uint64_t> data_;
};

// Exact rank by Gaussian elimination mod p; stops early at full column rank.
int ff_rank(const FFMatrix& m);

// Determinant mod p.
std::uint64_t ff_determinant(const FFMatrix& m);

struct FFPointSet {
  std::uint64_t p = kDefaultPrime;
  int n = 0;
  std::vector<std::vector<std::uint64_t>> points;  // rows (1, z_1, ..., z_n)
};

// r distinct points with first coordinate 1 and the rest uniform mod p.
FFPointSet random_ff_points(int n, int r, std::uint64_t p, std::uint64_t seed);

// The linear-relation matrix for phi = sum z^{(x)4} over F_p with B the first
// r graded-lex monomials; rows and columns ordered as assemble_linear_system.
FFMatrix ff_assemble(int n, int r, const FFPointSet& points, bool unpaired_only = false);

enum class FormatStatus { FullColumnRank, Deficient, NotEnoughEquations };
const char* status_name(FormatStatus s);

struct FFCertificate {
  FFPointSet points;
  int r = 0;
  bool unpaired_only = false;
  int rank = 0;
  int columns = 0;

  std::string to_string() const;
  static FFCertificate parse(const std::string& text);
  // Rebuilds the matrix from the points alone and checks rank == columns.
  bool reverify() const;
};

struct VerifyResult {
  FormatStatus status = FormatStatus::Deficient;
  int rows = 0;
  int columns = 0;
  int rank = 0;  // best over trials
  int trials_used = 0;
  FFCertificate certificate;  // meaningful for FullColumnRank
};

// Structural counts for B = first r monomials: (rows, columns).
std::pair<int, int> structural_shape(int n, int r, bool unpaired_only = false);

VerifyResult verify_points(const FFPointSet& points, int r, bool unpaired_only = false);

// Up to `trials` seeded point sets (seed, seed+1, ...); a singular principal
// block is redrawn once per trial.
VerifyResult verify_format(int n, int r, std::uint64_t p = kDefaultPrime, std::uint64_t seed = 0,
                           int trials = 3, bool unpaired_only = false);

struct TableRow {
  int n = 0;
  int r_max = 0;    // largest r with full column rank, all relations
  int c_max = 0;    // largest c with the unpaired-only matrix full rank
  int r_prime = 0;  // sum_{j=0..c_max} (n-j+1)
};

TableRow reproduce_row(int n, std::uint64_t p, std::uint64_t seed, int trials);
std::vector<TableRow> reproduce_table(int n_min, int n_max, std::uint64_t p, std::uint64_t seed,
                                      int trials, int jobs = 1);

// Exact integer determinant (fraction-free elimination).
__int128 exact_determinant(std::vector<std::vector<long long>> m);

}  // namespace waring
