#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace waring {

// Dehomogenized exponent: entry j is the power of x_{j+1}; the x0 power is
// implicit (d - |a|).
using Exponent = std::vector<int>;

int degree(const Exponent& a);

Exponent operator+(const Exponent& a, const Exponent& b);

// e_i in n variables, i in [0, n).
Exponent unit(int n, int i);

// Graded lex: total degree first, then larger leading powers first, so
// x1^2 < x1*x2 < x2^2 and x1 < x2.
bool glex_less(const Exponent& a, const Exponent& b);

struct GlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const { return glex_less(a, b); }
};

std::int64_t binomial(int n, int k);

// Index of `a` in monomials_up_to(n, k) for any k >= |a|. The graded order
// makes this independent of k.
std::size_t glex_position(const Exponent& a);

std::vector<Exponent> monomials_of_degree(int n, int k);
std::vector<Exponent> monomials_up_to(int n, int k);

// "1", "x1^2*x3", ...
std::string to_string(const Exponent& a);

}  // namespace waring
