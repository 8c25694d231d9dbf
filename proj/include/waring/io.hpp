#pragma once

#include <iosfwd>
#include <string>

#include "waring/hankel.hpp"

namespace waring {

// "re+imi" with 17 significant digits, e.g. "0.5-2i".
std::string format_complex(Complex z);
Complex parse_complex(const std::string& s);

// symtensor n=<n> d=<d>
// <a1> ... <an> : <re> <im>      one line per nonzero entry, graded-lex
void write_tensor(std::ostream& os, const SymTensor& phi);
SymTensor read_tensor(std::istream& is);

// decomposition n=<n> s=<s>
// <z0> ... <zn> : <lambda_re> <lambda_im>   entries z as re+imi
void write_decomposition(std::ostream& os, const Decomposition& dec);
Decomposition read_decomposition(std::istream& is);

// <a1> ... <an> : <re> <im> per line.
void write_assignment(std::ostream& os, const MomentAssignment& m);
MomentAssignment read_assignment(std::istream& is, int n);

// One exponent per line.
MonomialBasis read_basis(std::istream& is, int n);

}  // namespace waring
