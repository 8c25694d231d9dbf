#include "waring/io.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "waring/error.hpp"

namespace waring {

namespace {

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

Error parse_error(int line, const std::string& why) {
  return Error(Errc::Parse, "line " + std::to_string(line) + ": " + why);
}

// Next line that is neither blank nor a '#' comment.
bool next_line(std::istream& is, std::string& line, int& number) {
  while (std::getline(is, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

double parse_real(const std::string& tok, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw parse_error(line, "expected a number, got '" + tok + "'");
  }
  if (used != tok.size()) throw parse_error(line, "expected a number, got '" + tok + "'");
  return v;
}

int parse_int(const std::string& tok, int line) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw parse_error(line, "expected an integer, got '" + tok + "'");
  }
  if (used != tok.size()) throw parse_error(line, "expected an integer, got '" + tok + "'");
  return v;
}

// Splits "<left> : <right>" into whitespace tokens on each side.
void split_colon(const std::string& line, int number, std::vector<std::string>& left,
                 std::vector<std::string>& right) {
  const auto colon = line.find(':');
  if (colon == std::string::npos) throw parse_error(number, "missing ':'");
  std::istringstream l(line.substr(0, colon)), r(line.substr(colon + 1));
  std::string t;
  while (l >> t) left.push_back(t);
  while (r >> t) right.push_back(t);
}

Exponent parse_exponent(const std::vector<std::string>& toks, int n, int line) {
  if (static_cast<int>(toks.size()) != n)
    throw parse_error(line, "expected " + std::to_string(n) + " exponents, got " + std::to_string(toks.size()));
  Exponent a;
  for (const auto& t : toks) {
    const int v = parse_int(t, line);
    if (v < 0) throw parse_error(line, "negative exponent");
    a.push_back(v);
  }
  return a;
}

void parse_header(const std::string& line, int number, const std::string& tag, const char* k1, int& v1,
                  const char* k2, int& v2) {
  std::istringstream is(line);
  std::string word, a, b;
  if (!(is >> word >> a >> b) || word != tag)
    throw parse_error(number, "expected header '" + tag + " " + k1 + "=<int> " + k2 + "=<int>'");
  auto field = [&](const std::string& tok, const char* key) {
    const std::string prefix = std::string(key) + "=";
    if (tok.rfind(prefix, 0) != 0) throw parse_error(number, "expected '" + prefix + "<int>' in header");
    return parse_int(tok.substr(prefix.size()), number);
  };
  v1 = field(a, k1);
  v2 = field(b, k2);
  std::string extra;
  if (is >> extra) throw parse_error(number, "unexpected '" + extra + "' in header");
}

}  // namespace

std::string format_complex(Complex z) {
  const std::string im = g17(z.imag());
  return g17(z.real()) + (im[0] == '-' ? "" : "+") + im + "i";
}

Complex parse_complex(const std::string& s) {
  if (s.empty()) throw Error(Errc::Parse, "empty complex number");
  if (s.back() != 'i') return {parse_real(s, 0), 0.0};
  // Split at the last sign that is not part of an exponent or the leading one.
  std::size_t cut = std::string::npos;
  for (std::size_t k = s.size() - 1; k > 0; --k)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      cut = k;
      break;
    }
  const std::string body = s.substr(0, s.size() - 1);
  if (cut == std::string::npos) return {0.0, parse_real(body, 0)};
  std::string im = body.substr(cut);
  if (im == "+" || im == "-") im += "1";
  return {parse_real(body.substr(0, cut), 0), parse_real(im, 0)};
}

void write_tensor(std::ostream& os, const SymTensor& phi) {
  os << "symtensor n=" << phi.n() << " d=" << phi.d() << "\n";
  for (std::size_t k = 0; k < phi.size(); ++k) {
    const Complex v = phi.coeffs()[static_cast<Eigen::Index>(k)];
    if (v == Complex(0.0, 0.0)) continue;
    const auto& a = phi.monomials()[k];
    for (std::size_t j = 0; j < a.size(); ++j) os << (j ? " " : "") << a[j];
    os << (a.empty() ? ": " : " : ") << g17(v.real()) << " " << g17(v.imag()) << "\n";
  }
}

SymTensor read_tensor(std::istream& is) {
  std::string line;
  int number = 0;
  if (!next_line(is, line, number)) throw parse_error(1, "empty input, expected 'symtensor n=<n> d=<d>'");
  int n = 0, d = 0;
  parse_header(line, number, "symtensor", "n", n, "d", d);
  if (n < 0 || d < 0) throw parse_error(number, "n and d must be non-negative");
  SymTensor phi(n, d);
  while (next_line(is, line, number)) {
    std::vector<std::string> left, right;
    split_colon(line, number, left, right);
    const Exponent a = parse_exponent(left, n, number);
    if (degree(a) > d) throw parse_error(number, "exponent degree exceeds d");
    if (right.size() != 2) throw parse_error(number, "expected '<re> <im>' after ':'");
    phi.at(a) = Complex(parse_real(right[0], number), parse_real(right[1], number));
  }
  return phi;
}

void write_decomposition(std::ostream& os, const Decomposition& dec) {
  const auto s = dec.points.rows();
  os << "decomposition n=" << dec.points.cols() - 1 << " s=" << s << "\n";
  for (Eigen::Index i = 0; i < s; ++i) {
    for (Eigen::Index j = 0; j < dec.points.cols(); ++j) os << (j ? " " : "") << format_complex(dec.points(i, j));
    const Complex w = i < dec.weights.size() ? dec.weights[i] : Complex(0.0, 0.0);
    os << " : " << g17(w.real()) << " " << g17(w.imag()) << "\n";
  }
}

Decomposition read_decomposition(std::istream& is) {
  std::string line;
  int number = 0;
  if (!next_line(is, line, number)) throw parse_error(1, "empty input, expected 'decomposition n=<n> s=<s>'");
  int n = 0, s = 0;
  parse_header(line, number, "decomposition", "n", n, "s", s);
  if (n < 0 || s < 0) throw parse_error(number, "n and s must be non-negative");
  Decomposition dec;
  dec.points = PointSet(s, n + 1);
  dec.weights = Vec(s);
  for (int i = 0; i < s; ++i) {
    if (!next_line(is, line, number)) throw parse_error(number + 1, "expected " + std::to_string(s) + " point rows");
    std::vector<std::string> left, right;
    split_colon(line, number, left, right);
    if (static_cast<int>(left.size()) != n + 1) throw parse_error(number, "expected n+1 coordinates");
    for (int j = 0; j <= n; ++j) {
      try {
        dec.points(i, j) = parse_complex(left[static_cast<std::size_t>(j)]);
      } catch (const Error&) {
        throw parse_error(number, "bad complex entry '" + left[static_cast<std::size_t>(j)] + "'");
      }
    }
    if (right.size() != 2) throw parse_error(number, "expected '<lambda_re> <lambda_im>' after ':'");
    dec.weights[i] = Complex(parse_real(right[0], number), parse_real(right[1], number));
  }
  if (next_line(is, line, number)) throw parse_error(number, "more point rows than s");
  return dec;
}

void write_assignment(std::ostream& os, const MomentAssignment& m) {
  std::vector<std::pair<Exponent, Complex>> items(m.begin(), m.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return glex_less(a.first, b.first); });
  for (const auto& [a, v] : items) {
    for (std::size_t j = 0; j < a.size(); ++j) os << (j ? " " : "") << a[j];
    os << " : " << g17(v.real()) << " " << g17(v.imag()) << "\n";
  }
}

MomentAssignment read_assignment(std::istream& is, int n) {
  MomentAssignment m;
  std::string line;
  int number = 0;
  while (next_line(is, line, number)) {
    std::vector<std::string> left, right;
    split_colon(line, number, left, right);
    const Exponent a = parse_exponent(left, n, number);
    if (right.size() != 2) throw parse_error(number, "expected '<re> <im>' after ':'");
    m[a] = Complex(parse_real(right[0], number), parse_real(right[1], number));
  }
  return m;
}

MonomialBasis read_basis(std::istream& is, int n) {
  std::vector<Exponent> el;
  std::string line;
  int number = 0;
  while (next_line(is, line, number)) {
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    el.push_back(parse_exponent(toks, n, number));
  }
  return MonomialBasis(n, el);
}

}  // namespace waring
