#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "waring/error.hpp"
#include "waring/finite_field.hpp"
#include "waring/io.hpp"
#include "waring/jennrich.hpp"
#include "waring/linear_solver.hpp"
#include "waring/monomial.hpp"

using namespace waring;

namespace {

enum Exit { kOk = 0, kInput = 1, kAlgorithm = 2, kStructural = 3 };

int exit_code(Errc c) {
  switch (c) {
    case Errc::Parse:
    case Errc::DimensionMismatch:
    case Errc::OutOfRange:
    case Errc::NotPrime:
    case Errc::Singular:
      return kInput;
    case Errc::OrderTooSmall:
    case Errc::OrderUnsupported:
    case Errc::ConditionViolated:
    case Errc::NotEnoughEquations:
    case Errc::Unverifiable:
      return kStructural;
    default:
      return kAlgorithm;
  }
}

struct Common {
  std::string input = "-";
  std::string output = "-";
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  bool randomize = false;
};

void add_common(CLI::App* app, Common& c, bool with_input = true) {
  if (with_input) app->add_option("--input,-i", c.input, "tensor file, '-' for stdin")->required();
  app->add_option("--output,-o", c.output, "output file, '-' for stdout");
  app->add_option("--seed", c.seed, "seed for every random choice");
  app->add_option("--tol", c.tol, "rank / residual tolerance");
  app->add_flag("--randomize", c.randomize, "apply a seeded random change of basis first");
}

SymTensor load_tensor(const std::string& path) {
  if (path == "-") return read_tensor(std::cin);
  std::ifstream f(path);
  if (!f) throw Error(Errc::Parse, "cannot open " + path);
  try {
    return read_tensor(f);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

template <class Reader>
auto load_with(const std::string& path, Reader read) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::Parse, "cannot open " + path);
  try {
    return read(f);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

// Main output to --output; the one-line summary to stdout, or stderr when
// stdout already carries the output.
void emit(const Common& c, const std::string& body, const std::string& summary) {
  if (c.output == "-") {
    std::cout << body;
    std::cerr << summary << "\n";
  } else {
    std::ofstream f(c.output);
    if (!f) throw Error(Errc::Parse, "cannot write " + c.output);
    f << body;
    std::cout << summary << "\n";
  }
}

std::string residual_text(double r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

std::string decomposition_text(const Decomposition& d) {
  std::ostringstream os;
  write_decomposition(os, d);
  return os.str();
}

Decomposition run_jennrich(const SymTensor& phi, const Common& c) {
  if (!c.randomize) return jennrich_decompose(phi, c.seed, c.tol);
  const Mat m = random_gl(phi.n(), c.seed + 0x5bd1e995ULL);
  Decomposition d = pull_back(jennrich_decompose(apply_gl(phi, m), c.seed, c.tol), m, phi.d(), c.tol);
  return d;
}

int cmd_decompose(const Common& c, const std::string& basis_opt, int size, const std::string& params_file,
                  bool force_jennrich) {
  const SymTensor phi = load_tensor(c.input);
  const int d = phi.d();

  if (!force_jennrich && size > 0) {
    if (phi.n() != 1) throw Error(Errc::DimensionMismatch, "--size is the binary path and needs n = 1");
    MomentAssignment params;
    if (!params_file.empty()) params = load_with(params_file, [](std::istream& is) { return read_assignment(is, 1); });
    const BinaryResult r = binary_decompose(phi, size, c.seed, params, c.tol);
    if (!(r.residual <= c.tol))
      throw Error(Errc::ResidualTooLarge, "reconstruction residual " + residual_text(r.residual) + " exceeds tolerance",
                  "solve_weights");
    emit(c, decomposition_text(r.decomposition),
         "binary s=" + std::to_string(size) + " free=" + std::to_string(r.free_parameters) +
             " residual=" + residual_text(r.residual));
    return kOk;
  }
  if (d < 3) throw Error(Errc::OrderTooSmall, "decomposition needs d >= 3 (or --size for n = 1)");

  const int lower = numerical_rank(catalecticant(phi, (d - 1) / 2), c.tol);
  const int middle = numerical_rank(catalecticant(phi, d / 2), c.tol);
  if (force_jennrich || d % 2 == 1 || lower == middle) {
    const Decomposition dec = run_jennrich(phi, c);
    const double res = reconstruction_residual(phi, dec);
    emit(c, decomposition_text(dec),
         "jennrich n=" + std::to_string(phi.n()) + " d=" + std::to_string(d) + " r=" +
             std::to_string(dec.points.rows()) + " residual=" + residual_text(res));
    return kOk;
  }
  if (d != 4)
    throw Error(Errc::OrderUnsupported,
                "rank(Cat) grows past the middle and d != 4; only the order-4 linear path is implemented");

  std::optional<MonomialBasis> basis;
  if (basis_opt.rfind("explicit:", 0) == 0) {
    const std::string file = basis_opt.substr(9);
    basis = load_with(file, [&](std::istream& is) { return read_basis(is, phi.n()); });
  } else if (basis_opt != "auto") {
    throw Error(Errc::Parse, "--basis must be 'auto' or 'explicit:<file>'");
  }
  const Decompose4Result r = decompose4(phi, c.seed, c.tol, c.randomize, basis);
  emit(c, decomposition_text(r.decomposition), r.certificate.to_string());
  return kOk;
}

int cmd_monomial(const Common& c, const std::vector<int>& degrees, bool canonical, bool seeded,
                 const std::string& params_file) {
  const MonomialSpec spec(degrees);
  const GradedVarSet gv = parameter_set(spec);
  Decomposition dec;
  double res = 0.0;
  std::string mode = "canonical";
  if (!canonical && (seeded || !params_file.empty())) {
    MomentAssignment params;
    if (!params_file.empty())
      params = load_with(params_file, [&](std::istream& is) { return read_assignment(is, spec.n()); });
    for (const auto& [g, v] : params)
      if (std::find(gv.params.begin(), gv.params.end(), g) == gv.params.end())
        throw Error(Errc::OutOfRange, "y_" + to_string(g) + " is not a parameter for this monomial");
    const MonomialResult r = monomial_decompose(spec, params, c.seed, c.tol);
    dec = r.decomposition;
    res = r.residual;
    mode = params_file.empty() ? "seed=" + std::to_string(c.seed) : "params";
  } else {
    dec = canonical_decomposition(spec);
    res = reconstruction_residual(spec.tensor(), dec);
  }
  emit(c, decomposition_text(dec),
       "monomial " + spec.to_string() + " rank=" + std::to_string(monomial_rank(spec)) +
           " |Y|=" + std::to_string(gv.vars.size()) + " |Y_P|=" + std::to_string(vsp_dimension(spec)) + " " + mode +
           " residual=" + residual_text(res));
  return kOk;
}

struct VerifyArgs {
  int n = 0, r = 0;
  std::uint64_t prime = kDefaultPrime;
  int trials = 3;
  bool unpaired = false;
  bool table = false;
  int n_min = 2, n_max = 6;
  int jobs = 1;
  std::string certificate;
};

int cmd_verify(const Common& c, const VerifyArgs& a) {
  if (!is_prime(a.prime) || a.prime < 3) throw Error(Errc::NotPrime, std::to_string(a.prime) + " is not an odd prime");
  if (!a.certificate.empty()) {
    const FFCertificate cert = load_with(a.certificate, [](std::istream& is) {
      std::stringstream ss;
      ss << is.rdbuf();
      return FFCertificate::parse(ss.str());
    });
    const bool ok = cert.reverify();
    std::cout << (ok ? "certificate verified" : "certificate REJECTED") << " n=" << cert.points.n << " r=" << cert.r
              << " rank=" << cert.rank << " columns=" << cert.columns << "\n";
    return ok ? kOk : kAlgorithm;
  }
  if (a.table) {
    const auto rows = reproduce_table(a.n_min, a.n_max, a.prime, c.seed, a.trials, a.jobs);
    std::ostringstream os;
    os << "n r_n c_n r'_n\n";
    for (const auto& row : rows) os << row.n << " " << row.r_max << " " << row.c_max << " " << row.r_prime << "\n";
    emit(c, os.str(), "table n=" + std::to_string(a.n_min) + ".." + std::to_string(a.n_max) +
                          " trials=" + std::to_string(a.trials));
    return kOk;
  }
  const VerifyResult v = verify_format(a.n, a.r, a.prime, c.seed, a.trials, a.unpaired);
  const std::string shape = "n=" + std::to_string(a.n) + " r=" + std::to_string(a.r) +
                            " rows=" + std::to_string(v.rows) + " |Y|=" + std::to_string(v.columns);
  switch (v.status) {
    case FormatStatus::FullColumnRank:
      emit(c, v.certificate.to_string(),
           "FullColumnRank " + shape + " trials=" + std::to_string(v.trials_used) +
               (a.unpaired ? " (unpaired relations only)" : " : efficient format"));
      return kOk;
    case FormatStatus::Deficient:
      std::cerr << "Deficient " << shape << " best_rank=" << v.rank
                << " : certifies nothing, the points may be unlucky\n";
      return kAlgorithm;
    case FormatStatus::NotEnoughEquations:
      std::cerr << "NotEnoughEquations " << shape << " : not enough linear equations\n";
      return kStructural;
  }
  return kAlgorithm;
}

int cmd_counts(std::optional<int> n, std::optional<int> c, std::optional<double> t, bool show_tstar) {
  if (show_tstar) std::printf("t*=%.12f\n", tstar());
  if (t) std::cout << "t=" << *t << " n_t=" << count_threshold(*t) << "\n";
  if (n) {
    const int lo = c ? *c : 1, hi = c ? *c : *n;
    for (int k = lo; k <= hi; ++k) {
      const Counts cnt = count_Y_E1(*n, k);
      int r = 0;
      for (int j = 0; j <= k; ++j) r += *n - j + 1;
      std::cout << "n=" << *n << " c=" << k << " r=" << r << " |Y|=" << cnt.y << " |E1|=" << cnt.e1 << "\n";
    }
  } else if (c) {
    throw Error(Errc::OutOfRange, "--c needs --n");
  }
  if (!n && !t && !show_tstar) throw Error(Errc::OutOfRange, "give --n [--c], --t or --tstar");
  return kOk;
}

int cmd_hilbert(const Common& c) {
  const SymTensor phi = load_tensor(c.input);
  const auto h = hilbert_function(phi, c.tol);
  std::ostringstream os;
  os << "catalecticant ranks:";
  for (int v : h) os << " " << v;
  os << "\n";
  const auto ev = essential_vars(phi, c.tol);
  os << "essential variables: " << ev.count << " of " << phi.n() + 1 << "\n";
  std::cout << os.str();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric tensor decomposition by moment matrix extension"};
  app.require_subcommand(1, 1);

  Common common;
  std::string basis = "auto";
  int size = 0;
  std::string params_file;
  auto* dec = app.add_subcommand("decompose", "decompose a tensor (Jennrich, order-4 linear path or binary)");
  add_common(dec, common);
  dec->add_option("--basis", basis, "auto | explicit:<file>");
  dec->add_option("--size", size, "decomposition size for the binary (n = 1) path");
  dec->add_option("--params", params_file, "moment values for the binary path");

  auto* jen = app.add_subcommand("jennrich", "simultaneous diagonalization only");
  add_common(jen, common);

  std::vector<int> degrees;
  bool canonical = false;
  auto* mono = app.add_subcommand("monomial", "decompose x0^d0 ... xn^dn");
  add_common(mono, common, false);
  mono->add_option("--degrees", degrees, "d0,d1,...,dn")->delimiter(',')->required();
  mono->add_flag("--canonical", canonical, "roots-of-unity decomposition (default)");
  mono->add_option("--params", params_file, "values for the parameters Y_P");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "exact rank of the linear-relation matrix over F_p");
  add_common(ver, common, false);
  ver->add_option("--n", va.n, "number of dehomogenized variables");
  ver->add_option("--r", va.r, "rank / basis size");
  ver->add_option("--prime", va.prime, "odd prime");
  ver->add_option("--trials", va.trials, "seeded point sets to try");
  ver->add_flag("--e1-only", va.unpaired, "use only the unpaired relations");
  ver->add_flag("--table", va.table, "reproduce the maximum-r table for --n-min..--n-max");
  ver->add_option("--n-min", va.n_min);
  ver->add_option("--n-max", va.n_max);
  ver->add_option("--jobs", va.jobs, "worker threads for --table");
  ver->add_option("--certificate", va.certificate, "re-verify an ffcert file");

  std::optional<int> cn, cc;
  std::optional<double> ct;
  bool show_tstar = false;
  auto* cnt = app.add_subcommand("counts", "|Y| and |E1| counts, thresholds");
  cnt->add_option("--n", cn);
  cnt->add_option("--c", cc);
  cnt->add_option("--t", ct);
  cnt->add_flag("--tstar", show_tstar);

  auto* hil = app.add_subcommand("hilbert", "catalecticant ranks of a tensor");
  add_common(hil, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*dec) return cmd_decompose(common, basis, size, params_file, false);
    if (*jen) return cmd_decompose(common, "auto", 0, "", true);
    if (*mono) {
      const bool seeded = mono->count("--seed") > 0;
      return cmd_monomial(common, degrees, canonical, seeded, params_file);
    }
    if (*ver) {
      if (!va.table && va.certificate.empty() && (ver->count("--n") == 0 || ver->count("--r") == 0))
        throw Error(Errc::Parse, "verify needs --n and --r (or --table / --certificate)");
      return cmd_verify(common, va);
    }
    if (*cnt) return cmd_counts(cn, cc, ct, show_tstar);
    if (*hil) return cmd_hilbert(common);
  } catch (const Error& e) {
    std::cerr << "error: " << errc_name(e.code());
    if (!e.stage().empty()) std::cerr << " [" << e.stage() << "]";
    std::cerr << ": " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAlgorithm;
  }
  return kInput;
}
