#include "CLI11.hpp"

#include "hill/diffpoly.hpp"
#include "hill/odecore.hpp"
#include "hill/potential.hpp"
#include "hill/products.hpp"
#include "hill/spectra.hpp"
#include "hill/verify.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace hill;

constexpr double kPi = M_PI;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Inline mini-language and JSON file input are mutually exclusive; exactly
// one must be present.
Potential load_potential(const std::string& inline_spec, const std::string& json_path) {
  if (inline_spec.empty() == json_path.empty())
    throw CLI::ValidationError("potential", "give exactly one of -q and --q-json");
  if (!inline_spec.empty()) return parse_potential(inline_spec);
  std::ifstream in(json_path);
  if (!in) throw CLI::ValidationError("potential", "cannot open " + json_path);
  std::stringstream buf;
  buf << in.rdbuf();
  return Potential::from_json(buf.str());
}

struct Range {
  int lo = 0, hi = 0;
};

Range parse_range(const std::string& text) {
  Range r;
  char sep = 0;
  std::istringstream in(text);
  if (!(in >> r.lo >> sep >> r.hi) || sep != ':' || !in.eof())
    throw CLI::ValidationError("range", "expected lo:hi, got '" + text + "'");
  if (r.lo < 1 || r.hi < r.lo || r.hi > 256)
    throw CLI::ValidationError("range", "need 1 <= lo <= hi <= 256");
  return r;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CLI::ValidationError("output", "cannot open " + path);
  out << text;
}

// For a multi-report run the check name lands before the extension:
// out.csv -> out.mu.csv.
std::string tagged_path(const std::string& path, const std::string& tag) {
  auto dot = path.rfind('.');
  auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + "." + tag;
  return path.substr(0, dot) + "." + tag + path.substr(dot);
}

int run_spectrum(const Potential& q, int n_max, double tol, const std::string& out,
                 const std::string& format) {
  SpectralTable t = build_table(q, n_max, tol);
  write_output(out, format == "json" ? t.to_json(q) : t.to_csv());
  return 0;
}

int run_verify(const Potential& q, const std::string& theorem, int N, Range win, double tol,
               const std::string& out) {
  std::vector<Check> checks;
  if (theorem == "1") {
    checks = {Check::kappa};
  } else if (theorem == "2") {
    checks = {q.is_real() ? Check::pair_real : Check::pair_complex};
  } else if (theorem == "3") {
    checks = {Check::tau};
  } else if (theorem == "4") {
    checks = {Check::mu, Check::eta};
  } else if (theorem == "B") {
    if (!q.is_real()) {
      std::cerr << "hillspec: the gap-versus-coefficient form needs a real potential\n";
      return 1;
    }
    checks = {Check::gap};
  } else if (theorem == "cor32") {
    checks = {Check::tau_minus_mu};
  } else {
    std::cerr << "hillspec: unknown theorem tag '" << theorem << "'\n";
    return 1;
  }

  SpectralTable table = build_table(q, win.hi, tol);
  std::vector<ResidualReport> reports;
  for (Check c : checks)
    reports.push_back(verify_check(q, c, N, win.lo, win.hi, tol, 0.0, &table));

  std::string json = "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i)
    json += reports[i].summary_json() + (i + 1 < reports.size() ? ",\n" : "\n");
  json += "]\n";
  std::cout << json;

  if (!out.empty()) {
    for (const ResidualReport& r : reports) {
      std::string path = reports.size() == 1 ? out : tagged_path(out, check_name(r.check));
      write_output(path, r.to_csv());
    }
  }

  bool any_fail = false, any_inconclusive = false;
  for (const ResidualReport& r : reports) {
    any_fail |= r.status == ResidualReport::Status::fail;
    any_inconclusive |= r.status == ResidualReport::Status::inconclusive;
  }
  if (any_fail) return 2;
  return any_inconclusive ? 3 : 0;
}

int run_sk(int k, const std::string& qspec, const std::string& qjson) {
  std::cout << sk_pretty(k) << "\n";
  if (!qspec.empty() || !qjson.empty()) {
    cplx v = a_k(k, load_potential(qspec, qjson));
    std::cout << "a_" << k << " = " << fmt(v.real());
    if (v.imag() != 0.0) std::cout << " + " << fmt(v.imag()) << "*i";
    std::cout << "\n";
  }
  return 0;
}

// Worst l2 amplification of the discrete transform over random unit vectors
// of random length; the operator bound is 2 pi.
int run_hilbert_norm(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> slen(1, 256);
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<cplx> a(slen(rng));
    double nrm = 0.0;
    for (auto& v : a) {
      v = cplx(u(rng), u(rng));
      nrm += std::norm(v);
    }
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) continue;
    for (auto& v : a) v /= nrm;
    auto h = hilbert_transform(a, 1024);
    double out = 0.0;
    for (cplx v : h) out += std::norm(v);
    worst = std::max(worst, std::sqrt(out));
  }
  std::cout << "trials = " << trials << "  seed = " << seed << "\n";
  std::cout << "max |Ha|_2 / |a|_2 = " << fmt(worst) << "  (bound 2*pi = "
            << fmt(2.0 * kPi) << ")\n";
  return worst <= 2.0 * kPi ? 0 : 2;
}

// f_n at the lattice point for a unit one-coefficient perturbation of the
// lattice; the limit value alternates between +1/2 and -1/2.
int run_corollary24(Range win, const std::string& out) {
  const int len = win.hi;
  IsolatingFamily fam;
  fam.n0 = 1;
  fam.r = 0.25;
  fam.rho = 1.0;
  std::vector<cplx> base(len);
  for (int m = 1; m <= len; ++m) {
    base[m - 1] = double(m) * m * kPi * kPi;
    fam.centers.push_back(base[m - 1]);
  }
  fam.validate();
  std::vector<cplx> pert = base;
  if (len >= 5) pert[4] += 1.0;

  std::string csv = "n,f_re,f_im,residual\n";
  for (int n = win.lo; n <= win.hi; ++n) {
    cplx lam = double(n) * n * kPi * kPi;
    cplx f = ratio_product(pert, base, lam, n, fam) * sine_ratio_product(n, lam);
    double limit = (n % 2 == 0) ? -0.5 : 0.5;
    csv += std::to_string(n) + "," + fmt(f.real()) + "," + fmt(f.imag()) + "," +
           fmt(double(n) * std::abs(f - limit)) + "\n";
  }
  write_output(out, csv);
  return 0;
}

int run_wkb(const Potential& q, int N, Range win, double tol, const std::string& out) {
  if (!q.is_real()) {
    std::cerr << "hillspec: the remainder check needs real mu_n > 0, so a real potential\n";
    return 1;
  }
  auto mu_all = dirichlet_eigs(q, win.hi, tol);
  std::map<int, double> mu;
  for (int n = win.lo; n <= win.hi; ++n) mu[n] = mu_all[n - 1].real();

  std::string csv = "n,sign,r_re,r_im,pred_re,pred_im,r_dev,dr_dev\n";
  for (int sign : {+1, -1}) {
    RemainderCheck rc = remainder_asymptotics_check(q, N, sign, mu, tol);
    for (const auto& [n, dev] : rc.r_dev) {
      csv += std::to_string(n) + "," + std::to_string(sign) + "," + fmt(rc.r[n].real()) +
             "," + fmt(rc.r[n].imag()) + "," + fmt(rc.r_pred[n].real()) + "," +
             fmt(rc.r_pred[n].imag()) + "," + fmt(dev) + "," + fmt(rc.dr_dev[n]) + "\n";
    }
  }
  write_output(out, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral quantities of -y'' + q y on [0,1] for trigonometric potentials"};
  app.require_subcommand(1);

  std::string qspec, qjson, out, format = "csv", theorem, window = "6:32", nrange = "8:64";
  int n_max = 16, N = 0, k = 0, trials = 1000;
  double tol = 1e-12;
  std::uint64_t seed = 7;
  bool hilbert_norm = false, corollary24 = false;

  auto add_potential = [&](CLI::App* cmd) {
    cmd->add_option("-q,--potential", qspec,
                    "inline spec: terms a*cos(2*pi*k*x), a*sin(2*pi*k*x), "
                    "(re,im)*exp(2*pi*i*k*x) joined by +/-; \"0\" for the free operator");
    cmd->add_option("--q-json", qjson, "path to a JSON potential descriptor");
  };
  auto add_tol = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol, "solver tolerance")->check(CLI::Range(1e-14, 1e-6));
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalue table: mu, eta, periodic "
                                                      "pairs, Floquet exponents, gaps");
  add_potential(spectrum);
  add_tol(spectrum);
  spectrum->add_option("--n-max", n_max, "rows 1..n_max")->check(CLI::Range(1, 256));
  spectrum->add_option("-o,--output", out, "output path ('-' = stdout)");
  spectrum->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* verify = app.add_subcommand("verify", "scaled-residual decay checks against the "
                                                  "truncated eigenvalue expansions");
  add_potential(verify);
  add_tol(verify);
  verify->add_option("--theorem", theorem,
                     "1 = exponent stream, 2 = pair stream, 3 = midpoint stream, "
                     "4 = mu and eta streams, B = gap versus coefficient, "
                     "cor32 = midpoint minus Dirichlet")
      ->required();
  verify->add_option("--N", N, "decay order of the truncated expansion")
      ->check(CLI::Range(0, 8));
  verify->add_option("--window", window, "index window lo:hi");
  verify->add_option("-o,--output", out, "residual CSV path (multi-report runs insert the "
                                         "check name before the extension)");

  CLI::App* skcmd = app.add_subcommand("sk", "print the canonical differential polynomial "
                                             "s_k, optionally with its integral a_k at q");
  skcmd->add_option("--k", k, "index, 1..12")->required();
  add_potential(skcmd);

  CLI::App* products = app.add_subcommand("products", "diagnostics for the transform bound "
                                                      "and the certified ratio products");
  products->add_flag("--hilbert-norm-check", hilbert_norm,
                     "worst l2 amplification over random unit vectors");
  products->add_option("--trials", trials, "random trials")->check(CLI::Range(1, 1000000));
  products->add_option("--seed", seed, "RNG seed");
  products->add_flag("--corollary24", corollary24,
                     "f_n at lattice points for a unit lattice perturbation");
  products->add_option("-n,--n", nrange, "index window lo:hi");
  products->add_option("-o,--output", out, "output path ('-' = stdout)");

  CLI::App* wkbcmd = app.add_subcommand("wkb", "comparison-solution remainder at nu_n = "
                                               "sqrt(mu_n) against its large-n prediction");
  add_potential(wkbcmd);
  add_tol(wkbcmd);
  wkbcmd->add_option("--N", N, "phase truncation order")->check(CLI::Range(0, 4));
  wkbcmd->add_option("-n,--n", nrange, "index window lo:hi");
  wkbcmd->add_option("-o,--output", out, "output path ('-' = stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (spectrum->parsed())
      return run_spectrum(load_potential(qspec, qjson), n_max, tol, out, format);
    if (verify->parsed())
      return run_verify(load_potential(qspec, qjson), theorem, N, parse_range(window), tol,
                        out);
    if (skcmd->parsed()) return run_sk(k, qspec, qjson);
    if (products->parsed()) {
      if (hilbert_norm == corollary24) {
        std::cerr << "hillspec: give exactly one of --hilbert-norm-check, --corollary24\n";
        return 1;
      }
      return hilbert_norm ? run_hilbert_norm(trials, seed)
                          : run_corollary24(parse_range(nrange), out);
    }
    if (wkbcmd->parsed())
      return run_wkb(load_potential(qspec, qjson), N, parse_range(nrange), tol, out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "hillspec: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "hillspec: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
