// lctconv: command-line front end for the transform, convolution, solver and
// verification routines.
//
// Exit codes: 0 success, 1 domain error or failed verification, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lctconv/lctconv.hpp"

namespace {

using namespace lctconv;
using nlohmann::json;

// Bad flag values that CLI11 cannot catch on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_number(const std::string &s, const std::string &flag) {
  if (s == "inf" || s == "infinity") return kInfinity;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception &) {
    throw UsageError(flag + ": '" + s + "' is not a number");
  }
}

std::vector<double> numbers(const std::string &s, std::size_t n,
                            const std::string &flag) {
  const auto parts = split(s, ',');
  if (parts.size() != n) {
    throw UsageError(flag + " expects " + std::to_string(n) +
                     " comma-separated numbers, got '" + s + "'");
  }
  std::vector<double> v;
  for (const auto &p : parts) v.push_back(to_number(p, flag));
  return v;
}

struct Options {
  std::string matrix;
  std::string op = "new";
  std::string realization = "chirp1";
  std::string window = "full";
  std::string lambda = "1,0";
  std::vector<std::string> in;
  std::string out;
  std::string report;
  std::string plot;
  std::string format;
  std::optional<double> tol;
  std::string identity = "all";
  std::string signals = "gaussian,gaussian";
  std::string grid = "-8,8,512";
  std::string exponents = "1.3333333333333333,1.3333333333333333,2";
  bool inverse = false;
  bool oracle = false;
  std::size_t count = 0;
};

LctParams matrix_of(const Options &o) {
  if (o.matrix.empty()) throw UsageError("--matrix is required");
  const auto v = numbers(o.matrix, 4, "--matrix");
  return make_params(v[0], v[1], v[2], v[3]);
}

SignalFormat output_format(const Options &o) {
  if (o.format == "csv") return SignalFormat::Csv;
  if (o.format == "json") return SignalFormat::Json;
  return o.out.empty() ? SignalFormat::Json : format_for(o.out);
}

void emit_signal(const SampledSignal &s, const Options &o) {
  const auto fmt = output_format(o);
  if (o.out.empty()) {
    std::cout << (fmt == SignalFormat::Csv ? signal_to_csv(s) : signal_to_json(s) + "\n");
  } else {
    write_signal(s, o.out, fmt);
  }
  if (!o.plot.empty()) write_text(o.plot, plot_csv(s.grid(), s.values()));
}

void emit_json(const json &j, const std::string &path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_text(path, j.dump(2) + "\n");
  }
}

std::vector<SampledSignal> inputs(const Options &o, std::size_t n) {
  if (o.in.size() != n) {
    throw UsageError("expected " + std::to_string(n) + " --in path(s), got " +
                     std::to_string(o.in.size()));
  }
  std::vector<SampledSignal> s;
  for (const auto &p : o.in) s.push_back(read_signal(p));
  return s;
}

SampleGrid grid_of(const Options &o) {
  const auto v = numbers(o.grid, 3, "--grid");
  if (v[2] < 2 || v[2] != std::floor(v[2])) {
    throw UsageError("--grid count must be an integer >= 2");
  }
  return SampleGrid::spanning(v[0], v[1], static_cast<std::size_t>(v[2]));
}

Realization realization_of(const std::string &s) {
  if (s == "direct") return Realization::DirectQuadrature;
  if (s == "chirp2") return Realization::ChirpPathTwo;
  return Realization::ChirpPathOne;
}

int run_transform(const Options &o) {
  const auto m = matrix_of(o);
  const auto f = inputs(o, 1).front();
  const auto applied = o.inverse ? invert_params(m) : m;
  const std::size_t count = o.count ? o.count : f.size();
  if (count < f.size()) throw UsageError("--count must be at least the input length");
  const auto ug = induced_grid(f.grid(), applied, count);
  const auto spec = o.oracle ? lct_oracle(f, applied, ug) : lct_forward(f, applied, ug);
  emit_signal(SampledSignal(spec.grid(), spec.data()), o);
  return 0;
}

int run_convolve(const Options &o) {
  const auto m = matrix_of(o);
  const auto s = inputs(o, 2);
  const auto how = realization_of(o.realization);
  const auto window = o.window == "input" ? OutputWindow::Input : OutputWindow::Full;
  if (o.op != "new" && o.op != "dual" &&
      (o.window == "input" || o.realization != "chirp1")) {
    throw UsageError("--realization and --window apply to --op new|dual only");
  }
  std::optional<SampledSignal> h;
  if (o.op == "new") {
    h = convolve_new(s[0], s[1], m, how, window);
  } else if (o.op == "dual") {
    h = convolve_new_dual(s[0], s[1], m, how, window);
  } else if (o.op == "deng") {
    h = convolve_deng(s[0], s[1], m);
  } else if (o.op == "shi") {
    h = convolve_shi(s[0], s[1], m);
  } else {
    h = convolve_spectral(s[0], s[1], m);
  }
  emit_signal(*h, o);
  return 0;
}

int run_solve(const Options &o) {
  const auto m = matrix_of(o);
  const auto s = inputs(o, 2);
  const auto lam = numbers(o.lambda, 2, "--lambda");
  const EquationProblem prob(cplx(lam[0], lam[1]), s[0], s[1], m);
  const auto sol = o.tol ? solve(prob, *o.tol) : solve(prob);
  if (!o.out.empty() || o.report.empty()) emit_signal(sol.phi, o);
  if (!o.report.empty()) emit_json(to_json(sol.diagnostics), o.report);
  if (!sol.diagnostics.converged) {
    std::cerr << "error: residual " << sol.diagnostics.residual_rel_l2.value_or(-1.0)
              << " exceeds tolerance\n";
    return 1;
  }
  return 0;
}

int run_generate(const Options &o) {
  const auto kind = parse_generator(o.signals);
  emit_signal(generate({kind, grid_of(o)}), o);
  return 0;
}

const std::vector<std::string> kIdentities = {
    "conv-theorem",     "dual-conv-theorem", "realizations",
    "deng",             "shi",               "pei",
    "commutativity",    "associativity",     "distributivity",
    "young",            "l1-bound"};

int run_verify(const Options &o) {
  const auto m = matrix_of(o);
  std::vector<SampledSignal> s;
  if (!o.in.empty()) {
    if (o.in.size() < 2 || o.in.size() > 3) throw UsageError("verify takes 2 or 3 --in paths");
    for (const auto &p : o.in) s.push_back(read_signal(p));
  } else {
    const auto grid = grid_of(o);
    const auto specs = split(o.signals, ',');
    if (specs.size() < 2 || specs.size() > 3) {
      throw UsageError("--signals takes 2 or 3 generator specs");
    }
    for (const auto &spec : specs) s.push_back(generate({parse_generator(spec), grid}));
  }
  const auto &f = s[0];
  const auto &g = s[1];
  const auto &h = s.size() > 2 ? s[2] : s[0];
  const auto ops = o.op == "dual" ? std::vector{Operator::Dual}
                   : o.op == "new" && o.identity != "all"
                       ? std::vector{Operator::New}
                       : std::vector{Operator::New, Operator::Dual};
  const auto e = numbers(o.exponents, 3, "--exponents");

  auto run_one = [&](const std::string &id) {
    std::vector<VerifierReport> r;
    auto t = [&](double def) { return o.tol.value_or(def); };
    if (id == "conv-theorem") {
      r.push_back(verify_convolution_theorem(f, g, m, t(kTransformTolerance), phi_factor,
                                             realization_of(o.realization)));
    } else if (id == "dual-conv-theorem") {
      r.push_back(verify_dual_convolution_theorem(f, g, m, t(kTransformTolerance)));
    } else if (id == "realizations") {
      r.push_back(verify_realizations(f, g, m, t(kTransformTolerance)));
    } else if (id == "deng") {
      r.push_back(verify_deng_identity(f, g, m, t(kTransformTolerance)));
    } else if (id == "shi") {
      r.push_back(verify_shi_ratio(f, g, m, t(kTransformTolerance)));
    } else if (id == "pei") {
      r.push_back(verify_pei_identity(f, g, m, t(kTransformTolerance)));
    } else if (id == "commutativity") {
      for (auto op : ops) r.push_back(verify_commutativity(f, g, m, op, t(kSymmetryTolerance)));
    } else if (id == "associativity") {
      for (auto op : ops) r.push_back(verify_associativity(f, g, h, m, op, t(kTransformTolerance)));
    } else if (id == "distributivity") {
      for (auto op : ops) r.push_back(verify_distributivity(f, g, h, m, op, t(kLinearTolerance)));
    } else if (id == "young") {
      const auto x = YoungExponents::make(e[0], e[1], e[2]);
      for (auto op : ops) r.push_back(verify_young(f, g, x, m, op, t(kInequalitySlack)));
    } else {
      r.push_back(verify_l1_bound(f, g, m, t(kInequalitySlack)));
    }
    return r;
  };

  std::vector<std::string> ids;
  if (o.identity == "all") {
    ids = kIdentities;
  } else {
    ids = {o.identity};
  }
  json reports = json::array();
  bool passed = true;
  for (const auto &id : ids) {
    try {
      for (const auto &r : run_one(id)) {
        reports.push_back(to_json(r));
        passed = passed && r.passed;
        std::cerr << (r.passed ? "PASS " : "FAIL ") << r.identity
                  << " max_rel_error=" << r.max_rel_error << "\n";
      }
    } catch (const DomainError &err) {
      // With a single identity the error is the outcome; with several it is
      // one failed entry among the others.
      if (ids.size() == 1) throw;
      reports.push_back({{"identity", id}, {"passed", false}, {"error", err.what()}});
      passed = false;
      std::cerr << "FAIL " << id << " error: " << err.what() << "\n";
    }
  }
  if (reports.size() == 1) {
    emit_json(reports.front(), o.report);
  } else {
    emit_json({{"identity", o.identity}, {"passed", passed}, {"reports", reports}},
              o.report);
  }
  return passed ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Linear canonical transforms and canonical convolutions"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App *c, bool signal_out) {
    c->add_option("--matrix", o.matrix, "Parameters a,b,c,d with ad - bc = 1");
    c->add_option("--in", o.in, "Input signal files (.json or .csv)");
    c->add_option("--out", o.out, "Output signal file (stdout if omitted)");
    c->add_option("--tol", o.tol, "Tolerance");
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    if (signal_out) c->add_option("--plot", o.plot, "Write x,abs,arg CSV for plotting");
  };

  auto *transform = app.add_subcommand("transform", "Discrete LCT of one signal");
  common(transform, true);
  transform->add_flag("--inverse", o.inverse, "Apply the inverse transform");
  transform->add_flag("--oracle", o.oracle, "Use direct quadrature instead of the FFT path");
  transform->add_option("--count", o.count, "Output length (zero padding)");

  auto *convolve = app.add_subcommand("convolve", "Convolve two signals");
  common(convolve, true);
  convolve->add_option("--op", o.op, "Operator")
      ->check(CLI::IsMember({"new", "dual", "deng", "shi", "spectral"}));
  convolve->add_option("--realization", o.realization, "Evaluation path")
      ->check(CLI::IsMember({"direct", "chirp1", "chirp2"}));
  convolve->add_option("--window", o.window, "Output window")
      ->check(CLI::IsMember({"full", "input"}));

  auto *solve_cmd = app.add_subcommand("solve", "Solve lambda phi + g (x) phi = f; --in f g");
  common(solve_cmd, true);
  solve_cmd->add_option("--lambda", o.lambda, "Complex lambda as re,im");
  solve_cmd->add_option("--report", o.report, "Diagnostics JSON file");

  auto *verify = app.add_subcommand("verify", "Check identities numerically");
  common(verify, false);
  std::vector<std::string> names = kIdentities;
  names.emplace_back("all");
  verify->add_option("--identity", o.identity, "Identity to check")->check(CLI::IsMember(names));
  verify->add_option("--op", o.op, "Operator for the algebraic checks")
      ->check(CLI::IsMember({"new", "dual"}));
  verify->add_option("--realization", o.realization, "Path for conv-theorem")
      ->check(CLI::IsMember({"direct", "chirp1", "chirp2"}));
  verify->add_option("--signals", o.signals, "Two or three generator specs, comma separated");
  verify->add_option("--grid", o.grid, "start,stop,count for generated signals");
  verify->add_option("--exponents", o.exponents, "Young exponents p,q,r");
  verify->add_option("--report", o.report, "Report JSON file (stdout if omitted)");

  auto *gen = app.add_subcommand("generate", "Write a test signal");
  gen->add_option("--signals", o.signals, "Generator spec, e.g. gaussian:center=0;width=1")
      ->required();
  gen->add_option("--grid", o.grid, "start,stop,count");
  gen->add_option("--out", o.out, "Output signal file (stdout if omitted)");
  gen->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  gen->add_option("--plot", o.plot, "Write x,abs,arg CSV for plotting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*transform) return run_transform(o);
    if (*convolve) return run_convolve(o);
    if (*solve_cmd) return run_solve(o);
    if (*verify) return run_verify(o);
    return run_generate(o);
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
