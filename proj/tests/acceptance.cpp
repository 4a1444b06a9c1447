// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "lctconv/lctconv.hpp"
#include "test_support.hpp"

namespace {

using namespace lctconv;
using namespace lctconv::testing;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string &what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

double worst(double acc, double x) { return std::max(acc, x); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

cplx phi_without_constant(double u, const LctParams &m) {
  return std::polar(1.0, u - m.d() / (2.0 * m.b()) * u * u);
}

// 1. L_A(f (x)_A g) = Phi L_A f L_A g on 8 matrices x 5 pairs.
void convolution_theorem(Outcome &o) {
  double err = 0.0;
  int n = 0;
  for (const auto &[name, m] : test_matrices()) {
    for (const auto &p : signal_pairs(standard_grid())) {
      const auto r = verify_convolution_theorem(p.f, p.g, m, 1e-6);
      o.require(r.passed, name + "/" + p.name + " err " + fmt(r.max_rel_error));
      err = worst(err, r.max_rel_error);
      ++n;
    }
  }
  o.detail << n << " cases, max rel sup error " << fmt(err) << " (tol 1e-6)";
}

// 2. Direct quadrature, chirp path one and chirp path two agree.
void realizations(Outcome &o) {
  double err = 0.0;
  int n = 0;
  for (const auto &[name, m] : test_matrices()) {
    for (const auto &p : signal_pairs(standard_grid())) {
      const auto r = verify_realizations(p.f, p.g, m, 1e-6);
      o.require(r.passed, name + "/" + p.name + " err " + fmt(r.max_rel_error));
      err = worst(err, r.max_rel_error);
      ++n;
    }
  }
  o.detail << n << " cases, max pairwise rel sup error " << fmt(err) << " (tol 1e-6)";
}

// 3. ||f (x)_A g||_1 <= sqrt(1/(2 pi |b|)) ||f||_1 ||g||_1 (1 + 1e-6).
void l1_bound(Outcome &o) {
  std::mt19937_64 rng(2024);
  const auto ms = test_matrices();
  const auto g = standard_grid();
  double ratio = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto &[name, m] = ms[i % ms.size()];
    const auto r = verify_l1_bound(random_smooth(rng, g), random_smooth(rng, g), m);
    o.require(r.passed, name + " pair " + std::to_string(i));
    ratio = worst(ratio, r.notes[2].second);
  }
  o.detail << "100 random pairs, max lhs/rhs " << fmt(ratio);
}

// 4. Commutativity, associativity and distributivity for both operators.
void algebra(Outcome &o) {
  std::mt19937_64 rng(77);
  const auto g = SampleGrid::spanning(-12, 12, 768);
  double ec = 0.0, ea = 0.0, ed = 0.0;
  for (const auto &[name, m] : test_matrices()) {
    for (auto op : {Operator::New, Operator::Dual}) {
      const auto f = random_smooth(rng, g), k = random_smooth(rng, g),
                 h = random_smooth(rng, g);
      const auto c = verify_commutativity(f, k, m, op, 1e-8);
      const auto a = verify_associativity(f, k, h, m, op, 1e-6);
      const auto d = verify_distributivity(f, k, h, m, op, 1e-10);
      for (const auto *r : {&c, &a, &d}) {
        o.require(r->passed, name + " " + r->identity + " err " + fmt(r->max_rel_error));
      }
      ec = worst(ec, c.max_rel_error);
      ea = worst(ea, a.max_rel_error);
      ed = worst(ed, d.max_rel_error);
    }
  }
  o.detail << "8 matrices x {new, dual}, max errors: commutativity " << fmt(ec)
           << ", associativity " << fmt(ea) << ", distributivity " << fmt(ed);
}

// 5. Young's inequality for five exponent triples, 50 pairs each.
void young(Outcome &o) {
  std::mt19937_64 rng(5);
  const auto ms = test_matrices();
  const auto g = standard_grid();
  const auto triples = {YoungExponents::make(1, 1, 1), YoungExponents::make(1, 2, 2),
                        YoungExponents::make(2, 1, 2),
                        YoungExponents::make(2, 2, kInfinity),
                        YoungExponents::make(4.0 / 3.0, 4.0 / 3.0, 2)};
  double ratio = 0.0;
  for (const auto &x : triples) {
    for (int i = 0; i < 50; ++i) {
      const auto &[name, m] = ms[i % ms.size()];
      const auto f = random_smooth(rng, g), k = random_smooth(rng, g);
      const auto r = verify_young(f, k, x, m);
      o.require(r.passed, r.identity + " " + name + " pair " + std::to_string(i));
      ratio = worst(ratio, r.notes[2].second);
      if (x.p() == 1 && x.q() == 1 && x.r() == 1) {
        const auto l1 = verify_l1_bound(f, k, m);
        o.require(l1.max_rel_error == r.max_rel_error, "(1,1,1) differs from the L1 check");
      }
    }
  }
  for (const auto &[name, m] : ms) {
    const double c = young_bound(YoungExponents::make(1, 1, 1), m);
    const double l1 = std::sqrt(1.0 / (2.0 * pi * std::abs(m.b())));
    o.require(std::abs(c - l1) <= 1e-15 * l1, name + " (1,1,1) constant");
  }
  o.detail << "5 triples x 50 pairs, max lhs/rhs " << fmt(ratio)
           << "; (1,1,1) constant equals sqrt(1/(2 pi |b|)) on all 8 matrices";
}

// 6. Manufactured convolution equations, an independent residual, and
// singular symbols.
void solver(Outcome &o) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> unit(-1.0, 1.0), mag(0.6, 2.0), ctr(-1.5, 1.5),
      wid(0.6, 1.1);
  const auto ms = test_matrices();
  double err = 0.0, res = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto &[name, m] = ms[i % ms.size()];
    const auto pg = round_trip_grid(m, 7.0, 12.0);
    const double dt = pg.step();
    const auto phi = random_smooth(rng, pg);
    // g0 - b on phi's lattice keeps phi0 and g (x) phi0 on one grid.
    const SampleGrid gg(m.b() + std::round((pg.start() - m.b()) / dt) * dt, dt, pg.count());
    const auto g = gaussian(gg, ctr(rng), wid(rng), 0.3 * unit(rng), {unit(rng), unit(rng)});
    const double peak = max_abs(lct_forward(g, m).values());
    const cplx lam = std::polar(mag(rng) * std::max(peak, 0.5), pi * unit(rng));
    const auto conv = convolve_new(g, phi, m);
    const auto phi0 = embed(phi, conv.grid());
    CVector fv(conv.size());
    for (std::size_t k = 0; k < fv.size(); ++k) fv[k] = lam * phi0[k] + conv[k];
    const EquationProblem prob(lam, SampledSignal(conv.grid(), fv), g, m);

    const auto sol = solve(prob);
    const double e = rel_l2(sol.phi.values(), phi0.values());
    o.require(e <= 1e-6, name + " problem " + std::to_string(i) + " err " + fmt(e));
    err = worst(err, e);

    // Residual through the direct quadrature, not the solver's chirp path.
    const auto gphi = embed(convolve_new(g, sol.phi, m, Realization::DirectQuadrature),
                            prob.f.grid());
    CVector lhs(fv.size());
    for (std::size_t k = 0; k < lhs.size(); ++k) lhs[k] = lam * sol.phi[k] + gphi[k];
    const double r = rel_l2(lhs, prob.f.values());
    o.require(r <= 1e-6, name + " residual " + fmt(r));
    res = worst(res, r);
  }

  int singular = 0;
  for (const auto &[name, m] : ms) {
    const auto pg = round_trip_grid(m, 7.0, 12.0);
    const auto g = gaussian(pg, 0.3, 0.8);
    const auto f = gaussian(pg, -0.2, 1.0);
    // lambda = -L_A g(u*) Phi(u*) zeroes the symbol at a solver grid point.
    const EquationProblem probe(0.0, f, g, m);
    const auto sym = lambda_symbol(induced_grid(solution_grid(probe), m), probe);
    std::size_t at = 0;
    for (std::size_t k = 0; k < sym.size(); ++k) {
      if (std::abs(sym[k]) > std::abs(sym[at])) at = k;
    }
    for (const cplx lam : {-sym[at], cplx{}}) {
      bool thrown = false;
      try {
        solve(EquationProblem(lam, f, g, m));
      } catch (const NonInvertibleSymbol &) {
        thrown = true;
      }
      o.require(thrown, name + " singular lambda " + fmt(std::abs(lam)) + " not rejected");
      singular += thrown;
    }
  }
  o.detail << "20 problems, max rel L2 error " << fmt(err) << ", max independent residual "
           << fmt(res) << "; " << singular << "/16 singular problems rejected";
}

// 7. Chirp-sandwich, half-chirp and product-domain comparison identities.
void comparisons(Outcome &o) {
  double ed = 0.0, es = 0.0, ep = 0.0;
  for (const auto &[name, m] : test_matrices()) {
    for (const auto &p : signal_pairs(standard_grid())) {
      const auto d = verify_deng_identity(p.f, p.g, m, 1e-6);
      const auto s = verify_shi_ratio(p.f, p.g, m, 1e-6);
      o.require(d.passed, name + "/" + p.name + " deng " + fmt(d.max_rel_error));
      o.require(s.passed, name + "/" + p.name + " shi " + fmt(s.max_rel_error));
      ed = worst(ed, d.max_rel_error);
      es = worst(es, s.max_rel_error);
    }
    for (const auto &p : signal_pairs(round_trip_grid(m, 8.0, 12.0))) {
      const auto r = verify_pei_identity(p.f, p.g, m, 1e-6);
      o.require(r.passed, name + "/" + p.name + " pei " + fmt(r.max_rel_error));
      ep = worst(ep, r.max_rel_error);
    }
  }
  o.detail << "40 cases each, max errors: deng " << fmt(ed) << ", shi ratio CV " << fmt(es)
           << ", pei " << fmt(ep) << " (tol 1e-6)";
}

// 8. Round trip, closed-form Fourier Gaussian, fast path against quadrature.
void fidelity(Outcome &o) {
  double rt = 0.0, fast = 0.0;
  for (const auto &[name, m] : test_matrices()) {
    const auto g = round_trip_grid(m);
    for (const auto &p : signal_pairs(g)) {
      const auto back = lct_inverse(lct_forward(p.f, m), g);
      const double e = rel_l2(back.values(), p.f.values());
      o.require(e <= 1e-6, name + "/" + p.name + " round trip " + fmt(e));
      rt = worst(rt, e);
    }
    const auto f = gaussian(standard_grid(), 0.4, 0.9, 0.3);
    const auto ug = induced_grid(f.grid(), m);
    const double e = rel_sup(lct_forward(f, m, ug).values(), lct_oracle(f, m, ug).values());
    o.require(e <= 1e-6, name + " fast vs oracle " + fmt(e));
    fast = worst(fast, e);
  }
  const auto m = fourier_params();
  const auto f = gaussian(standard_grid());
  const auto spec = lct_forward(f, m);
  CVector exact(spec.size());
  for (std::size_t k = 0; k < exact.size(); ++k) exact[k] = gaussian_lct(spec.grid().point(k), m);
  const double ef = rel_sup(spec.values(), exact);
  o.require(ef <= 1e-8, "fourier gaussian " + fmt(ef));
  o.detail << "round trip max rel L2 " << fmt(rt) << " (tol 1e-6), fourier gaussian "
           << fmt(ef) << " (tol 1e-8), fast vs oracle " << fmt(fast) << " (tol 1e-6)";
}

// 9. Dropping e^{-jab/2} from Phi breaks criterion 1 whenever a b != 0.
void mutation(Outcome &o) {
  double least = 1e300;
  int matrices = 0;
  for (const auto &[name, m] : test_matrices()) {
    if (m.a() * m.b() == 0.0) continue;
    ++matrices;
    for (const auto &p : signal_pairs(standard_grid())) {
      const auto r = verify_convolution_theorem(p.f, p.g, m, 1e-6, phi_without_constant);
      o.require(!r.passed, name + "/" + p.name + " mutant survived");
      least = std::min(least, r.max_rel_error);
    }
  }
  o.detail << "mutant rejected on all " << matrices
           << " matrices with a b != 0, smallest mutant error " << fmt(least);
}

} // namespace

int main() {
  const std::pair<const char *, std::function<void(Outcome &)>> criteria[] = {
      {"convolution theorem", convolution_theorem},
      {"realization equivalence", realizations},
      {"L1 bound", l1_bound},
      {"algebraic properties", algebra},
      {"Young inequality", young},
      {"equation solver", solver},
      {"comparison identities", comparisons},
      {"transform fidelity", fidelity},
      {"mutation sensitivity", mutation},
  };
  int failed = 0;
  int index = 0;
  for (const auto &[title, run] : criteria) {
    ++index;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception &e) {
      o.ok = false;
      o.detail << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.ok ? "PASS" : "FAIL", index, title,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
    failed += !o.ok;
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
