#ifndef LCTCONV_SOLVER_HPP
#define LCTCONV_SOLVER_HPP

// Solves lambda phi + g (x)_A phi = f by division in the LCT domain:
//   L_A phi = L_A f / Lambda,  Lambda(u) = lambda + L_A g(u) Phi(u).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <sstream>

#include "lctconv/convolution.hpp"
#include "lctconv/errors.hpp"
#include "lctconv/grid.hpp"
#include "lctconv/lct.hpp"
#include "lctconv/params.hpp"
#include "lctconv/theorems.hpp"

namespace lctconv {

inline constexpr double kSymbolFloor = 1e-8;
inline constexpr double kDefaultSolveTolerance = 1e-6;

struct EquationProblem {
  cplx lambda;
  SampledSignal f;
  SampledSignal g;
  LctParams params;

  EquationProblem(cplx lam, SampledSignal rhs, SampledSignal kernel,
                  LctParams m)
      : lambda(lam), f(std::move(rhs)), g(std::move(kernel)), params(m) {
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
      throw InvalidSignal("lambda must be finite");
    }
    require_same_step(f.grid(), g.grid());
  }
};

struct SolverDiagnostics {
  double min_abs_symbol = 0.0;
  double sup_inverse_symbol = 0.0;
  // Scale-aware floor below which the symbol counts as vanishing.
  double threshold = 0.0;
  bool invertible = true;
  // Reserved: near-singular symbols are rejected, never regularized.
  bool regularized = false;
  std::optional<double> residual_rel_l2;
  // residual_rel_l2 <= the tolerance passed to solve.
  bool converged = false;
};

struct Solution {
  SampledSignal phi;
  SolverDiagnostics diagnostics;
};

namespace detail {

// L_A x on an arbitrary grid: the fast path when the grid is compatible with
// x's spacing, otherwise the quadrature.
inline Spectrum transform_on(const SampledSignal &x, const LctParams &m,
                             const SampleGrid &ug) {
  const double want = induced_step(x.grid().step(), ug.count(), m);
  if (ug.count() >= x.size() && std::abs(ug.step() - want) <= 1e-10 * want) {
    return lct_forward(x, m, ug);
  }
  return lct_oracle(x, m, ug);
}

inline SolverDiagnostics summarize_symbol(const Spectrum &symbol, cplx lambda,
                                          const Spectrum &lg) {
  SolverDiagnostics d;
  double peak = 0.0;
  d.min_abs_symbol = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < symbol.size(); ++k) {
    d.min_abs_symbol = std::min(d.min_abs_symbol, std::abs(symbol[k]));
    peak = std::max(peak, std::abs(lg[k]));
  }
  d.threshold = kSymbolFloor * (std::abs(lambda) + peak);
  d.invertible = d.min_abs_symbol >= d.threshold && d.min_abs_symbol > 0.0;
  d.sup_inverse_symbol = d.min_abs_symbol > 0.0
                             ? 1.0 / d.min_abs_symbol
                             : std::numeric_limits<double>::infinity();
  return d;
}

inline Spectrum symbol_from(const Spectrum &lg, cplx lambda) {
  const auto &m = lg.params();
  CVector v(lg.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = lambda + lg[k] * phi_factor(lg.grid().point(k), m);
  }
  return {lg.grid(), std::move(v), m};
}

} // namespace detail

/// Lambda(u_k) = lambda + L_A g(u_k) Phi(u_k) on `u_grid`.
inline Spectrum lambda_symbol(const SampleGrid &u_grid,
                              const EquationProblem &prob) {
  return detail::symbol_from(detail::transform_on(prob.g, prob.params, u_grid),
                             prob.lambda);
}

/// min |Lambda| and sup |1/Lambda| on `u_grid`, without solving.
inline SolverDiagnostics check_solvability(const EquationProblem &prob,
                                           const SampleGrid &u_grid) {
  const Spectrum lg = detail::transform_on(prob.g, prob.params, u_grid);
  return detail::summarize_symbol(detail::symbol_from(lg, prob.lambda),
                                  prob.lambda, lg);
}

/// Working grid for phi: f's grid, lengthened if g has more samples.
inline SampleGrid solution_grid(const EquationProblem &prob) {
  return prob.f.grid().with_count(std::max(prob.f.size(), prob.g.size()));
}

/// ||lambda phi + g (x)_A phi - f||_2 / ||f||_2 on phi's grid, evaluated with
/// convolve_new rather than through the transform.
inline double equation_residual(const EquationProblem &prob,
                                const SampledSignal &phi) {
  const SampledSignal conv = convolve_new(
      phi, prob.g, prob.params, Realization::ChirpPathOne, OutputWindow::Input);
  const SampledSignal rhs = embed(prob.f, phi.grid());
  CVector lhs(phi.size());
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    lhs[k] = prob.lambda * phi[k] + conv[k];
  }
  return rel_l2_error(lhs, rhs.values());
}

/// phi = L_{A^-1}(L_A f / Lambda) on f's grid. Throws NonInvertibleSymbol
/// (DegenerateCase when lambda == 0) if min |Lambda| falls below
/// 1e-8 (|lambda| + max |L_A g Phi|) on the induced u-grid.
inline Solution solve(const EquationProblem &prob,
                      double tol = kDefaultSolveTolerance) {
  const auto &m = prob.params;
  const SampleGrid w = solution_grid(prob);
  const SampleGrid ug = induced_grid(w, m);
  const Spectrum lf = lct_forward(prob.f, m, ug);
  const Spectrum lg = lct_forward(prob.g, m, ug);
  const Spectrum symbol = detail::symbol_from(lg, prob.lambda);
  SolverDiagnostics diag =
      detail::summarize_symbol(symbol, prob.lambda, lg);
  if (!diag.invertible) {
    std::ostringstream os;
    os << "non-invertible symbol: min |Lambda| = " << diag.min_abs_symbol
       << " below " << diag.threshold;
    if (prob.lambda == cplx{}) {
      throw DegenerateCase(os.str() + " (lambda = 0 and L_A g vanishes)");
    }
    throw NonInvertibleSymbol(os.str());
  }
  CVector q(ug.count());
  for (std::size_t k = 0; k < q.size(); ++k) q[k] = lf[k] / symbol[k];
  SampledSignal phi = lct_inverse(Spectrum(ug, std::move(q), m), w);
  diag.residual_rel_l2 = equation_residual(prob, phi);
  diag.converged = *diag.residual_rel_l2 <= tol;
  return {std::move(phi), diag};
}

} // namespace lctconv

#endif // LCTCONV_SOLVER_HPP
