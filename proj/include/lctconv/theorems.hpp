#ifndef LCTCONV_THEOREMS_HPP
#define LCTCONV_THEOREMS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lctconv/convolution.hpp"
#include "lctconv/errors.hpp"
#include "lctconv/grid.hpp"
#include "lctconv/lct.hpp"
#include "lctconv/params.hpp"

namespace lctconv {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Default tolerances: transform-level identities, same-integral symmetries,
// exact linear identities.
inline constexpr double kTransformTolerance = 1e-6;
inline constexpr double kSymmetryTolerance = 1e-8;
inline constexpr double kLinearTolerance = 1e-10;
inline constexpr double kInequalitySlack = 1e-6;

// Points where |reference| falls below this fraction of its peak are left out
// of pointwise relative errors.
inline constexpr double kRelativeMask = 1e-3;

/// Phi(u) = exp(j(u - (d/2b)u^2 - ab/2)), the weight in
/// L_A(f (x)_A g) = Phi L_A f L_A g.
inline cplx phi_factor(double u, const LctParams &m) {
  return std::polar(1.0, u - m.d() / (2.0 * m.b()) * u * u -
                             m.a() * m.b() / 2.0);
}

/// Weight for the mirror operator: L_A(f (.)_A g) = Phi_dual L_A f L_A g with
/// Phi_dual(u) = exp(j(-u - (d/2b)u^2 - ab/2)).
inline cplx dual_phi_factor(double u, const LctParams &m) {
  return std::polar(1.0, -u - m.d() / (2.0 * m.b()) * u * u -
                             m.a() * m.b() / 2.0);
}

using PhaseFactor = cplx (*)(double, const LctParams &);

inline void require_exponent(double p) {
  if (std::isnan(p) || p < 1.0) {
    std::ostringstream os;
    os << "invalid exponent " << p << " (need p >= 1 or infinity)";
    throw InvalidExponent(os.str());
  }
}

/// Riemann-sum L^p norm (dt sum |f_k|^p)^(1/p); max |f_k| for p = infinity.
inline double norm_p(std::span<const cplx> v, double dt, double p) {
  require_exponent(p);
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto &z : v) m = std::max(m, std::abs(z));
    return m;
  }
  // Scale by the peak so large p does not overflow.
  double peak = 0.0;
  for (const auto &z : v) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return 0.0;
  double acc = 0.0;
  for (const auto &z : v) acc += std::pow(std::abs(z) / peak, p);
  return peak * std::pow(dt * acc, 1.0 / p);
}

inline double norm_p(const SampledSignal &f, double p) {
  return norm_p(f.values(), f.grid().step(), p);
}

inline double conjugate_exponent(double p) {
  require_exponent(p);
  if (p == 1.0) return kInfinity;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

/// Sharp Young constant A_p = (p^(1/p) / p'^(1/p'))^(1/2), with x^(1/x) -> 1
/// at x = infinity.
inline double young_constant(double p) {
  const double q = conjugate_exponent(p);
  auto root = [](double x) { return std::isinf(x) ? 1.0 : std::pow(x, 1.0 / x); };
  return std::sqrt(root(p) / root(q));
}

inline double reciprocal(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

/// (p, q, r, r') with 1/p + 1/q = 1 + 1/r and 1/r + 1/r' = 1.
class YoungExponents {
public:
  static YoungExponents make(double p, double q, double r) {
    require_exponent(p);
    require_exponent(q);
    require_exponent(r);
    if (std::abs(reciprocal(p) + reciprocal(q) - 1.0 - reciprocal(r)) > 1e-12) {
      std::ostringstream os;
      os << "exponents (" << p << ", " << q << ", " << r
         << ") violate 1/p + 1/q = 1 + 1/r";
      throw InvalidExponent(os.str());
    }
    return {p, q, r, conjugate_exponent(r)};
  }

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double r() const noexcept { return r_; }
  double r_prime() const noexcept { return r_prime_; }

private:
  YoungExponents(double p, double q, double r, double rp)
      : p_(p), q_(q), r_(r), r_prime_(rp) {}
  double p_, q_, r_, r_prime_;
};

/// sqrt(1/(2 pi |b|)) A_p A_q A_r'.
inline double young_bound(const YoungExponents &x, const LctParams &m) {
  return std::sqrt(1.0 / (2.0 * std::numbers::pi * std::abs(m.b()))) *
         young_constant(x.p()) * young_constant(x.q()) *
         young_constant(x.r_prime());
}

struct VerifierReport {
  std::string identity;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  SampleGrid grid;
  // Extra named quantities (ratios, constants) worth reporting.
  std::vector<std::pair<std::string, double>> notes;

  VerifierReport(std::string id, double err, double tol, SampleGrid g)
      : identity(std::move(id)), max_rel_error(err), tolerance(tol),
        passed(err <= tol), grid(g) {}
};

// ---------------------------------------------------------------------------
// Discrepancy metrics.

/// max |x - y| / max |y| (0 when both vanish).
inline double rel_sup_error(std::span<const cplx> x, std::span<const cplx> y) {
  if (x.size() != y.size()) {
    throw IncompatibleGrids("rel_sup_error: length mismatch");
  }
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    num = std::max(num, std::abs(x[k] - y[k]));
    den = std::max(den, std::abs(y[k]));
  }
  if (den == 0.0) return num;
  return num / den;
}

inline double rel_sup_error(const SampledSignal &x, const SampledSignal &y) {
  if (!(x.grid() == y.grid()) &&
      !(x.size() == y.size() && same_step(x.grid(), y.grid()) &&
        std::abs(x.grid().start() - y.grid().start()) <=
            1e-9 * x.grid().step())) {
    throw IncompatibleGrids("rel_sup_error: signals on different grids");
  }
  return rel_sup_error(x.values(), y.values());
}

inline double rel_l2_error(std::span<const cplx> x, std::span<const cplx> y) {
  if (x.size() != y.size()) {
    throw IncompatibleGrids("rel_l2_error: length mismatch");
  }
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    num += std::norm(x[k] - y[k]);
    den += std::norm(y[k]);
  }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

/// Pointwise max |x - y| / |y| over points with |y| > mask * max |y|.
inline double masked_rel_error(std::span<const cplx> x,
                               std::span<const cplx> y,
                               double mask = kRelativeMask) {
  if (x.size() != y.size()) {
    throw IncompatibleGrids("masked_rel_error: length mismatch");
  }
  double peak = 0.0;
  for (const auto &z : y) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) {
    double m = 0.0;
    for (const auto &z : x) m = std::max(m, std::abs(z));
    return m;
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double ref = std::abs(y[k]);
    if (ref > mask * peak) worst = std::max(worst, std::abs(x[k] - y[k]) / ref);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Identity verifiers.

namespace detail {

// L_A f, L_A g and L_A h on the grid induced by h's grid, plus the transforms.
struct SharedTransforms {
  SampleGrid u_grid;
  Spectrum fh, ff, gf;
};

inline SharedTransforms shared_transforms(const SampledSignal &h,
                                          const SampledSignal &f,
                                          const SampledSignal &g,
                                          const LctParams &m) {
  const SampleGrid ug = induced_grid(h.grid(), m);
  return {ug, lct_forward(h, m, ug), lct_forward(f, m, ug),
          lct_forward(g, m, ug)};
}

template <class Weight>
inline VerifierReport product_identity(std::string name,
                                       const SampledSignal &h,
                                       const SampledSignal &f,
                                       const SampledSignal &g,
                                       const LctParams &m, double tol,
                                       Weight &&weight) {
  const auto t = shared_transforms(h, f, g, m);
  CVector rhs(t.u_grid.count());
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    rhs[k] = weight(t.u_grid.point(k)) * t.ff[k] * t.gf[k];
  }
  return {std::move(name), masked_rel_error(t.fh.values(), rhs), tol,
          t.u_grid};
}

} // namespace detail

/// L_A(f (x)_A g)(u) against phi(u) L_A f(u) L_A g(u) on a shared u-grid.
/// `phi` is replaceable so that the suite can check the verifier rejects a
/// wrong weight.
inline VerifierReport
verify_convolution_theorem(const SampledSignal &f, const SampledSignal &g,
                           const LctParams &m,
                           double tol = kTransformTolerance,
                           PhaseFactor phi = phi_factor,
                           Realization how = Realization::ChirpPathOne) {
  const SampledSignal h = convolve_new(f, g, m, how);
  return detail::product_identity(
      "conv-theorem", h, f, g, m, tol,
      [&](double u) { return phi(u, m); });
}

inline VerifierReport
verify_dual_convolution_theorem(const SampledSignal &f, const SampledSignal &g,
                                const LctParams &m,
                                double tol = kTransformTolerance) {
  const SampledSignal h = convolve_new_dual(f, g, m);
  return detail::product_identity(
      "dual-conv-theorem", h, f, g, m, tol,
      [&](double u) { return dual_phi_factor(u, m); });
}

/// L_A(f Theta g) = L_A f L_A g e^{-j(d/2b)u^2}.
inline VerifierReport verify_deng_identity(const SampledSignal &f,
                                           const SampledSignal &g,
                                           const LctParams &m,
                                           double tol = kTransformTolerance) {
  const SampledSignal h = convolve_deng(f, g, m);
  return detail::product_identity(
      "deng-identity", h, f, g, m, tol, [&](double u) {
        return std::polar(1.0, -m.d() / (2.0 * m.b()) * u * u);
      });
}

/// Constancy of L_A(f Theta_M g)(u) / (L_A g(u) Fhat f(u/b)), Fhat the
/// unitary Fourier transform. The error is the coefficient of variation of
/// the ratio over the points where the denominator is significant; the mean
/// ratio is reported as a note.
inline VerifierReport verify_shi_ratio(const SampledSignal &f,
                                       const SampledSignal &g,
                                       const LctParams &m,
                                       double tol = kTransformTolerance) {
  const SampledSignal h = convolve_shi(f, g, m);
  const SampleGrid ug = induced_grid(h.grid(), m);
  const Spectrum lh = lct_forward(h, m, ug);
  const Spectrum lg = lct_forward(g, m, ug);
  // (0, b, -1/b, 0) has kernel K_b e^{-jut/b}, so Fhat f(u/b) = L f / (K_b sqrt(2 pi)).
  const LctParams scaled_fourier = make_params(0.0, m.b(), -1.0 / m.b(), 0.0);
  const Spectrum lf = lct_forward(f, scaled_fourier, ug);
  const cplx to_unitary =
      1.0 / (lct_prefactor(scaled_fourier) * std::sqrt(2.0 * std::numbers::pi));

  CVector den(ug.count());
  double peak = 0.0;
  for (std::size_t k = 0; k < den.size(); ++k) {
    den[k] = lg[k] * lf[k] * to_unitary;
    peak = std::max(peak, std::abs(den[k]));
  }
  std::vector<cplx> ratios;
  for (std::size_t k = 0; k < den.size(); ++k) {
    if (std::abs(den[k]) > std::max(kRelativeMask * peak, 1e-6)) {
      ratios.push_back(lh[k] / den[k]);
    }
  }
  if (ratios.empty()) {
    VerifierReport r("shi-ratio", kInfinity, tol, ug);
    r.notes.emplace_back("trusted_points", 0.0);
    return r;
  }
  cplx mean{};
  for (const auto &z : ratios) mean += z;
  mean /= static_cast<double>(ratios.size());
  double var = 0.0;
  for (const auto &z : ratios) var += std::norm(z - mean);
  var /= static_cast<double>(ratios.size());
  VerifierReport r("shi-ratio", std::sqrt(var) / std::abs(mean), tol, ug);
  r.notes.emplace_back("ratio_abs", std::abs(mean));
  r.notes.emplace_back("ratio_arg", std::arg(mean));
  r.notes.emplace_back("trusted_points", static_cast<double>(ratios.size()));
  return r;
}

/// convolve_spectral(f, g) against L_{A^-1}(L_A(f (x)_A g) / Phi), both on
/// the default spectral output grid.
inline VerifierReport verify_pei_identity(const SampledSignal &f,
                                          const SampledSignal &g,
                                          const LctParams &m,
                                          double tol = kTransformTolerance) {
  const SampleGrid out = spectral_output_grid(f, g);
  const SampledSignal lhs = convolve_spectral(f, g, m, out);
  const SampledSignal h =
      convolve_new(f, g, m, Realization::DirectQuadrature);
  const SampleGrid ug = induced_grid(out, m);
  const Spectrum lh = lct_forward(h, m, ug);
  CVector q(ug.count());
  for (std::size_t k = 0; k < q.size(); ++k) {
    q[k] = lh[k] / phi_factor(ug.point(k), m);
  }
  const SampledSignal rhs = lct_inverse(Spectrum(ug, std::move(q), m), out);
  return {"pei-identity", rel_sup_error(lhs, rhs), tol, out};
}

/// Pairwise agreement of the three realizations of (x)_A.
inline VerifierReport verify_realizations(const SampledSignal &f,
                                          const SampledSignal &g,
                                          const LctParams &m,
                                          double tol = kTransformTolerance) {
  const auto d = convolve_new(f, g, m, Realization::DirectQuadrature);
  const auto c1 = convolve_new(f, g, m, Realization::ChirpPathOne);
  const auto c2 = convolve_new(f, g, m, Realization::ChirpPathTwo);
  const double err = std::max({rel_sup_error(c1, d), rel_sup_error(c2, d),
                               rel_sup_error(c1, c2)});
  return {"realizations", err, tol, d.grid()};
}

enum class Operator { New, Dual };

inline SampledSignal apply(Operator op, const SampledSignal &f,
                           const SampledSignal &g, const LctParams &m) {
  return op == Operator::New ? convolve_new(f, g, m)
                             : convolve_new_dual(f, g, m);
}

inline std::string op_prefix(Operator op) {
  return op == Operator::New ? "new" : "dual";
}

inline VerifierReport verify_commutativity(const SampledSignal &f,
                                           const SampledSignal &g,
                                           const LctParams &m,
                                           Operator op = Operator::New,
                                           double tol = kSymmetryTolerance) {
  const auto fg = apply(op, f, g, m);
  const auto gf = apply(op, g, f, m);
  return {op_prefix(op) + "-commutativity", rel_sup_error(gf, fg), tol,
          fg.grid()};
}

inline VerifierReport verify_associativity(const SampledSignal &f,
                                           const SampledSignal &g,
                                           const SampledSignal &h,
                                           const LctParams &m,
                                           Operator op = Operator::New,
                                           double tol = kTransformTolerance) {
  const auto left = apply(op, apply(op, f, g, m), h, m);
  const auto right = apply(op, f, apply(op, g, h, m), m);
  return {op_prefix(op) + "-associativity", rel_sup_error(right, left), tol,
          left.grid()};
}

inline SampledSignal add(const SampledSignal &x, const SampledSignal &y) {
  if (!(x.grid() == y.grid())) {
    throw IncompatibleGrids("add: signals on different grids");
  }
  CVector v(x.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = x[k] + y[k];
  return {x.grid(), std::move(v)};
}

inline SampledSignal scale(const SampledSignal &x, cplx s) {
  CVector v(x.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = s * x[k];
  return {x.grid(), std::move(v)};
}

/// f (x) (g + h) against f (x) g + f (x) h; g and h share a grid.
inline VerifierReport verify_distributivity(const SampledSignal &f,
                                            const SampledSignal &g,
                                            const SampledSignal &h,
                                            const LctParams &m,
                                            Operator op = Operator::New,
                                            double tol = kLinearTolerance) {
  const auto left = apply(op, f, add(g, h), m);
  const auto right = add(apply(op, f, g, m), apply(op, f, h, m));
  return {op_prefix(op) + "-distributivity", rel_sup_error(left, right), tol,
          left.grid()};
}

/// norm_r(f (x)_A g) <= young_bound * norm_p(f) norm_q(g) * (1 + slack).
/// The reported error is the excess ratio - 1 (negative when the bound holds
/// with room); the ratio itself is a note.
inline VerifierReport verify_young(const SampledSignal &f,
                                   const SampledSignal &g,
                                   const YoungExponents &x, const LctParams &m,
                                   Operator op = Operator::New,
                                   double slack = kInequalitySlack) {
  const auto h = apply(op, f, g, m);
  const double lhs = norm_p(h, x.r());
  const double rhs = young_bound(x, m) * norm_p(f, x.p()) * norm_p(g, x.q());
  const double ratio = rhs == 0.0 ? (lhs == 0.0 ? 0.0 : kInfinity) : lhs / rhs;
  std::ostringstream name;
  name << op_prefix(op) << "-young(" << x.p() << "," << x.q() << "," << x.r()
       << ")";
  VerifierReport r(name.str(), ratio - 1.0, slack, h.grid());
  r.notes.emplace_back("lhs", lhs);
  r.notes.emplace_back("rhs", rhs);
  r.notes.emplace_back("ratio", ratio);
  r.notes.emplace_back("constant", young_bound(x, m));
  return r;
}

/// The L^1 bound: norm_1(f (x)_A g) <= sqrt(1/(2 pi |b|)) norm_1 f norm_1 g.
inline VerifierReport verify_l1_bound(const SampledSignal &f,
                                      const SampledSignal &g,
                                      const LctParams &m,
                                      double slack = kInequalitySlack) {
  auto r = verify_young(f, g, YoungExponents::make(1, 1, 1), m, Operator::New,
                        slack);
  r.identity = "l1-bound";
  return r;
}

} // namespace lctconv

#endif // LCTCONV_THEOREMS_HPP
