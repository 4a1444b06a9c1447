#ifndef LCTCONV_LCT_HPP
#define LCTCONV_LCT_HPP

// Discrete linear canonical transform for b != 0:
//
//   L_A f(u) = sqrt(1/(j 2 pi b)) * int f(t) exp(j(a/2b)t^2 - j(1/b)ut
//                                              + j(d/2b)u^2) dt
//
// evaluated as chirp multiply -> length-M DFT -> chirp multiply. Choosing the
// output spacing du = 2 pi |b| / (M dt) turns exp(-j u t / b) on the two
// lattices into an exact DFT kernel times separable phases, so the fast path
// computes the same Riemann sum as lct_oracle.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "lctconv/detail/fft.hpp"
#include "lctconv/errors.hpp"
#include "lctconv/grid.hpp"
#include "lctconv/params.hpp"

namespace lctconv {

// Relative threshold defining a signal's effective support for the aliasing
// guard.
inline constexpr double kSupportThreshold = 1e-12;

/// Spacing of the LCT-domain grid paired with `count` samples of spacing `dt`.
inline double induced_step(double dt, std::size_t count, const LctParams &m) {
  return 2.0 * std::numbers::pi * std::abs(m.b()) /
         (static_cast<double>(count) * dt);
}

/// Output grid of lct_forward: same count, step 2 pi |b| / (N dt), index
/// aligned with the input (u_k = 0 exactly where t_k = 0).
inline SampleGrid induced_grid(const SampleGrid &t, const LctParams &m,
                               std::size_t count) {
  const double du = induced_step(t.step(), count, m);
  return {t.start() / t.step() * du, du, count};
}

inline SampleGrid induced_grid(const SampleGrid &t, const LctParams &m) {
  return induced_grid(t, m, t.count());
}

namespace detail {

// Largest per-sample phase increment of exp(j rate/2 x^2) over the samples of
// `v` that carry energy.
inline double chirp_increment(const SampleGrid &g, std::span<const cplx> v,
                              double rate) {
  double peak = 0.0;
  for (const auto &z : v) peak = std::max(peak, std::abs(z));
  if (peak == 0.0 || rate == 0.0) return 0.0;
  const double floor = kSupportThreshold * peak;
  double reach = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (std::abs(v[k]) > floor) reach = std::max(reach, std::abs(g.point(k)));
  }
  return std::abs(rate) * reach * g.step();
}

inline void guard_chirp(const SampleGrid &g, std::span<const cplx> v,
                        double rate, const char *what) {
  const double inc = chirp_increment(g, v, rate);
  if (inc > std::numbers::pi) {
    std::ostringstream os;
    os << what << ": grid too coarse, chirp phase advances " << inc
       << " rad per sample (limit pi)";
    throw GridTooCoarse(os.str());
  }
}

inline void require_induced_step(const SampleGrid &in, const SampleGrid &out,
                                 const LctParams &m) {
  if (out.count() < in.count()) {
    throw IncompatibleGrids("output grid has fewer points than the input");
  }
  const double want = induced_step(in.step(), out.count(), m);
  if (std::abs(out.step() - want) > 1e-10 * want) {
    std::ostringstream os;
    os << "incompatible grids: output step " << out.step()
       << " does not match 2 pi |b| / (N dt) = " << want;
    throw IncompatibleGrids(os.str());
  }
}

// Fast path shared by the forward and inverse transforms.
inline CVector lct_apply(const SampleGrid &in, std::span<const cplx> x,
                         const LctParams &m, const SampleGrid &out) {
  require_induced_step(in, out, m);
  guard_chirp(in, x, m.a() / m.b(), "lct");

  const double a = m.a(), b = m.b(), d = m.d();
  const double t0 = in.start(), dt = in.step(), u0 = out.start();
  const std::size_t n_out = out.count();

  CVector work(n_out);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] == cplx{}) continue;
    const double t = in.point(k);
    const double kdt = static_cast<double>(k) * dt;
    work[k] = x[k] * std::polar(1.0, a / (2.0 * b) * t * t - u0 * kdt / b);
  }
  auto y = dft(work, b > 0 ? DftSign::Negative : DftSign::Positive);
  const cplx scale = lct_prefactor(m) * dt;
  for (std::size_t j = 0; j < n_out; ++j) {
    const double u = out.point(j);
    y[j] *= scale * std::polar(1.0, d / (2.0 * b) * u * u - t0 * u / b);
  }
  return y;
}

} // namespace detail

/// Forward LCT onto a caller-chosen LCT-domain grid. The grid's step must be
/// 2 pi |b| / (count * dt) and count >= f.size() (the input is zero padded);
/// its start is arbitrary.
inline Spectrum lct_forward(const SampledSignal &f, const LctParams &m,
                            const SampleGrid &u_grid) {
  return {u_grid, detail::lct_apply(f.grid(), f.values(), m, u_grid), m};
}

inline Spectrum lct_forward(const SampledSignal &f, const LctParams &m) {
  return lct_forward(f, m, induced_grid(f.grid(), m));
}

/// Inverse LCT: the forward transform with A^-1, evaluated on `target`
/// (step must match the induced step; start arbitrary).
inline SampledSignal lct_inverse(const Spectrum &spec,
                                 const SampleGrid &target) {
  detail::require_finite(spec.values(), "spectrum");
  return {target, detail::lct_apply(spec.grid(), spec.values(),
                                    invert_params(spec.params()), target)};
}

/// Inverse onto the grid induced by the spectrum's own grid; for a spectrum
/// produced by lct_forward(f, A) this is f's grid.
inline SampledSignal lct_inverse(const Spectrum &spec) {
  return lct_inverse(spec,
                     induced_grid(spec.grid(), invert_params(spec.params())));
}

/// Direct O(N M) trapezoidal quadrature of the defining integral at every
/// point of `u_grid`, with f taken as zero off its grid. Ground truth for the
/// fast path; shares no code with it.
inline Spectrum lct_oracle(const SampledSignal &f, const LctParams &m,
                           const SampleGrid &u_grid) {
  const double a = m.a(), b = m.b(), d = m.d();
  const auto &tg = f.grid();
  const std::size_t n = f.size();
  const cplx pre = lct_prefactor(m) * tg.step();
  CVector out(u_grid.count());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double u = u_grid.point(j);
    cplx acc{};
    for (std::size_t k = 0; k < n; ++k) {
      const double t = tg.point(k);
      const double w = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
      const double phase = a / (2.0 * b) * t * t - u * t / b +
                           d / (2.0 * b) * u * u;
      acc += w * f[k] * cplx(std::cos(phase), std::sin(phase));
    }
    out[j] = pre * acc;
  }
  return {u_grid, std::move(out), m};
}

} // namespace lctconv

#endif // LCTCONV_LCT_HPP
