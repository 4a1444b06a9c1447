#ifndef LCTCONV_CONVOLUTION_HPP
#define LCTCONV_CONVOLUTION_HPP

// Canonical convolution operators for the LCT with parameters A = (a,b,c,d).
//
//   (f (x)_A g)(t) = K int f(u) g(t-u+b) e^{j(a/b)u^2 - j(a/b)ut + jat - jau} du
//   (f (.)_A g)(t) = K int f(u) g(t-u-b) e^{j(a/b)u^2 - j(a/b)ut - jat + jau} du
//
// with K = sqrt(1/(j 2 pi b)). Every operator here is evaluated as a Riemann
// sum over the input lattices; the output of the full-support variants lives
// on the lattice f0 + g0 -/+ b, where the shift of g is exact.

#include <cmath>
#include <complex>
#include <functional>
#include <sstream>
#include <string_view>

#include "lctconv/detail/fft.hpp"
#include "lctconv/errors.hpp"
#include "lctconv/grid.hpp"
#include "lctconv/lct.hpp"
#include "lctconv/params.hpp"

namespace lctconv {

enum class Realization { DirectQuadrature, ChirpPathOne, ChirpPathTwo };

/// Full: linear-convolution support. Input: cropped onto f's grid.
enum class OutputWindow { Full, Input };

inline std::string_view to_string(Realization r) {
  switch (r) {
  case Realization::DirectQuadrature: return "direct";
  case Realization::ChirpPathOne: return "chirp1";
  case Realization::ChirpPathTwo: return "chirp2";
  }
  return "?";
}

namespace detail {

inline constexpr double kLatticeSnap = 1e-9;

// Linear interpolation of g at x, zero outside [g0 - dt, g_last + dt].
inline cplx interpolate(const SampledSignal &g, double x) {
  const double pos = (x - g.grid().start()) / g.grid().step();
  const double base = std::floor(pos);
  const double frac = pos - base;
  const auto i = static_cast<long long>(base);
  const auto n = static_cast<long long>(g.size());
  auto at = [&](long long k) { return (k >= 0 && k < n) ? g[k] : cplx{}; };
  if (frac < kLatticeSnap) return at(i);
  if (frac > 1.0 - kLatticeSnap) return at(i + 1);
  return (1.0 - frac) * at(i) + frac * at(i + 1);
}

// Samples of s -> g(s + shift) on the lattice origin + k dt. When the natural
// lattice g0 - shift already lies on it the samples are g's own; otherwise g
// is resampled by a band-limited fractional shift.
inline SampledSignal shifted(const SampledSignal &g, double shift,
                             double origin) {
  const double dt = g.grid().step();
  const double natural = g.grid().start() - shift;
  const double pos = (natural - origin) / dt;
  const double snapped = std::round(pos);
  if (std::abs(pos - snapped) <= kLatticeSnap) {
    return {SampleGrid(origin + snapped * dt, dt, g.size()), g.data()};
  }
  const SampleGrid lattice(origin + std::floor(pos) * dt, dt, g.size() + 1);
  // lattice.point(k) + shift = g0 + (k + delta) dt with delta in (-1, 0).
  const double delta = std::floor(pos) - pos;
  return {lattice, fractional_shift(g.values(), delta, lattice.count())};
}

inline SampledSignal modulate(const SampledSignal &x,
                              const std::function<double(double)> &phase) {
  CVector v(x.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = x[k] * std::polar(1.0, phase(x.grid().point(k)));
  }
  return {x.grid(), std::move(v)};
}

// dt * (x * y) on the lattice x0 + y0, then multiplied by scale * e^{j post(t)}.
inline SampledSignal chirp_convolve(const SampledSignal &x,
                                    const SampledSignal &y, cplx scale,
                                    const std::function<double(double)> &post) {
  require_same_step(x.grid(), y.grid());
  const double dt = x.grid().step();
  auto c = linear_convolve(x.values(), y.values());
  const SampleGrid out(x.grid().start() + y.grid().start(), dt, c.size());
  for (std::size_t n = 0; n < c.size(); ++n) {
    c[n] *= scale * dt * std::polar(1.0, post(out.point(n)));
  }
  return {out, std::move(c)};
}

// Direct Riemann sum of K int f(u) g(t-u) e^{j kernel(u,t)} du on `out`.
inline SampledSignal
direct_sum(const SampledSignal &f, const SampledSignal &g,
           const LctParams &m, const SampleGrid &out,
           const std::function<double(double, double)> &kernel) {
  const double dt = f.grid().step();
  const cplx pre = lct_prefactor(m) * dt;
  CVector h(out.count());
  for (std::size_t n = 0; n < h.size(); ++n) {
    const double t = out.point(n);
    cplx acc{};
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (f[k] == cplx{}) continue;
      const double u = f.grid().point(k);
      const cplx gv = interpolate(g, t - u);
      if (gv == cplx{}) continue;
      const double ph = kernel(u, t);
      acc += f[k] * gv * cplx(std::cos(ph), std::sin(ph));
    }
    h[n] = pre * acc;
  }
  return {out, std::move(h)};
}

inline void guard_signal(const SampledSignal &x, double rate,
                         const char *what) {
  guard_chirp(x.grid(), x.values(), rate, what);
}

// Shared driver for (x)_A (sign = +1) and (.)_A (sign = -1): g is read at
// t - u + sign*b and the linear phases carry sign*a.
inline SampledSignal canonical_convolve(const SampledSignal &f,
                                        const SampledSignal &g,
                                        const LctParams &m, Realization how,
                                        OutputWindow window, double sign,
                                        const char *what) {
  require_same_step(f.grid(), g.grid());
  const double a = m.a(), b = m.b();
  const double rate = a / b;
  const double shift = sign * b;
  const double la = sign * a;
  const double origin = window == OutputWindow::Full
                            ? g.grid().start() - shift
                            : 0.0;
  const SampledSignal gs = shifted(g, shift, origin);
  guard_signal(f, rate, what);
  guard_signal(gs, rate, what);

  SampledSignal h = [&]() -> SampledSignal {
    const cplx k = lct_prefactor(m);
    auto half_chirp = [=](double s) { return rate / 2.0 * s * s; };
    switch (how) {
    case Realization::DirectQuadrature: {
      const SampleGrid out(f.grid().start() + gs.grid().start(),
                           f.grid().step(), f.size() + gs.size() - 1);
      return direct_sum(f, gs, m, out, [=](double u, double t) {
        return rate * u * u - rate * u * t + la * t - la * u;
      });
    }
    case Realization::ChirpPathOne:
      return chirp_convolve(
          modulate(f, half_chirp),
          modulate(gs, [=](double s) { return la * s + rate / 2.0 * s * s; }),
          k, [=](double t) { return -rate / 2.0 * t * t; });
    case Realization::ChirpPathTwo:
      return chirp_convolve(
          modulate(f, [=](double s) { return -la * s + rate / 2.0 * s * s; }),
          modulate(gs, half_chirp), k,
          [=](double t) { return -rate / 2.0 * t * t + la * t; });
    }
    throw std::invalid_argument("unknown realization");
  }();
  guard_signal(h, rate, what);

  if (window == OutputWindow::Input) return embed(h, f.grid());
  return h;
}

} // namespace detail

/// f (x)_A g. All three realizations evaluate the same Riemann sum:
/// DirectQuadrature the defining integral, ChirpPathOne
///   K e^{-j(a/2b)t^2} [(e^{j(a/2b)s^2} f) * (e^{jas + j(a/2b)s^2} g(s+b))](t)
/// and ChirpPathTwo
///   K e^{-j(a/2b)t^2 + jat} [(e^{-jas + j(a/2b)s^2} f) * (e^{j(a/2b)s^2} g(s+b))](t).
/// Full output grid: start f0 + g0 - b, count Nf + Ng - 1.
inline SampledSignal convolve_new(const SampledSignal &f,
                                  const SampledSignal &g, const LctParams &m,
                                  Realization how = Realization::ChirpPathOne,
                                  OutputWindow window = OutputWindow::Full) {
  return detail::canonical_convolve(f, g, m, how, window, +1.0,
                                    "canonical convolution");
}

/// f (.)_A g, the mirror operator (g read at t - u - b, linear phases
/// negated). Full output grid: start f0 + g0 + b.
inline SampledSignal
convolve_new_dual(const SampledSignal &f, const SampledSignal &g,
                  const LctParams &m,
                  Realization how = Realization::ChirpPathOne,
                  OutputWindow window = OutputWindow::Full) {
  return detail::canonical_convolve(f, g, m, how, window, -1.0,
                                    "dual canonical convolution");
}

/// Chirp-sandwich convolution: K e^{-j(a/2b)t^2} ((e^{j(a/2b)t^2} f) * (e^{j(a/2b)t^2} g)),
/// equivalently K int f(s) g(t-s) e^{-j(a/b)s(t-s)} ds. Output start f0 + g0.
inline SampledSignal convolve_deng(const SampledSignal &f,
                                   const SampledSignal &g,
                                   const LctParams &m) {
  require_same_step(f.grid(), g.grid());
  const double rate = m.a() / m.b();
  detail::guard_signal(f, rate, "chirp-sandwich convolution");
  detail::guard_signal(g, rate, "chirp-sandwich convolution");
  auto chirp = [=](double s) { return rate / 2.0 * s * s; };
  return detail::chirp_convolve(detail::modulate(f, chirp),
                                detail::modulate(g, chirp), lct_prefactor(m),
                                [=](double t) { return -chirp(t); });
}

/// Half-chirp convolution: int f(s) g(t-s) e^{-j(a/b)s(t-s/2)} ds
///   = e^{-j(a/2b)t^2} (f * (e^{j(a/2b)s^2} g))(t). Output start f0 + g0.
inline SampledSignal convolve_shi(const SampledSignal &f,
                                  const SampledSignal &g,
                                  const LctParams &m) {
  require_same_step(f.grid(), g.grid());
  const double rate = m.a() / m.b();
  detail::guard_signal(g, rate, "half-chirp convolution");
  auto chirp = [=](double s) { return rate / 2.0 * s * s; };
  return detail::chirp_convolve(f, detail::modulate(g, chirp), cplx(1.0),
                                [=](double t) { return -chirp(t); });
}

/// Default output grid of convolve_spectral: start f0 + g0, count Nf + Ng - 1.
inline SampleGrid spectral_output_grid(const SampledSignal &f,
                                       const SampledSignal &g) {
  return {f.grid().start() + g.grid().start(), f.grid().step(),
          f.size() + g.size() - 1};
}

/// Product-domain convolution: L_{A^-1}(L_A f . L_A g), computed with the fast transform on the
/// u-grid induced by `out`.
inline SampledSignal convolve_spectral(const SampledSignal &f,
                                       const SampledSignal &g,
                                       const LctParams &m,
                                       const SampleGrid &out) {
  require_same_step(f.grid(), g.grid());
  require_same_step(f.grid(), out);
  if (out.count() < std::max(f.size(), g.size())) {
    throw IncompatibleGrids("spectral convolution: output grid too short");
  }
  const SampleGrid ug = induced_grid(out, m);
  const Spectrum ff = lct_forward(f, m, ug);
  const Spectrum gf = lct_forward(g, m, ug);
  CVector prod(ug.count());
  for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = ff[k] * gf[k];
  return lct_inverse(Spectrum(ug, std::move(prod), m), out);
}

inline SampledSignal convolve_spectral(const SampledSignal &f,
                                       const SampledSignal &g,
                                       const LctParams &m) {
  return convolve_spectral(f, g, m, spectral_output_grid(f, g));
}

} // namespace lctconv

#endif // LCTCONV_CONVOLUTION_HPP
