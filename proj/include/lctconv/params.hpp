#ifndef LCTCONV_PARAMS_HPP
#define LCTCONV_PARAMS_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "lctconv/errors.hpp"

namespace lctconv {

inline constexpr double kDeterminantTolerance = 1e-12;
inline constexpr double kMinAbsB = 1e-12;

/// Unimodular parameter matrix A = (a, b, c, d) of a linear canonical
/// transform, restricted to b != 0. Only constructible through make_params.
class LctParams {
public:
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }

  friend bool operator==(const LctParams &, const LctParams &) = default;

  friend LctParams make_params(double a, double b, double c, double d);
  friend LctParams invert_params(const LctParams &m) noexcept;

private:
  LctParams(double a, double b, double c, double d) noexcept
      : a_(a), b_(b), c_(c), d_(d) {}

  double a_, b_, c_, d_;
};

inline LctParams make_params(double a, double b, double c, double d) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) ||
      !std::isfinite(d)) {
    throw DeterminantViolation("matrix entries must be finite");
  }
  const double det = a * d - b * c;
  if (std::abs(det - 1.0) > kDeterminantTolerance) {
    std::ostringstream os;
    os << "determinant violation: ad - bc = " << det << ", expected 1";
    throw DeterminantViolation(os.str());
  }
  if (std::abs(b) < kMinAbsB) {
    throw ZeroB("b must be nonzero (the b = 0 chirp-multiplication case is "
                "not supported)");
  }
  return LctParams(a, b, c, d);
}

// (a, b, c, d)^-1 = (d, -b, -c, a); exact, so inversion is an involution.
inline LctParams invert_params(const LctParams &m) noexcept {
  return LctParams(m.d(), -m.b(), -m.c(), m.a());
}

inline LctParams fourier_params() { return make_params(0.0, 1.0, -1.0, 0.0); }

inline LctParams fractional_fourier_params(double alpha) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  return make_params(ca, sa, -sa, ca);
}

/// Principal branch of sqrt(1/(j 2 pi b)): (2 pi |b|)^(-1/2) e^{-j sgn(b) pi/4}.
inline std::complex<double> lct_prefactor(const LctParams &m) {
  const double mag = 1.0 / std::sqrt(2.0 * std::numbers::pi * std::abs(m.b()));
  const double ph = (m.b() > 0 ? -1.0 : 1.0) * std::numbers::pi / 4.0;
  return std::polar(mag, ph);
}

inline std::ostream &operator<<(std::ostream &os, const LctParams &m) {
  return os << "(" << m.a() << ", " << m.b() << ", " << m.c() << ", " << m.d()
            << ")";
}

} // namespace lctconv

#endif // LCTCONV_PARAMS_HPP
