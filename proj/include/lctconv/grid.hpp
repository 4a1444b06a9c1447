#ifndef LCTCONV_GRID_HPP
#define LCTCONV_GRID_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "lctconv/errors.hpp"
#include "lctconv/params.hpp"

namespace lctconv {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr double kGridStepTolerance = 1e-12;

/// Uniform grid start + k * step, 0 <= k < count.
class SampleGrid {
public:
  SampleGrid(double start, double step, std::size_t count)
      : start_(start), step_(step), count_(count) {
    if (!std::isfinite(start) || !std::isfinite(step) || !(step > 0.0)) {
      std::ostringstream os;
      os << "grid step must be finite and positive (got " << step << ")";
      throw InvalidGrid(os.str());
    }
    if (count < 2) {
      throw InvalidGrid("grid needs at least two points");
    }
  }

  /// Grid of `count` points on [lo, hi) with spacing (hi - lo) / count.
  static SampleGrid spanning(double lo, double hi, std::size_t count) {
    if (count < 2 || !(hi > lo)) {
      throw InvalidGrid("spanning grid needs hi > lo and count >= 2");
    }
    return SampleGrid(lo, (hi - lo) / static_cast<double>(count), count);
  }

  /// Grid symmetric about zero: points (k - (count-1)/2) * step.
  static SampleGrid centered(double step, std::size_t count) {
    return SampleGrid(-0.5 * static_cast<double>(count - 1) * step, step,
                      count);
  }

  double start() const noexcept { return start_; }
  double step() const noexcept { return step_; }
  std::size_t count() const noexcept { return count_; }

  double point(std::size_t k) const noexcept {
    return start_ + static_cast<double>(k) * step_;
  }
  double last() const noexcept { return point(count_ - 1); }

  SampleGrid with_count(std::size_t n) const { return {start_, step_, n}; }
  SampleGrid with_start(double s) const { return {s, step_, count_}; }

  friend bool operator==(const SampleGrid &, const SampleGrid &) = default;

private:
  double start_;
  double step_;
  std::size_t count_;
};

inline bool same_step(const SampleGrid &x, const SampleGrid &y) {
  return std::abs(x.step() - y.step()) <=
         kGridStepTolerance * std::max(x.step(), y.step());
}

inline void require_same_step(const SampleGrid &x, const SampleGrid &y) {
  if (!same_step(x, y)) {
    std::ostringstream os;
    os << "incompatible grids: steps " << x.step() << " and " << y.step()
       << " differ";
    throw IncompatibleGrids(os.str());
  }
}

namespace detail {

inline void require_finite(std::span<const cplx> v, const char *what) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k].real()) || !std::isfinite(v[k].imag())) {
      std::ostringstream os;
      os << what << ": non-finite sample at index " << k;
      throw InvalidSignal(os.str());
    }
  }
}

inline void require_length(const SampleGrid &g, std::size_t n,
                           const char *what) {
  if (g.count() != n) {
    std::ostringstream os;
    os << what << ": " << n << " values for a grid of " << g.count()
       << " points";
    throw InvalidSignal(os.str());
  }
}

} // namespace detail

/// Complex samples of a function of time on a uniform grid.
class SampledSignal {
public:
  SampledSignal(SampleGrid grid, CVector values)
      : grid_(grid), values_(std::move(values)) {
    detail::require_length(grid_, values_.size(), "signal");
    detail::require_finite(values_, "signal");
  }

  static SampledSignal zeros(const SampleGrid &grid) {
    return {grid, CVector(grid.count())};
  }

  template <class F> static SampledSignal sample(const SampleGrid &grid, F &&f) {
    CVector v(grid.count());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = cplx(f(grid.point(k)));
    return {grid, std::move(v)};
  }

  const SampleGrid &grid() const noexcept { return grid_; }
  std::span<const cplx> values() const noexcept { return values_; }
  const CVector &data() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  cplx operator[](std::size_t k) const noexcept { return values_[k]; }

  friend bool operator==(const SampledSignal &, const SampledSignal &) = default;

private:
  SampleGrid grid_;
  CVector values_;
};

/// Samples of an LCT-domain function, tagged with the matrix that produced it.
class Spectrum {
public:
  Spectrum(SampleGrid grid, CVector values, LctParams params)
      : grid_(grid), values_(std::move(values)), params_(params) {
    detail::require_length(grid_, values_.size(), "spectrum");
  }

  const SampleGrid &grid() const noexcept { return grid_; }
  std::span<const cplx> values() const noexcept { return values_; }
  const CVector &data() const noexcept { return values_; }
  const LctParams &params() const noexcept { return params_; }
  std::size_t size() const noexcept { return values_.size(); }
  cplx operator[](std::size_t k) const noexcept { return values_[k]; }

private:
  SampleGrid grid_;
  CVector values_;
  LctParams params_;
};

/// Offset of `x` from the lattice of `lattice`, in units of its step.
inline double lattice_offset(const SampleGrid &lattice, double x) {
  return (x - lattice.start()) / lattice.step();
}

/// Copies `s` onto `target` (same step, start on the same lattice), zero
/// filling outside the original support. Samples falling outside `target`
/// are dropped.
inline SampledSignal embed(const SampledSignal &s, const SampleGrid &target) {
  require_same_step(s.grid(), target);
  const double off = lattice_offset(target, s.grid().start());
  const double shift = std::round(off);
  if (std::abs(off - shift) > 1e-6) {
    throw IncompatibleGrids("embed: grids are not on a common lattice");
  }
  const auto k0 = static_cast<long long>(shift);
  CVector out(target.count());
  for (std::size_t k = 0; k < s.size(); ++k) {
    const long long j = k0 + static_cast<long long>(k);
    if (j >= 0 && j < static_cast<long long>(out.size())) out[j] = s[k];
  }
  return {target, std::move(out)};
}

} // namespace lctconv

#endif // LCTCONV_GRID_HPP
