#ifndef LCTCONV_DETAIL_FFT_HPP
#define LCTCONV_DETAIL_FFT_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <mutex>
#include <span>
#include <vector>

#include <fftw3.h>

namespace lctconv::detail {

// FFTW planners are not thread-safe; execution on distinct buffers is.
inline std::mutex &fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

enum class DftSign : int { Negative = FFTW_FORWARD, Positive = FFTW_BACKWARD };

/// Unnormalized DFT: out[m] = sum_k in[k] exp(sign * 2 pi i k m / n).
inline std::vector<std::complex<double>>
dft(std::span<const std::complex<double>> in, DftSign sign) {
  const std::size_t n = in.size();
  std::vector<std::complex<double>> out(n);
  if (n == 0) return out;
  std::vector<std::complex<double>> buf(in.begin(), in.end());
  auto *ibuf = reinterpret_cast<fftw_complex *>(buf.data());
  auto *obuf = reinterpret_cast<fftw_complex *>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), ibuf, obuf,
                            static_cast<int>(sign), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

/// Linear (acyclic) convolution c[n] = sum_k x[k] y[n-k], length
/// |x| + |y| - 1, through a zero-padded FFT.
inline std::vector<std::complex<double>>
linear_convolve(std::span<const std::complex<double>> x,
                std::span<const std::complex<double>> y) {
  if (x.empty() || y.empty()) return {};
  const std::size_t len = x.size() + y.size() - 1;
  std::size_t n = 1;
  while (n < len) n <<= 1;
  std::vector<std::complex<double>> xp(n), yp(n);
  std::copy(x.begin(), x.end(), xp.begin());
  std::copy(y.begin(), y.end(), yp.begin());
  auto xf = dft(xp, DftSign::Negative);
  const auto yf = dft(yp, DftSign::Negative);
  for (std::size_t k = 0; k < n; ++k) xf[k] *= yf[k];
  auto c = dft(xf, DftSign::Positive);
  c.resize(len);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto &v : c) v *= scale;
  return c;
}

/// Band-limited resampling y[k] = x(k + delta), k = 0..count-1, with x taken
/// as zero outside its samples. The signal is zero-padded so the circular
/// shift never wraps data into range.
inline std::vector<std::complex<double>>
fractional_shift(std::span<const std::complex<double>> x, double delta,
                 std::size_t count) {
  std::size_t n = 1;
  while (n < 2 * std::max(x.size(), count) + 2) n <<= 1;
  std::vector<std::complex<double>> xp(n);
  std::copy(x.begin(), x.end(), xp.begin());
  auto spec = dft(xp, DftSign::Negative);
  const double two_pi = 2.0 * std::acos(-1.0);
  for (std::size_t m = 0; m < n; ++m) {
    if (2 * m == n) {
      // Nyquist bin: keep the real-symmetric part only.
      spec[m] *= std::cos(0.5 * two_pi * delta);
      continue;
    }
    const double freq = 2 * m < n ? static_cast<double>(m)
                                  : static_cast<double>(m) - static_cast<double>(n);
    spec[m] *= std::polar(1.0, two_pi * freq * delta / static_cast<double>(n));
  }
  auto y = dft(spec, DftSign::Positive);
  y.resize(count);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto &v : y) v *= scale;
  return y;
}

} // namespace lctconv::detail

#endif // LCTCONV_DETAIL_FFT_HPP
