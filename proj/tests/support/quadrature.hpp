#pragma once

#include <complex>
#include <numbers>

namespace quad {

using cplx = std::complex<double>;

// (1/pi) int_0^pi f(x) e^{-imx} dx for pi-periodic f; the trapezoid rule is spectrally accurate here.
template <class F>
cplx fourier(F&& f, int m, int points = 4096) {
  const double h = std::numbers::pi / points;
  cplx sum{};
  for (int i = 0; i < points; ++i) sum += cplx(f(i * h)) * std::exp(cplx(0, -m * i * h));
  return sum / static_cast<double>(points);
}

// Composite Simpson on [a, b].
template <class F>
cplx simpson_plain(F&& f, double a, double b, int intervals = 20000) {
  const double h = (b - a) / intervals;
  cplx sum = cplx(f(a)) + cplx(f(b));
  for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * cplx(f(a + i * h));
  return sum * h / 3.0;
}

}  // namespace quad
