#include "gdkp/numeric.hpp"

#include <algorithm>

namespace gdkp {

namespace {

constexpr double series_radius = 1e-2;
constexpr int series_terms = 10;

}  // namespace

WaveTrig wave_trig(double s) {
  if (std::abs(s) < series_radius) {
    // cos(sqrt s) = sum (-s)^j/(2j)!, sin(sqrt s)/sqrt s = sum (-s)^j/(2j+1)!
    double c = 0.0, sc = 0.0;
    double term = 1.0;
    for (int j = 0; j < series_terms; ++j) {
      c += term;
      term /= (2.0 * j + 1.0);
      sc += term;
      term *= -s / (2.0 * j + 2.0);
    }
    return {c, sc};
  }
  if (s > 0.0) {
    const double q = std::sqrt(s);
    return {std::cos(q), std::sin(q) / q};
  }
  const double kappa = std::sqrt(-s);
  return {std::cosh(kappa), std::sinh(kappa) / kappa};
}

WaveTrig wave_trig_ds(double s) {
  const WaveTrig w = wave_trig(s);
  const double dcos = -0.5 * w.sinc_q;
  if (std::abs(s) < series_radius) {
    // d/ds sum (-1)^j s^j/(2j+1)! = sum_{j>=1} (-1)^j j s^(j-1)/(2j+1)!
    double dsinc = 0.0;
    double fact = 6.0;  // (2j+1)! for j = 1
    double power = 1.0;
    for (int j = 1; j <= series_terms; ++j) {
      dsinc += (j % 2 ? -1.0 : 1.0) * j * power / fact;
      power *= s;
      fact *= (2.0 * j + 2.0) * (2.0 * j + 3.0);
    }
    return {dcos, dsinc};
  }
  return {dcos, (w.cos_q - w.sinc_q) / (2.0 * s)};
}

std::complex<double> sinc(std::complex<double> z) {
  if (std::abs(z) < 1e-4) {
    const std::complex<double> z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0 - z2 * z2 * z2 / 5040.0;
  }
  return std::sin(z) / z;
}

double wrap_two_pi(double x) {
  double r = std::fmod(x, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r -= two_pi;
  return r;
}

double wrap_pi(double x) {
  double r = wrap_two_pi(x + pi) - pi;
  if (r >= pi) r -= two_pi;
  return r;
}

double circular_distance(double a, double b) {
  return std::abs(wrap_pi(a - b));
}

double bisect(const std::function<double(double)>& f, double a, double b,
              double fa, double tol) {
  const bool neg_a = fa < 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (b - a <= tol * std::max(1.0, std::abs(mid))) break;
    const double fm = f(mid);
    if ((fm < 0.0) == neg_a) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

double golden_minimum(const std::function<double(double)>& f, double a,
                      double b, double tol) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - r * (b - a);
  double x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 300 && b - a > tol; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

}  // namespace gdkp
