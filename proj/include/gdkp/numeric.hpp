#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace gdkp {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// cos(q) and sin(q)/q as functions of s = q^2. Both are entire in s, so the
// values stay real across the mass-gap boundary s = 0.
struct WaveTrig {
  double cos_q = 1.0;
  double sinc_q = 1.0;
};

WaveTrig wave_trig(double s);

// d/ds of the two entries of wave_trig(s).
WaveTrig wave_trig_ds(double s);

// sin(z)/z with a short series near the origin.
std::complex<double> sinc(std::complex<double> z);

// Angle reduced into [0, 2pi).
double wrap_two_pi(double x);

// Angle reduced into [-pi, pi).
double wrap_pi(double x);

// Distance on the circle of circumference 2pi.
double circular_distance(double a, double b);

// Bisection for a sign change of f on [a, b]; fa and fb must have opposite
// signs (zero counts as positive).
double bisect(const std::function<double(double)>& f, double a, double b,
              double fa, double tol = 1e-14);

// Golden-section minimisation of f on [a, b].
double golden_minimum(const std::function<double(double)>& f, double a,
                      double b, double tol = 1e-13);

}  // namespace gdkp
