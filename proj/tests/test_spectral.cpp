#include <doctest.h>

#include <random>

#include "gdkp/errors.hpp"
#include "gdkp/numeric.hpp"
#include "gdkp/spectral.hpp"
#include "test_util.hpp"

using namespace gdkp;
using cd = std::complex<double>;

namespace {

const cd I(0, 1);

// det(B_k - U) with B_k = A_{k,-} A_{k,+}^{-1}, assembled from the boundary
// values of the two pseudo-periodic solutions.
cd determinant_form(const Coupling& c, double k, double eps, double m) {
  const cd q = wavenumber(eps, m);
  const cd r = q / (eps + m);
  Matrix2cd ap, am;
  ap << 1.0 + r, 1.0 - r, (1.0 - r) * std::exp(I * (k - q)), (1.0 + r) * std::exp(I * (k + q));
  am << 1.0 - r, 1.0 + r, (1.0 + r) * std::exp(I * (k - q)), (1.0 - r) * std::exp(I * (k + q));
  return (am * ap.inverse() - coupling_matrix(c)).determinant();
}

double theta_m(double m) { return std::acos(std::tanh(m)); }

}  // namespace

TEST_CASE("wavenumber") {
  CHECK(std::abs(wavenumber(1.0, 1.0)) == 0.0);
  CHECK(std::abs(wavenumber(0.0, 1.0) - I) < 1e-15);
  CHECK(std::abs(wavenumber(2.0, 1.0) - std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(wavenumber(-0.5, 1.0) - I * std::sqrt(0.75)) < 1e-15);
}

TEST_CASE("spectral_value examples") {
  for (double k : {-3.0, -0.4, 0.0, 2.2}) CHECK(std::abs(spectral_value(family_D(0), k, 0.0, 1.0)) < 1e-15);
  CHECK(std::abs(spectral_value(family_D(0), 0.3, std::sqrt(pi * pi + 1), 1.0)) < 1e-15);
  const Coupling c = family_BDI(pi / 2);
  for (double k : {-2.0, 0.5, 1.7})
    for (double e : {-3.0, 0.2, 1.5, 4.0}) {
      const cd q = wavenumber(e, 1.0);
      CHECK(spectral_value(c, k, e, 1.0) == doctest::Approx(std::cos(k) + std::cos(q).real()).epsilon(1e-13));
    }
}

TEST_CASE("series branch of the wave trigonometry is continuous") {
  const Coupling c = family_AIII(0.7, 0.2);
  for (double e : {1.0 - 1e-3, 1.0 - 1e-6, 1.0, 1.0 + 1e-6, 1.0 + 1e-3}) {
    const double s = e * e - 1.0;
    const double direct = s > 0 ? std::cos(std::sqrt(s)) : std::cosh(std::sqrt(-s));
    CHECK(wave_trig(s).cos_q == doctest::Approx(direct).epsilon(1e-14));
  }
  // Central difference of F against the analytic derivative.
  for (double e : {-3.3, -1.0, 0.0, 0.4, 1.0 + 1e-4, 2.5}) {
    const double h = 1e-6;
    const double fd = (band_function(c, e + h, 1.0) - band_function(c, e - h, 1.0)) / (2 * h);
    CHECK(band_function_derivative(c, e, 1.0) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("matrix form matches the determinant of B_k - U") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ku(-pi, pi), eu(-6.0, 6.0);
  for (int i = 0; i < 10000; ++i) {
    const Coupling c = testing::random_coupling(rng);
    const double k = ku(rng), e = eu(rng);
    const cd q = wavenumber(e, 1.0);
    if (std::abs(q) < 1e-3 || std::abs(std::sin(q)) < 1e-3) continue;
    const cd direct = determinant_form(c, k, e, 1.0);
    const cd mf = spectral_value_matrix_form(c, k, e, 1.0);
    CHECK(std::abs(direct - mf) < 1e-8 * (1.0 + std::abs(direct)));
    // The real form differs by a non-vanishing factor.
    const double f = spectral_value(c, k, e, 1.0);
    const cd scale = 2.0 * std::exp(I * c.eta) / (e * std::sin(q) / q - I * std::cos(q));
    CHECK(std::abs(mf - scale * f) < 1e-8 * (1.0 + std::abs(mf)));
  }
  // k = pi/4, q = 3pi/4 for U_CS(pi/2)
  const double e = std::sqrt(9 * pi * pi / 16 + 1);
  CHECK(std::abs(spectral_value(family_BDI(pi / 2), pi / 4, e, 1.0)) < 1e-14);
  CHECK(std::abs(spectral_value_matrix_form(family_BDI(pi / 2), pi / 4, e, 1.0)) < 1e-13);
}

TEST_CASE("flat bands of U_C(0)") {
  const BandStructure bs = band_structure(family_D(0), 1.0);
  REQUIRE(bs.has_zero_band());
  for (int n = -3; n <= 3; ++n) {
    REQUIRE(bs.bands.count(n));
    const double expect = n == 0 ? 0.0 : (n > 0 ? 1 : -1) * std::sqrt(n * n * pi * pi + 1.0);
    for (double e : bs.bands.at(n)) CHECK(std::abs(e - expect) < 1e-9);
  }
}

TEST_CASE("U_CS(pi/2) is the free Dirac operator") {
  BandOptions bo;
  bo.k_count = 21;
  const BandStructure bs = band_structure(family_BDI(pi / 2), 1.0, bo);
  CHECK_FALSE(bs.has_zero_band());
  REQUIRE(bs.gaps.size() >= 1);
  const Gap* central = bs.gap_above(-1);
  REQUIRE(central != nullptr);
  CHECK(central->lo == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(central->hi == doctest::Approx(1.0).epsilon(1e-9));
  for (int n = 1; n <= 3; ++n) {
    for (std::size_t i = 0; i < bs.k_grid.size(); ++i) {
      const double ak = std::abs(bs.k_grid[i]);
      // cos k + cos q = 0: q = pi - |k|, pi + |k|, 3pi - |k|, ...
      const double q = (n % 2 == 1) ? n * pi - ak : (n - 1) * pi + ak;
      CHECK(std::abs(bs.bands.at(n)[i] - std::sqrt(q * q + 1.0)) < 1e-8);
    }
  }
}

TEST_CASE("band structure invariants") {
  for (const Coupling& c : {family_BDI(0.3), family_D(0.9), family_AIII(2.0, 0.4), family_BDI(1.2)}) {
    const BandStructure bs = band_structure(c, 1.0);
    const auto labels = bs.labels();
    for (std::size_t j = 0; j + 1 < labels.size(); ++j) {
      for (std::size_t i = 0; i < bs.k_grid.size(); ++i) {
        CHECK(bs.bands.at(labels[j])[i] <= bs.bands.at(labels[j + 1])[i] + 1e-12);
      }
    }
    for (const Gap& g : bs.gaps) {
      for (double k : bs.k_grid) {
        const auto roots = spectral_roots(c, k, 1.0, g.lo + 1e-9, g.hi - 1e-9);
        CHECK(roots.empty());
      }
    }
  }
  const BandStructure open = band_structure(family_BDI(0.3), 1.0);
  CHECK_FALSE(open.has_zero_band());
  CHECK(open.gap_above(-1) != nullptr);
}

TEST_CASE("band structure errors") {
  BandOptions bo;
  bo.eps_lo = 0.5;
  bo.eps_hi = 3.0;
  CHECK_THROWS_AS(band_structure(family_BDI(0.3), 1.0, bo), Error);
  bo.eps_lo = -0.5;
  bo.eps_hi = 0.5;
  try {
    band_structure(family_BDI(0.3), 1.0, bo);
    FAIL("expected WindowTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WindowTooSmall);
  }
  CHECK_THROWS_AS(band_structure(family_BDI(0.3), -1.0), Error);
}

TEST_CASE("zero modes") {
  const double m = 1.0;
  const ZeroModeReport none = zero_modes(family_BDI(0), m);
  CHECK(none.count == 0);
  for (double k : {-2.0, 0.0, 1.0}) CHECK(spectral_value(family_BDI(0), k, 0.0, m) == doctest::Approx(std::exp(-m)));

  const ZeroModeReport edge = zero_modes(family_BDI(theta_m(m)), m);
  CHECK(edge.count == 1);
  REQUIRE(edge.momenta.size() == 1);
  CHECK(edge.momenta[0] == doctest::Approx(-pi));
  // F(0) = sech(m) (1 - cos k) at -theta_m
  const ZeroModeReport mirror = zero_modes(family_BDI(-theta_m(m)), m);
  CHECK(mirror.count == 1);
  CHECK(std::abs(mirror.momenta.at(0)) < 1e-12);

  // sqrt(1 - m2^2) cos(theta) = tanh(m)
  const double m2 = 0.3;
  const double th = std::acos(std::tanh(m) / std::sqrt(1 - m2 * m2));
  CHECK(zero_modes(family_AIII(th, m2), m).count >= 1);

  CHECK(zero_modes(family_D(0), m).flat_zero_band);
  CHECK_FALSE(zero_modes(family_D(0.4), m).flat_zero_band);
}

TEST_CASE("zero modes agree with a sign scan") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const Coupling c = testing::random_permeable(rng);
    const ZeroModeReport z = zero_modes(c, 1.0);
    int changes = 0;
    const int n = 20000;
    double prev = spectral_value(c, -pi, 0.0, 1.0);
    for (int j = 1; j <= n; ++j) {
      const double cur = spectral_value(c, -pi + two_pi * j / n, 0.0, 1.0);
      if ((prev > 0) != (cur > 0)) ++changes;
      prev = cur;
    }
    CHECK(z.count == changes);
    for (double k : z.momenta) CHECK(std::abs(spectral_value(c, k, 0.0, 1.0)) < 1e-12);
  }
}

TEST_CASE("spectral symmetries") {
  const SymmetryReport bdi = check_spectral_symmetries(band_structure(family_BDI(0.4), 1.0));
  CHECK(bdi.holds_T);
  CHECK(bdi.holds_C);
  CHECK(bdi.holds_S);
  const SymmetryReport aiii = check_spectral_symmetries(band_structure(family_AIII(0.4, 0.3), 1.0));
  CHECK(aiii.holds_S);
  CHECK_FALSE(aiii.holds_T);
  CHECK(aiii.dev_T > 1e-3);
  const SymmetryReport d = check_spectral_symmetries(band_structure(family_D(0.7), 1.0));
  CHECK(d.holds_C);

  BandOptions odd;
  odd.k_count = 7;
  BandStructure bs = band_structure(family_BDI(0.4), 1.0, odd);
  bs.k_grid[1] += 0.01;
  CHECK_THROWS_AS(check_spectral_symmetries(bs), Error);
}
