// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <nlohmann/json.hpp>

#include "blr/kernelmat.hpp"
#include "blr/kernels.hpp"
#include "blr/sinc.hpp"
#include "blr/spectra.hpp"
#include "support/oracles.hpp"

using namespace blr;

TEST_CASE("density evaluation") {
  const auto flat = SpectralDensity::flat(kPi / 2.0, 1.0 / (2.0 * kPi));
  CHECK(flat(0.0) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-16));
  CHECK(flat(2.0) == 0.0);  // outside the support
  const auto g = SpectralDensity::truncated_gaussian(kPi / 2.0, 1.0);
  CHECK(g(0.3) == doctest::Approx(0.95599748183309991).epsilon(1e-15));
  CHECK(g(-0.3) == g(0.3));
}

TEST_CASE("autocorrelation closed forms") {
  const Autocorrelation nyquist(SpectralDensity::flat(kPi, 1.0 / (2.0 * kPi)));
  CHECK(nyquist(0.0) == doctest::Approx(1.0).epsilon(1e-16));
  CHECK(nyquist(1.0) == 0.0);  // sinc zero at integers, exactly
  const Autocorrelation half(SpectralDensity::flat(kPi / 2.0, 1.0 / (2.0 * kPi)));
  CHECK(half(1.0) == doctest::Approx(0.31830988618379067).epsilon(1e-15));
  // cross-check against a test-local quadrature oracle
  const auto d = SpectralDensity::flat(kPi / 2.0, 1.0 / (2.0 * kPi));
  const double byquad = oracles::integrate(
      [&](double xi) { return std::cos(1.0 * xi) * d(xi); }, -kPi / 2.0, kPi / 2.0);
  CHECK(half(1.0) == doctest::Approx(byquad).epsilon(1e-12));
}

TEST_CASE("density norms") {
  const auto flat = SpectralDensity::flat(kPi / 2.0, 1.0 / (2.0 * kPi));
  const DensityNorms n = flat.norms();
  CHECK(n.l1 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(n.linf == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-15));
  const auto g = SpectralDensity::truncated_gaussian(kPi / 2.0, 1.0);
  CHECK(g.norms().l1 == doctest::Approx(2.2152829565818244).epsilon(1e-12));
  CHECK(g.norms().l2 == doctest::Approx(1.3136974386442652).epsilon(1e-12));
}

TEST_CASE("unit-ball normalization") {
  const auto flat = SpectralDensity::flat(kPi / 2.0, 0.7);
  const auto nd = flat.normalized_unit_ball();
  // effective level solves sqrt(2 pi) * level * sqrt(pi) = 1
  CHECK(nd.scale() * nd.flat_level() ==
        doctest::Approx(0.22507907903927652).epsilon(1e-14));
  // idempotence
  const auto nd2 = nd.normalized_unit_ball();
  CHECK(nd2.scale() == doctest::Approx(nd.scale()).epsilon(1e-13));
  // ||R||_{L2(R)} == 1, verified by piecewise integration of |R|^2 out to T
  const Autocorrelation a(nd);
  double acc = 0;
  for (int seg = 0; seg < 4000; ++seg) {
    acc += oracles::integrate([&](double t) { return a(t) * a(t); }, seg * 0.5,
                              (seg + 1) * 0.5, 1e-14);
  }
  acc *= 2.0;  // even
  // truncation tail of |R|^2 beyond T=2000 is below 2*(2c/T)... ~ 1e-4
  CHECK(acc == doctest::Approx(1.0).epsilon(2e-4));
  CHECK_THROWS_AS(SpectralDensity::flat(kPi / 2.0, 0.0).normalized_unit_ball(),
                  DegenerateDensity);
}

TEST_CASE("piecewise-constant closed form vs quadrature oracle") {
  const auto pwc = SpectralDensity::piecewise_constant(
      kPi / 2.0, {-1.0, -0.5, 0.5, 1.0}, {0.2, 0.05, 0.2});
  const Autocorrelation a(pwc);
  for (double tau : {0.0, 0.25, 1.0, 2.0, 7.5}) {
    const double byquad = oracles::integrate(
        [&](double xi) { return std::cos(tau * xi) * pwc(xi); }, -1.0, 1.0);
    CHECK(a(tau) == doctest::Approx(byquad).epsilon(1e-11));
  }
}

TEST_CASE("quadrature and closed form agree on the flat catalog") {
  const auto d = SpectralDensity::flat(3.0 * kPi / 4.0, 0.3);
  const Autocorrelation cf(d, AutocorrMode::closed_form);
  const Autocorrelation qd(d, AutocorrMode::quadrature);
  for (double tau = 0.0; tau <= 10.0; tau += 0.25)
    CHECK(std::fabs(cf(tau) - qd(tau)) < 1e-10);
}

TEST_CASE("tabulated density has documented lower accuracy") {
  // tabulate the truncated gaussian on a fine grid and compare autocorrelations
  const auto g = SpectralDensity::truncated_gaussian(kPi / 2.0, 1.0);
  std::vector<double> xs, rs;
  const int m = 2001;
  for (int i = 0; i < m; ++i) {
    const double x = -kPi / 2.0 + kPi * i / (m - 1);
    xs.push_back(x);
    rs.push_back(g(x));
  }
  const auto t = SpectralDensity::tabulated(kPi / 2.0, xs, rs);
  const Autocorrelation ag(g), at(t);
  for (double tau : {0.0, 0.5, 2.0})
    CHECK(at(tau) == doctest::Approx(ag(tau)).epsilon(1e-5));
}

TEST_CASE("autocorrelation is bounded by its value at zero") {
  for (const auto& d :
       {SpectralDensity::flat(kPi / 2.0, 0.2), SpectralDensity::truncated_gaussian(1.0, 0.7)}) {
    const Autocorrelation a(d);
    for (double tau = 0.05; tau < 20.0; tau += 0.35) CHECK(std::fabs(a(tau)) <= a.r0());
  }
}

TEST_CASE("finite sections of the autocorrelation are positive semidefinite") {
  const std::vector<double> pts{-2.0, -0.7, 0.0, 0.31, 1.5, 2.2, 3.0, 4.25};
  for (const auto& d : {SpectralDensity::flat(kPi / 3.0, 0.4),
                        SpectralDensity::truncated_gaussian(kPi / 2.0, 1.3)}) {
    const Autocorrelation a(d);
    SymMatrix<Real> m(8, Real(0.0, 128));
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) m.at(i, j) = Real(a(pts[i] - pts[j]), 128);
    const auto ev = jacobi_eigenvalues(m);
    for (const Real& e : ev) CHECK(e.to_double() >= -1e-10 * a.r0());
  }
}

TEST_CASE("squared samples of a unit-norm kernel section sum to one") {
  // f = sqrt(pi/delta) K_delta(., t0) has unit L2 norm; the critical-rate
  // sampling identity makes its squared integer samples sum to 1
  const double delta = kPi / 2.0, t0 = 0.3;
  const int N = 10000;
  std::vector<double> vals;
  vals.reserve(2 * N + 1);
  for (int j = -N; j <= N; ++j) vals.push_back(kd_value(delta, j - t0));
  const double total = kPi / delta * kernels::sum_squares(vals);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("json round trip and parse") {
  const auto d = SpectralDensity::from_json(nlohmann::json::parse(
      R"({"kind":"gauss","delta":1.0471975511965976,"params":{"sigma":0.8},"scale":2.0})"));
  CHECK(d.kind() == DensityKind::gauss);
  CHECK(d.delta() == doctest::Approx(kPi / 3.0));
  CHECK(d(0.0) == doctest::Approx(2.0));
  const auto back = SpectralDensity::from_json(d.to_json());
  CHECK(back(0.5) == d(0.5));
  CHECK_THROWS_AS(
      SpectralDensity::from_json(nlohmann::json::parse(R"({"kind":"x","delta":1})")),
      InvalidDensity);
}

TEST_CASE("invalid densities are rejected") {
  CHECK_THROWS_AS(SpectralDensity::flat(0.0, 1.0), InvalidDensity);
  CHECK_THROWS_AS(SpectralDensity::flat(4.0, 1.0), InvalidDensity);
  CHECK_THROWS_AS(SpectralDensity::piecewise_constant(1.0, {-1.0, 1.0}, {-0.5}),
                  InvalidDensity);
  // odd profile
  CHECK_THROWS_AS(
      SpectralDensity::piecewise_constant(1.0, {-1.0, 0.0, 1.0}, {0.1, 0.9}),
      InvalidDensity);
}
