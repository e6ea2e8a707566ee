#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "stripwave/medium.hpp"

using namespace stripwave;

namespace {
Medium lossy_medium() {
  const cplx loss{1.0, -1e-5};
  return Medium::make(3e8, EPS0 * loss, MU0 * loss);
}
}  // namespace

TEST_CASE("medium wavenumber and impedance", "[medium]") {
  const Medium m = lossy_medium();
  const double c0 = 1.0 / std::sqrt(EPS0 * MU0);
  const cplx k_expect = m.omega / c0 * cplx{1.0, -1e-5};
  CHECK(std::abs(m.k - k_expect) < 1e-12 * std::abs(k_expect));
  CHECK(std::abs(m.eta - std::sqrt(MU0 / EPS0)) < 1e-9);
  CHECK(m.k.imag() < 0.0);
  CHECK(m.eta.real() > 0.0);
}

TEST_CASE("medium validation", "[medium]") {
  CHECK_THROWS_AS(Medium::make(0.0, EPS0, MU0), ConfigError);
  CHECK_THROWS_AS(Medium::make(1e9, cplx{EPS0, 1e-8}, MU0), ConfigError);
  CHECK_THROWS_AS(Medium::make(1e9, EPS0, cplx{-MU0, 0.0}), ConfigError);
  CHECK_NOTHROW(Medium::make(1e9, EPS0, MU0));  // lossless is allowed here
}

TEST_CASE("geometry and source validation", "[medium]") {
  StripGeometry geom{0.5, 1.0};
  CHECK_NOTHROW(geom.validate());
  CHECK_THROWS_AS((StripGeometry{0.0, 1.0}.validate()), ConfigError);
  CHECK_THROWS_AS((StripGeometry{0.5, -1.0}.validate()), ConfigError);
  DipoleSource src{0, 1.0, 0.0, 0.0, 0.5};
  CHECK_NOTHROW(src.validate(geom));
  src.z0 = 1.0;  // in the strip plane
  CHECK_THROWS_AS(src.validate(geom), ConfigError);
  src.z0 = -0.2;
  CHECK_THROWS_AS(src.validate(geom), ConfigError);
  src.z0 = 0.5;
  src.axis = 3;
  CHECK_THROWS_AS(src.validate(geom), ConfigError);
}

TEST_CASE("longitudinal wavenumber branch", "[medium]") {
  const Medium m = lossy_medium();
  const cplx kxs[] = {{0.0, 0.0}, {0.5, 0.0}, {3.0, 0.006}, {-7.0, -0.006}, {6.2, 0.002}};
  const double kys[] = {0.0, 0.3, 5.0, 40.0, 900.0};
  for (cplx kx : kxs) {
    for (double ky : kys) {
      if (std::abs(kx) + ky == 0.0) continue;
      const cplx kz = longitudinal_wavenumber(m.k, kx, ky);
      CAPTURE(kx, ky);
      CHECK(kz.imag() <= 0.0);
      const cplx target = m.k * m.k - kx * kx - ky * ky;
      CHECK(std::abs(kz * kz - target) < 1e-13 * std::abs(target));
    }
  }
  // deep evanescent region: kz ~ -j ky
  const cplx kz = longitudinal_wavenumber(m.k, cplx{0.5, 0.0}, 100.0 * std::abs(m.k));
  CHECK(std::abs(kz / (-J_UNIT * 100.0 * std::abs(m.k)) - 1.0) < 0.01);
  // lossless tie: propagating root is real with Re >= 0
  const cplx kzl = longitudinal_wavenumber(cplx{2.0, 0.0}, cplx{1.0, 0.0}, 0.5);
  CHECK(kzl.imag() == 0.0);
  CHECK(kzl.real() > 0.0);
}

TEST_CASE("mode vectors are transversal and normalised", "[medium]") {
  const Medium m = lossy_medium();
  const cplx kx{2.2, 0.004};
  const double ky = -1.7;
  const ModeVectors mv = mode_vectors(m.k, kx, ky);
  const Vec3c kap_p{kx, ky, mv.kz};
  const Vec3c kap_m{kx, ky, -mv.kz};
  const double scale = std::abs(m.k * m.k / mv.kt2);
  CHECK(std::abs(dot(mv.f, mv.g)) < 1e-15 * scale);
  CHECK(std::abs(dot(mv.fplus, mv.g)) < 1e-15 * scale);
  CHECK(std::abs(dot(mv.fplus, kap_p)) < 1e-14 * std::abs(m.k));
  CHECK(std::abs(dot(mv.fminus, kap_m)) < 1e-14 * std::abs(m.k));
  CHECK(std::abs(dot(mv.g, kap_p)) < 1e-14 * std::abs(m.k));
  const cplx nrm = m.k * m.k / mv.kt2;
  CHECK(std::abs(dot(mv.fplus, mv.fplus) - nrm) < 1e-13 * std::abs(nrm));
  CHECK(std::abs(dot(mv.fminus, mv.fminus) - nrm) < 1e-13 * std::abs(nrm));
  CHECK(std::abs(dot(mv.g, mv.g) - nrm) < 1e-13 * std::abs(nrm));
  CHECK_THROWS_AS(mode_vectors(m.k, cplx{1e-20, 0.0}, 0.0), std::domain_error);
}

TEST_CASE("dipole amplitudes: component forms match the projection form", "[medium]") {
  const Medium m = lossy_medium();
  DipoleSource src;
  src.p = 2.5e-12;
  src.x0 = 0.3;
  src.y0 = -0.8;
  src.z0 = 0.6;
  const cplx kx{1.3, 0.002};
  const double ky = 2.1;
  const cplx kz = longitudinal_wavenumber(m.k, kx, ky);
  for (int axis : {0, 1, 2}) {
    src.axis = axis;
    for (double z : {1.4, 0.15}) {
      const int side = z > src.z0 ? 1 : -1;
      const SpectralAB direct = dipole_ab(m, src, kx, ky, z);
      const SpectralAB gen = dipole_ab_general(m, src, side, kx, ky);
      const cplx prop = std::exp(-J_UNIT * (side > 0 ? kz : -kz) * z);
      CAPTURE(axis, z);
      const double ref = std::abs(direct.A) + std::abs(direct.B);
      CHECK(std::abs(direct.A - gen.A * prop) < 1e-12 * ref);
      CHECK(std::abs(direct.B - gen.B * prop) < 1e-12 * ref);
    }
  }
}

TEST_CASE("vertical dipole excites no TE part", "[medium]") {
  const Medium m = lossy_medium();
  DipoleSource src;
  src.axis = 2;
  src.z0 = 0.6;
  const SpectralAB ab = dipole_ab(m, src, cplx{1.0, 0.0}, 2.0, 1.5);
  CHECK(ab.B == cplx{});
}
