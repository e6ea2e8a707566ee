#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>

#include "stripwave/common.hpp"
#include "stripwave/medium.hpp"
#include "stripwave/temwire.hpp"

using namespace stripwave;
using Catch::Approx;

namespace {

// Potential of a unit line charge at z = +zc and its image at z = -zc,
// written out independently of the library (log of the distance ratio).
double pair_potential(double zc, double y, double z) {
  const double rm2 = y * y + (z - zc) * (z - zc);
  const double rp2 = y * y + (z + zc) * (z + zc);
  return 0.5 * std::log(rp2 / rm2);
}

Medium lossy_medium() {
  return Medium::make(3.0e8, EPS0 * cplx{1.0, -1e-5}, MU0 * cplx{1.0, -1e-5});
}

}  // namespace

TEST_CASE("wire surface and ground plane are equipotentials", "[temwire]") {
  const temwire::WireGeometry wire{0.01, 1.0};
  const double zc = wire.charge_height();
  CHECK(zc == Approx(std::sqrt(1.0 - 1e-4)));

  // the wire circle (center (0, a), radius s) carries acosh(a/s)
  const double want = std::acosh(wire.height / wire.radius);
  for (int i = 0; i < 24; ++i) {
    const double th = 2.0 * PI * i / 24.0;
    const double y = wire.radius * std::sin(th);
    const double z = wire.height + wire.radius * std::cos(th);
    CHECK(pair_potential(zc, y, z) == Approx(want).epsilon(1e-12));
  }
  // the ground plane carries zero
  for (double y : {-3.0, -0.2, 0.0, 0.7, 12.0})
    CHECK(pair_potential(zc, y, 0.0) == Approx(0.0).margin(1e-15));
}

TEST_CASE("mode pattern is minus the potential gradient", "[temwire]") {
  const temwire::WireGeometry wire{0.05, 2.0};
  const double zc = wire.charge_height();
  const double step = 1e-5;
  for (auto [y, z] : {std::pair{0.3, 0.8}, {-1.2, 2.5}, {0.0, 0.4},
                      {2.0, 2.0}, {-0.05, 1.9}}) {
    const auto pat = temwire::mode_pattern(wire, y, z);
    const double gy = (pair_potential(zc, y + step, z) -
                       pair_potential(zc, y - step, z)) /
                      (2.0 * step);
    const double gz = (pair_potential(zc, y, z + step) -
                       pair_potential(zc, y, z - step)) /
                      (2.0 * step);
    const double mag = std::hypot(gy, gz);
    CHECK(pat.ey == Approx(-gy).margin(1e-6 * mag));
    CHECK(pat.ez == Approx(-gz).margin(1e-6 * mag));
  }
  // tangential field vanishes on the ground plane
  for (double y : {-2.0, -0.3, 0.6, 5.0})
    CHECK(temwire::mode_pattern(wire, y, 0.0).ey == 0.0);
}

TEST_CASE("launched current follows the transmission-line form", "[temwire]") {
  const auto med = lossy_medium();
  const temwire::WireGeometry wire{0.01, 1.0};
  const DipoleSource src{2, 1e-12, 0.0, 0.5, 0.5};

  const cplx at2 = temwire::tem_current(med, wire, src, 2.0);
  REQUIRE(std::abs(at2) > 0.0);

  SECTION("waves run symmetrically away from the source plane") {
    for (double d : {0.4, 1.7, 6.0}) {
      const cplx right = temwire::tem_current(med, wire, src, src.x0 + d);
      const cplx left = temwire::tem_current(med, wire, src, src.x0 - d);
      CHECK(std::abs(right + left) <= 1e-15 * std::abs(right));
    }
    CHECK(temwire::tem_current(med, wire, src, src.x0) == cplx{});
  }

  SECTION("magnitude decays with the medium loss only") {
    const cplx at10 = temwire::tem_current(med, wire, src, 10.0);
    const double want = std::abs(at2) * std::exp(med.k.imag() * 8.0);
    CHECK(std::abs(at10) == Approx(want).epsilon(1e-12));
  }

  SECTION("phase advances as an outgoing wave") {
    // I(x) e^{+jk(x - x0)} is x-independent on the right of the source
    const cplx c2 = at2 * std::exp(J_UNIT * med.k * (2.0 - src.x0));
    const cplx c7 = temwire::tem_current(med, wire, src, 7.0) *
                    std::exp(J_UNIT * med.k * (7.0 - src.x0));
    CHECK(std::abs(c2 - c7) <= 1e-10 * std::abs(c2));
  }

  SECTION("linear in the dipole moment and axis-selective") {
    DipoleSource big = src;
    big.p = 7.5e-12;
    const cplx scaled = temwire::tem_current(med, wire, big, 2.0);
    CHECK(std::abs(scaled - 7.5 * at2) <= 1e-14 * std::abs(scaled));

    DipoleSource along = src;
    along.axis = 0;  // longitudinal dipole cannot excite a transverse mode
    CHECK(temwire::tem_current(med, wire, along, 2.0) == cplx{});

    // a y-directed dipole on the symmetry plane y = 0 couples through ey,
    // which vanishes there
    DipoleSource sideways{1, 1e-12, 0.0, 0.0, 0.5};
    CHECK(temwire::tem_current(med, wire, sideways, 2.0) == cplx{});
  }

  SECTION("coupling strength matches the mode pattern projection") {
    const auto pat = temwire::mode_pattern(wire, src.y0, src.z0);
    const double norm = 2.0 * std::acosh(wire.height / wire.radius);
    const cplx want = -J_UNIT * med.omega * src.p * pat.ez / norm *
                      std::exp(-J_UNIT * med.k * 2.0);
    CHECK(std::abs(at2 - want) <= 1e-14 * std::abs(want));
  }
}

TEST_CASE("wire geometry validation", "[temwire]") {
  const auto med = lossy_medium();
  CHECK_THROWS_AS((temwire::WireGeometry{0.0, 1.0}).validate(), ConfigError);
  CHECK_THROWS_AS((temwire::WireGeometry{-0.1, 1.0}).validate(), ConfigError);
  CHECK_THROWS_AS((temwire::WireGeometry{0.5, 0.4}).validate(), ConfigError);

  const temwire::WireGeometry wire{0.05, 1.0};
  // source below the ground plane
  CHECK_THROWS_AS(
      temwire::tem_current(med, wire, DipoleSource{2, 1.0, 0.0, 0.0, -0.5}, 1.0),
      ConfigError);
  // source inside the wire
  CHECK_THROWS_AS(
      temwire::tem_current(med, wire, DipoleSource{2, 1.0, 0.0, 0.0, 1.01}, 1.0),
      ConfigError);
  // strip equivalence
  const auto eq = temwire::WireGeometry::from_strip(StripGeometry{0.02, 1.0});
  CHECK(eq.radius == Approx(0.01));
  CHECK(eq.height == Approx(1.0));
}
