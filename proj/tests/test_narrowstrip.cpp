#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "stripwave/fullwave.hpp"
#include "stripwave/narrowstrip.hpp"

using namespace stripwave;

namespace {
Medium lossy_medium() {
  const cplx loss{1.0, -1e-5};
  return Medium::make(3e8, EPS0 * loss, MU0 * loss);
}
}  // namespace

TEST_CASE("narrow kernel equals the one-term assembled entry", "[narrowstrip]") {
  const Medium med = lossy_medium();
  const StripGeometry geom{0.1, 6.0};
  const DipoleSource src{2, 1e-12, 0.0, 0.5, 5.5};
  fullwave::SolverParams par;
  par.m_max = 0;
  for (cplx kx : {cplx{0.5, 0.0}, cplx{3.0, -0.6}, cplx{9.0, 0.2}}) {
    const auto asmb = fullwave::assemble(med, geom, src, par, kx,
                                         fullwave::Parity::Even);
    const cplx a00_kernel = asmb.A_even[0] / (PI * geom.h);
    const auto nr = narrowstrip::spectral_current(med, geom, src, par, kx);
    CHECK(std::abs(nr.kernel - a00_kernel) <= 1e-6 * std::abs(a00_kernel));
    // right-hand sides agree between the scalar and vector paths
    const cplx b0 = narrowstrip::rhs_first_even(med, geom, src, par, kx);
    CHECK(std::abs(b0 - asmb.b_even[0]) <= 1e-6 * std::abs(asmb.b_even[0]));
    // and the quotient is the reported current
    CHECK(std::abs(nr.current - b0 / nr.kernel) <=
          1e-12 * std::abs(nr.current));
  }
}

TEST_CASE("narrow right-hand side for every source axis", "[narrowstrip]") {
  const Medium med = lossy_medium();
  const StripGeometry geom{0.1, 6.0};
  fullwave::SolverParams par;
  par.m_max = 0;
  const cplx kx{2.0, -0.3};
  for (int axis : {0, 1, 2}) {
    const DipoleSource src{axis, 1e-12, 0.0, 0.5, 5.5};
    const auto asmb = fullwave::assemble(med, geom, src, par, kx,
                                         fullwave::Parity::Even);
    const cplx b0 = narrowstrip::rhs_first_even(med, geom, src, par, kx);
    CHECK(std::abs(b0 - asmb.b_even[0]) <=
          1e-6 * (std::abs(asmb.b_even[0]) + 1e-30));
  }
}

TEST_CASE("kernel vanishing near the free wavenumber is refused",
          "[narrowstrip]") {
  const Medium med = lossy_medium();
  const StripGeometry geom{0.1, 6.0};
  const DipoleSource src{2, 1e-12, 0.0, 0.5, 5.5};
  fullwave::SolverParams par;
  par.m_max = 0;
  const cplx kx = med.k * (1.0 + 1e-13);
  CHECK_THROWS_AS(narrowstrip::spectral_current(med, geom, src, par, kx),
                  ConvergenceError);
}

TEST_CASE("narrow current responds to the excitation strength",
          "[narrowstrip]") {
  const Medium med = lossy_medium();
  const StripGeometry geom{0.1, 6.0};
  fullwave::SolverParams par;
  par.m_max = 0;
  const cplx kx{4.0, -0.5};
  DipoleSource s1{2, 1e-12, 0.0, 0.5, 5.5};
  DipoleSource s2 = s1;
  s2.p = 3e-12;
  const auto r1 = narrowstrip::spectral_current(med, geom, s1, par, kx);
  const auto r2 = narrowstrip::spectral_current(med, geom, s2, par, kx);
  CHECK(std::abs(r2.current - 3.0 * r1.current) <=
        1e-10 * std::abs(r2.current));
  CHECK(std::abs(r2.kernel - r1.kernel) <= 1e-12 * std::abs(r1.kernel));
}
