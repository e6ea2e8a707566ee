#pragma once

// One-term approximation for strips narrow against both the wavelength and
// the height above ground. The transverse current and all higher Chebyshev
// terms are dropped, so at each kx the Galerkin system collapses to a single
// scalar equation
//
//   pi h (k^2 - kx^2) W00(kx) c_0 = b_0(kx),
//
// and the net strip current transform is I(kx) = pi h c_0 = b_0 / kernel with
// kernel = (k^2 - kx^2) W00. The kernel vanishes where kx approaches the free
// wavenumber (the quasi-TEM pole of the full problem), which this
// approximation cannot represent; evaluation there is refused.

#include <cmath>

#include "stripwave/common.hpp"
#include "stripwave/fullwave.hpp"
#include "stripwave/medium.hpp"
#include "stripwave/quadrature.hpp"
#include "stripwave/specfun.hpp"

namespace stripwave::narrowstrip {

struct NarrowResult {
  cplx current;  // I(kx)
  cplx kernel;   // (k^2 - kx^2) W00(kx)
};

// Lowest even-system right-hand side by scalar quadrature (source coupling
// integral tested with the edge-weighted constant term), including the
// excitation prefactor.
inline cplx rhs_first_even(const Medium& med, const StripGeometry& geom,
                           const DipoleSource& src,
                           const fullwave::SolverParams& params, cplx kx) {
  params.validate();
  geom.validate();
  src.validate(geom);
  const cplx k = med.k, k2 = med.k * med.k;
  const double h = geom.h, a = geom.a, y0 = src.y0;
  const double d1 = std::abs(a - src.z0), d2 = a + src.z0;
  const double sg = a > src.z0 ? 1.0 : -1.0;

  quadrature::VectorIntegrand f = [&](double ky, std::span<cplx> out) {
    const cplx kz = longitudinal_wavenumber(k, kx, ky);
    const cplx e1 = std::exp(-J_UNIT * kz * d1);
    const cplx e2 = std::exp(-J_UNIT * kz * d2);
    const double eb1 = std::exp(-ky * d1), eb2 = std::exp(-ky * d2);
    const double cy = std::cos(ky * y0), sy = std::sin(ky * y0);
    cplx exact, asym;
    switch (src.axis) {
      case 0:
        exact = -(k2 - kx * kx) / kz * (e1 - e2) * cy;
        asym = -(k2 - kx * kx) * J_UNIT *
               (-eb1 * std::expm1(-ky * (d2 - d1)) / ky) * cy;
        break;
      case 1:
        exact = kx * ky / kz * (e1 - e2) * (J_UNIT * sy);
        asym = -kx * (eb1 - eb2) * sy;
        break;
      default:
        exact = kx * (sg * e1 + e2) * cy;
        asym = kx * (sg * eb1 + eb2) * cy;
    }
    out[0] = specfun::bessel_j(0, ky * h) * (exact - asym);
  };

  const double kymax = fullwave::detail::effective_kymax(geom, med, params);
  const std::vector<double> pts =
      fullwave::detail::ky_breakpoints(k, kx, h, kymax);
  quadrature::Options opts;
  opts.abs_tol = params.abs_tol;
  opts.rel_tol = params.rel_tol;
  opts.max_intervals = params.max_intervals;
  cplx val;
  quadrature::integrate_vector(f, 1, pts, opts, std::span<cplx>(&val, 1));

  switch (src.axis) {
    case 0:
      val += -(k2 - kx * kx) * J_UNIT *
             fullwave::detail::lap_cos_over(d1, d2, y0, h, 0);
      break;
    case 1:
      val += -kx * (fullwave::detail::lap_sin(d1, y0, h, 0) -
                    fullwave::detail::lap_sin(d2, y0, h, 0));
      break;
    default:
      val += kx * (sg * fullwave::detail::lap_cos(d1, y0, h, 0) +
                   fullwave::detail::lap_cos(d2, y0, h, 0));
  }
  const cplx pref =
      J_UNIT * src.p / (med.eps * med.eta) * std::exp(J_UNIT * kx * src.x0);
  return pref * val;
}

// Narrow-strip spectral net current at one kx.
inline NarrowResult spectral_current(const Medium& med,
                                     const StripGeometry& geom,
                                     const DipoleSource& src,
                                     const fullwave::SolverParams& params,
                                     cplx kx) {
  const cplx w00 = fullwave::w_table_entry(med, geom, params, kx, 0, 0);
  const cplx kernel = (med.k * med.k - kx * kx) * w00;
  const cplx q = med.k * w00;
  if (std::abs(kernel) < 1e-12 * std::abs(med.k) * std::abs(q))
    throw ConvergenceError(
        "narrow-strip kernel vanishes: kx too close to +-k for the one-term "
        "model",
        kernel, std::abs(kernel));
  const cplx b0 = rhs_first_even(med, geom, src, params, kx);
  return {b0 / kernel, kernel};
}

}  // namespace stripwave::narrowstrip
