#pragma once

// Background medium, geometry descriptors and the spectral building blocks:
// the longitudinal wavenumber branch, TM/TE mode vectors, and the spectral
// amplitudes of a point electric dipole.
//
// Spectral fields are expanded as A f^{+-} + B g where
//   f       = (kz/kt^2) (kx, ky, 0)
//   f^{+-}  = f -+ zhat          (down/up-going TM electric mode vector)
//   g       = (k/kt^2) (-ky, kx, 0)
// and the propagation factors e^{-+ j kz z} are kept by the caller.

#include <cmath>
#include <complex>

#include "stripwave/common.hpp"

namespace stripwave {

struct Medium {
  double frequency = 0.0;  // Hz
  double omega = 0.0;      // rad/s
  cplx eps{}, mu{};        // absolute permittivity/permeability
  cplx k{}, eta{};

  static Medium make(double frequency, cplx eps, cplx mu) {
    if (!(frequency > 0.0)) throw ConfigError("medium: frequency must be > 0");
    if (!(eps.real() > 0.0) || eps.imag() > 0.0)
      throw ConfigError("medium: requires Re{eps} > 0 and Im{eps} <= 0");
    if (!(mu.real() > 0.0) || mu.imag() > 0.0)
      throw ConfigError("medium: requires Re{mu} > 0 and Im{mu} <= 0");
    Medium m;
    m.frequency = frequency;
    m.omega = 2.0 * PI * frequency;
    m.eps = eps;
    m.mu = mu;
    m.k = m.omega * std::sqrt(eps * mu);  // arg(eps mu) in (-pi, 0]
    m.eta = std::sqrt(mu / eps);
    if (m.k.imag() > 0.0 || !(m.eta.real() > 0.0))
      throw ConfigError("medium: wavenumber/impedance branch violated");
    return m;
  }
};

struct StripGeometry {
  double h = 0.0;  // strip half-width (strip occupies |y| <= h, z = a)
  double a = 0.0;  // strip height above the ground plane z = 0

  void validate() const {
    if (!(h > 0.0)) throw ConfigError("geometry: strip half-width h must be > 0");
    if (!(a > 0.0)) throw ConfigError("geometry: strip height a must be > 0");
  }
};

struct DipoleSource {
  int axis = 0;              // 0: x, 1: y, 2: z
  double p = 1.0;            // dipole moment magnitude (C m)
  double x0 = 0.0, y0 = 0.0, z0 = 0.0;

  void validate(const StripGeometry& geom) const {
    if (axis < 0 || axis > 2) throw ConfigError("source: axis must be 0, 1 or 2");
    if (!std::isfinite(p) || p == 0.0)
      throw ConfigError("source: dipole moment must be finite and nonzero");
    if (!(z0 > 0.0)) throw ConfigError("source: dipole must sit above the ground plane");
    if (z0 == geom.a)
      throw ConfigError("source: dipole may not lie in the strip plane z = a");
  }

  Vec3c unit() const {
    switch (axis) {
      case 0: return {1.0, 0.0, 0.0};
      case 1: return {0.0, 1.0, 0.0};
      default: return {0.0, 0.0, 1.0};
    }
  }
};

// kz = sqrt(k^2 - kx^2 - ky^2) on the branch Im{kz} <= 0; for a lossless
// evaluation with Im{kz} = 0 the root with Re{kz} >= 0 is taken.
inline cplx longitudinal_wavenumber(cplx k, cplx kx, double ky) {
  cplx s = std::sqrt(k * k - kx * kx - ky * ky);
  if (s.imag() > 0.0) s = -s;
  return s;
}

struct ModeVectors {
  cplx kz{}, kt2{};
  Vec3c f, fplus, fminus, g;
};

inline ModeVectors mode_vectors(cplx k, cplx kx, double ky) {
  const cplx kt2 = kx * kx + ky * ky;
  if (std::abs(kt2) < 1e-30 * std::abs(k * k))
    throw std::domain_error("mode_vectors: kt^2 vanishes (on-axis spectral point)");
  ModeVectors mv;
  mv.kt2 = kt2;
  mv.kz = longitudinal_wavenumber(k, kx, ky);
  const cplx s = mv.kz / kt2;
  mv.f = {s * kx, s * ky, 0.0};
  mv.fplus = {mv.f.x, mv.f.y, -1.0};
  mv.fminus = {mv.f.x, mv.f.y, 1.0};
  const cplx t = k / kt2;
  mv.g = {-t * ky, t * kx, 0.0};
  return mv;
}

struct SpectralAB {
  cplx A{}, B{};
};

// TM/TE amplitudes of the free dipole field at height z (z != z0):
//   E(kt, z) = A f^{+-} + B g   with f^+ for z > z0, f^- for z < z0.
// The common phase e^{j(kx x0 + ky y0)} e^{-j kz |z - z0|} is included.
inline SpectralAB dipole_ab(const Medium& med, const DipoleSource& src, cplx kx,
                            double ky, double z) {
  const cplx kz = longitudinal_wavenumber(med.k, kx, ky);
  const cplx kt2 = kx * kx + ky * ky;
  const double sgn = z >= src.z0 ? 1.0 : -1.0;
  const cplx phase = std::exp(J_UNIT * (kx * src.x0 + ky * src.y0)) *
                     std::exp(-J_UNIT * kz * std::abs(z - src.z0));
  const cplx c = src.p / (2.0 * med.eps) * phase;
  switch (src.axis) {
    case 0:
      return {-J_UNIT * kx * c, J_UNIT * med.k * ky / kz * c};
    case 1:
      return {-J_UNIT * ky * c, -J_UNIT * med.k * kx / kz * c};
    default:
      return {sgn * J_UNIT * kt2 / kz * c, cplx{}};
  }
}

// Same amplitudes through the general projection: with kappa = (kx, ky, +-kz)
// the dipole spectrum is transversal to kappa, and projecting onto the mode
// vectors gives
//   A^{+-} = (kt^2/k^2) (w^2 mu p / 2j kz) (f^{+-} . e) e^{j kt.rho0 +- j kz z0}
// (B with g in place of f). The field is [A f^{+-} + B g] e^{-+ j kz z}.
inline SpectralAB dipole_ab_general(const Medium& med, const DipoleSource& src,
                                    int side, cplx kx, double ky) {
  const ModeVectors mv = mode_vectors(med.k, kx, ky);
  const Vec3c e = src.unit();
  const cplx common =
      mv.kt2 / (med.k * med.k) * med.omega * med.omega * med.mu * src.p /
      (2.0 * J_UNIT * mv.kz) *
      std::exp(J_UNIT * (kx * src.x0 + ky * src.y0)) *
      std::exp(J_UNIT * (side > 0 ? mv.kz : -mv.kz) * src.z0);
  const Vec3c& fv = side > 0 ? mv.fplus : mv.fminus;
  return {common * dot(fv, e), common * dot(mv.g, e)};
}

}  // namespace stripwave
