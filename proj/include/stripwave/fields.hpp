#pragma once

// Mode coefficients of the strip and ground-plane responses, the total
// spectral E/H at a probe height, and spatial field evaluation through the
// nested inverse transforms (adaptive ky quadrature inside every node of
// the deformed kx contour).
//
// Field families and their vertical phases:
//   dipole   E = A1 f^{+-} + B1 g                 f^+ above the source plane
//   ground   E = (A0 f^+ + B0 g) e^{-j kz z}      up-going from z = 0
//   strip    E = (A2 f^{+-} + B2 g) e^{-+j kz (z - a)}  outgoing from z = a
// with eta H = +-(A g - B f^{sel}) on up/down-going branches. A2/B2 follow
// from the strip current spectra; A0/B0 cancel the tangential E of the
// other two families on the ground plane, which makes the z = 0 boundary
// condition hold identically per spectral point.
//
// Note for far-overhead probes (z well above the strip): the coarse contour
// panel width resolves spectral oscillation heights up to ~2a + z0; raise
// ContourParams::samples_per_wavelength when probing much higher.

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "stripwave/common.hpp"
#include "stripwave/fullwave.hpp"
#include "stripwave/medium.hpp"
#include "stripwave/quadrature.hpp"
#include "stripwave/transform.hpp"

namespace stripwave::fields {

enum class FieldParts {
  total,     // dipole + ground + strip responses
  incident,  // dipole above the bare ground plane, no strip
};

struct ModeCoefficients {
  cplx A2{}, B2{};  // strip response, outgoing from z = a
  cplx A0{}, B0{};  // ground response, up-going from z = 0
};

inline ModeCoefficients mode_coefficients(const Medium& med,
                                          const StripGeometry& geom,
                                          const DipoleSource& src, cplx kx,
                                          double ky, cplx Ktx, cplx Kty) {
  const cplx kz = longitudinal_wavenumber(med.k, kx, ky);
  if (std::abs(kz) < 1e-12 * std::abs(med.k))
    throw std::domain_error("mode_coefficients: kz at the branch floor");
  ModeCoefficients mc;
  mc.A2 = -med.eta * (kx * Ktx + ky * Kty) / (2.0 * med.k);
  mc.B2 = -med.eta * (kx * Kty - ky * Ktx) / (2.0 * kz);
  const SpectralAB d0 = dipole_ab(med, src, kx, ky, 0.0);
  const cplx ea = std::exp(-J_UNIT * kz * geom.a);
  mc.A0 = -d0.A - mc.A2 * ea;
  mc.B0 = -d0.B - mc.B2 * ea;
  return mc;
}

struct SpectralField {
  Vec3c E, H;
};

namespace detail {

inline void check_probe_planes(const StripGeometry& geom,
                               const DipoleSource& src, double z) {
  if (!(z >= 0.0))
    throw ConfigError("field probe: z must be >= 0 (above the ground plane)");
  if (std::abs(z - src.z0) < 1e-9 || std::abs(z - geom.a) < 1e-9)
    throw ConfigError(
        "field probe: z must sit at least 1e-9 m off the source plane and "
        "the strip plane (the up/down classification is undefined there)");
}

// E and eta*H of the selected families; returning eta*H keeps all six
// components on one scale for the vector quadrature.
inline SpectralField spectral_field_scaled(const Medium& med,
                                           const StripGeometry& geom,
                                           const DipoleSource& src, cplx kx,
                                           double ky, cplx Ktx, cplx Kty,
                                           double z, FieldParts parts) {
  const ModeVectors mv = mode_vectors(med.k, kx, ky);
  const bool with_strip = parts == FieldParts::total;
  const ModeCoefficients mc =
      mode_coefficients(med, geom, src, kx, ky, with_strip ? Ktx : cplx{},
                        with_strip ? Kty : cplx{});

  Vec3c E{}, Hs{};
  {
    const SpectralAB ab = dipole_ab(med, src, kx, ky, z);
    const bool above = z >= src.z0;
    const Vec3c& fv = above ? mv.fplus : mv.fminus;
    E = E + ab.A * fv + ab.B * mv.g;
    const Vec3c hh = ab.A * mv.g - ab.B * fv;
    Hs = above ? Hs + hh : Hs - hh;
  }
  {
    const cplx ph = std::exp(-J_UNIT * mv.kz * z);
    E = E + ph * (mc.A0 * mv.fplus + mc.B0 * mv.g);
    Hs = Hs + ph * (mc.A0 * mv.g - mc.B0 * mv.fplus);
  }
  if (with_strip) {
    if (z >= geom.a) {
      const cplx ph = std::exp(-J_UNIT * mv.kz * (z - geom.a));
      E = E + ph * (mc.A2 * mv.fplus + mc.B2 * mv.g);
      Hs = Hs + ph * (mc.A2 * mv.g - mc.B2 * mv.fplus);
    } else {
      const cplx ph = std::exp(J_UNIT * mv.kz * (z - geom.a));
      E = E + ph * (mc.A2 * mv.fminus + mc.B2 * mv.g);
      Hs = Hs - ph * (mc.A2 * mv.g - mc.B2 * mv.fminus);
    }
  }
  return {E, Hs};
}

// The direct strip radiation decays only algebraically in ky when the
// probe sits on (or near) the strip plane: with kz -> -j|ky| the e^{-j kz
// |z-a|} factor stops helping, and the Ey/Ez/H components fall off as
// slowly as ky^{-1/2}. Truncating that tail leaves a percent-level error
// pinned to the plane, so the leading large-ky form of the strip family is
// removed from the numeric integrand and its integral added back in closed
// form. The pieces are Laplace transforms of the Bessel current spectra,
//
//   int_0^inf J_nu(h t) e^{-p t} t^s dt,   s in {-1, 0, 1},  Re p >= 0,
//
// with r = sqrt(p^2 + h^2) - p:
//   s =  0:  (r/h)^nu / sqrt(p^2 + h^2)
//   s =  1:  (r/h)^nu (nu / (p^2+h^2) + p / (p^2+h^2)^{3/2})
//   s = -1:  (r/h)^nu / nu                (nu >= 1)
// The s = -1, nu = 0 case diverges at t = 0, so every subtracted term
// carries a smooth switch (1 - e^{-q t}); the switched nu = 0 integral is
// log((p + q + sqrt((p+q)^2+h^2)) / (p + sqrt(p^2+h^2))).
struct LaplaceBessel {
  cplx p, s;    // shift and sqrt(p^2 + h^2)
  cplx roh;     // (s - p)/h, |roh| <= 1
  LaplaceBessel(cplx p_, double h) : p(p_) {
    s = std::sqrt(p * p + h * h);
    roh = (s - p) / h;
  }
  cplx pw(int nu) const {
    cplx v = 1.0;
    for (int i = 0; i < nu; ++i) v *= roh;
    return v;
  }
  cplx f0(int nu) const { return pw(nu) / s; }
  cplx f1(int nu) const {
    return pw(nu) * (double(nu) / (s * s) + p / (s * s * s));
  }
  cplx fm1(int nu) const { return pw(nu) / double(nu); }  // nu >= 1
};

// Switched tail integrals of the current spectra for one coefficient set:
//   xf0  = int (1-e^{-qt}) e^{-pt} Kx~(sigma t) dt
//   xfm1 = the same with an extra 1/t
//   yf0  = int (1-e^{-qt}) e^{-pt} Ky~(sigma t) dt
//   yf1  = the same with an extra t
// Ky~ is reduced to pure Bessel terms through J_{m+1}(x)/x =
// (J_m(x) + J_{m+2}(x)) / (2(m+1)) before integrating.
struct StripTailSums {
  cplx xf0{}, xfm1{}, yf0{}, yf1{};
};

inline StripTailSums strip_tail_sums(const fullwave::ModeSolution& sol,
                                     double h, double sigma, cplx p,
                                     double q) {
  const LaplaceBessel A(p, h), B(p + q, h);
  StripTailSums out;
  const double pih = PI * h;
  cplx jm = 1.0;  // j^m
  for (size_t m = 0; m < sol.c.size(); ++m, jm *= J_UNIT) {
    const double sm = (sigma < 0.0 && m % 2 == 1) ? -1.0 : 1.0;
    const int nu = static_cast<int>(m);
    const cplx cc = pih * jm * sm * sol.c[m];
    if (cc != 0.0) {
      out.xf0 += cc * (A.f0(nu) - B.f0(nu));
      out.xfm1 += cc * (nu == 0 ? std::log((B.p + B.s) / (A.p + A.s))
                                : A.fm1(nu) - B.fm1(nu));
    }
    const cplx dd = 0.5 * pih * jm * sm * sol.d[m];
    if (dd != 0.0) {
      out.yf0 += dd * (A.f0(nu) + A.f0(nu + 2) - B.f0(nu) - B.f0(nu + 2));
      out.yf1 += dd * (A.f1(nu) + A.f1(nu + 2) - B.f1(nu) - B.f1(nu + 2));
    }
  }
  return out;
}

}  // namespace detail

// Spectral field at height z for one (kx, ky) and given current spectra.
// z = 0 is allowed (boundary diagnostics); the source and strip planes are
// rejected. At z between the planes the appropriate branches are selected.
inline SpectralField spectral_field(const Medium& med,
                                    const StripGeometry& geom,
                                    const DipoleSource& src, cplx kx,
                                    double ky, cplx Ktx, cplx Kty, double z,
                                    FieldParts parts = FieldParts::total) {
  detail::check_probe_planes(geom, src, z);
  SpectralField f = detail::spectral_field_scaled(med, geom, src, kx, ky, Ktx,
                                                  Kty, z, parts);
  f.H = f.H * (1.0 / med.eta);
  return f;
}

struct Probe {
  double x = 0.0, y = 0.0, z = 0.0;
};

struct FieldSample {
  Probe at;
  Vec3c E, H;
};

struct FieldParams {
  FieldParts parts = FieldParts::total;
  double rel_tol = 1e-6;
  // absolute quadrature floor as a fraction of the sampled spectral peak;
  // guards components that vanish by parity and can never meet rel_tol
  double abs_floor = 1e-11;
  int max_intervals = 4000;
  double ky_max = 0.0;  // 0: automatic decay cutoff per probe height
};

// ky range needed at height z: the slowest vertical decay of the selected
// families (40 e-foldings), floored by the propagating disc and capped by
// the current-spectrum resolution scale.
inline double ky_cutoff(const Medium& med, const StripGeometry& geom,
                        const DipoleSource& src, double z, FieldParts parts) {
  double dmin = std::min(std::abs(z - src.z0), z + src.z0);
  if (parts == FieldParts::total) dmin = std::min(dmin, std::abs(z - geom.a));
  const double base =
      std::max({200.0 / geom.h, 50.0 / geom.a, 100.0 * std::abs(med.k)});
  const double need =
      std::max(40.0 / std::max(dmin, 1e-12), 10.0 * std::abs(med.k));
  return std::min(base, need);
}

// Spatial E/H at probe points: for every contour node the ky spectrum is
// folded onto (0, inf) and integrated adaptively, then the node results are
// summed along the contour in fixed order. Probes sharing a height reuse
// one quadrature (the per-probe y only enters through phase factors).
inline std::vector<FieldSample> spatial_fields(
    const Medium& med, const StripGeometry& geom, const DipoleSource& src,
    const transform::KxContour& ct,
    const std::vector<fullwave::ModeSolution>& sols,
    std::span<const Probe> probes, const FieldParams& par = {}) {
  const bool with_strip = par.parts == FieldParts::total;
  if (with_strip) {
    if (sols.size() != ct.nodes.size())
      throw std::invalid_argument(
          "spatial_fields: solution count does not match contour");
    const size_t M = sols.empty() ? 0 : sols[0].c.size();
    for (const auto& s : sols)
      if (s.c.size() != M || s.d.size() != M)
        throw std::invalid_argument("spatial_fields: ragged coefficients");
  }
  for (const Probe& pr : probes) {
    detail::check_probe_planes(geom, src, pr.z);
    if (std::abs(pr.x) > ct.x_max * (1.0 + 1e-12))
      throw ConfigError("spatial_fields: probe |x| exceeds the contour range");
  }

  std::vector<FieldSample> out(probes.size());
  for (size_t i = 0; i < probes.size(); ++i) out[i].at = probes[i];

  std::map<double, std::vector<size_t>> groups;
  for (size_t i = 0; i < probes.size(); ++i) groups[probes[i].z].push_back(i);

  for (const auto& [z, idx] : groups) {
    const double kymax =
        par.ky_max > 0.0 ? par.ky_max : ky_cutoff(med, geom, src, z, par.parts);
    const int G = static_cast<int>(idx.size());
    const int ncomp = 6 * G;
    std::vector<cplx> inner(ncomp);
    std::vector<Vec3c> Eacc(G), Hacc(G);
    const double dza = std::abs(z - geom.a);
    const double zsgn = z >= geom.a ? 1.0 : -1.0;
    const cplx k2 = med.k * med.k;
    const cplx epref = J_UNIT * med.eta / (2.0 * med.k);

    for (size_t node = 0; node < ct.nodes.size(); ++node) {
      const cplx kx = ct.nodes[node];
      // low-ky onset of the subtracted strip tail (see detail above)
      const double q =
          1.0 / std::max({std::abs(kx), std::abs(med.k), 2.0 / geom.h});
      quadrature::VectorIntegrand eval = [&](double ky, std::span<cplx> oc) {
        cplx ktx_p{}, kty_p{}, ktx_m{}, kty_m{};
        if (with_strip) {
          std::tie(ktx_p, kty_p) =
              fullwave::spectral_currents(sols[node], geom.h, ky);
          std::tie(ktx_m, kty_m) =
              fullwave::spectral_currents(sols[node], geom.h, -ky);
        }
        const SpectralField fp = detail::spectral_field_scaled(
            med, geom, src, kx, ky, ktx_p, kty_p, z, par.parts);
        const SpectralField fm = detail::spectral_field_scaled(
            med, geom, src, kx, -ky, ktx_m, kty_m, z, par.parts);
        // leading large-ky form of the direct strip family, per fold side
        cplx ax_p{}, ay_p{}, az_p{}, hx_p{}, hy_p{}, hz_p{};
        cplx ax_m{}, ay_m{}, az_m{}, hx_m{}, hy_m{}, hz_m{};
        double esub = 0.0;
        if (with_strip) {
          esub = std::exp(-ky * dza) * -std::expm1(-q * ky);
          ax_p = epref * ((kx * kx - k2) * ktx_p / ky + kx * kty_p);
          ax_m = epref * ((kx * kx - k2) * ktx_m / ky - kx * kty_m);
          ay_p = epref * (kx * ktx_p + ky * kty_p);
          ay_m = epref * (-kx * ktx_m + ky * kty_m);
          az_p = zsgn * (med.eta / (2.0 * med.k)) * (kx * ktx_p + ky * kty_p);
          az_m = zsgn * (med.eta / (2.0 * med.k)) * (kx * ktx_m - ky * kty_m);
          hx_p = zsgn * (med.eta / 2.0) * kty_p;
          hx_m = zsgn * (med.eta / 2.0) * kty_m;
          hy_p = -zsgn * (med.eta / 2.0) * ktx_p;
          hy_m = -zsgn * (med.eta / 2.0) * ktx_m;
          hz_p = J_UNIT * (med.eta / 2.0) * ktx_p;
          hz_m = -J_UNIT * (med.eta / 2.0) * ktx_m;
        }
        for (int g = 0; g < G; ++g) {
          const double y = probes[idx[g]].y;
          const cplx pp = std::exp(-J_UNIT * ky * y);
          const cplx pm = std::exp(J_UNIT * ky * y);
          oc[6 * g + 0] = fp.E.x * pp + fm.E.x * pm - esub * (ax_p * pp + ax_m * pm);
          oc[6 * g + 1] = fp.E.y * pp + fm.E.y * pm - esub * (ay_p * pp + ay_m * pm);
          oc[6 * g + 2] = fp.E.z * pp + fm.E.z * pm - esub * (az_p * pp + az_m * pm);
          oc[6 * g + 3] = fp.H.x * pp + fm.H.x * pm - esub * (hx_p * pp + hx_m * pm);
          oc[6 * g + 4] = fp.H.y * pp + fm.H.y * pm - esub * (hy_p * pp + hy_m * pm);
          oc[6 * g + 5] = fp.H.z * pp + fm.H.z * pm - esub * (hz_p * pp + hz_m * pm);
        }
      };

      // absolute tolerance floor from a coarse scan of the integrand peak
      double peak = 0.0;
      std::vector<cplx> buf(ncomp);
      for (int s = 0; s < 12; ++s) {
        const double ky = kymax * std::pow(10.0, -3.0 * (11 - s) / 11.0);
        eval(ky, buf);
        for (const cplx& v : buf) peak = std::max(peak, std::abs(v));
      }
      quadrature::Options opts;
      opts.rel_tol = par.rel_tol;
      opts.abs_tol = std::max(par.abs_floor * peak * kymax, 1e-300);
      opts.max_intervals = par.max_intervals;
      const std::vector<double> pts =
          fullwave::detail::ky_breakpoints(med.k, kx, geom.h, kymax);
      quadrature::integrate_vector(eval, ncomp, pts, opts, inner);

      // add back the closed-form integral of the subtracted strip tail
      if (with_strip) {
        for (int g = 0; g < G; ++g) {
          for (double sigma : {1.0, -1.0}) {
            const cplx p{dza, sigma * probes[idx[g]].y};
            const auto S =
                detail::strip_tail_sums(sols[node], geom.h, sigma, p, q);
            inner[6 * g + 0] +=
                epref * ((kx * kx - k2) * S.xfm1 + sigma * kx * S.yf0);
            inner[6 * g + 1] += epref * (sigma * kx * S.xf0 + S.yf1);
            inner[6 * g + 2] += zsgn * (med.eta / (2.0 * med.k)) *
                                (kx * S.xf0 + sigma * S.yf1);
            inner[6 * g + 3] += zsgn * (med.eta / 2.0) * S.yf0;
            inner[6 * g + 4] += -zsgn * (med.eta / 2.0) * S.xf0;
            inner[6 * g + 5] += J_UNIT * sigma * (med.eta / 2.0) * S.xf0;
          }
        }
      }

      for (int g = 0; g < G; ++g) {
        const cplx cw =
            ct.weights[node] *
            std::exp(-J_UNIT * kx * probes[idx[g]].x);
        Eacc[g] = Eacc[g] + cw * Vec3c{inner[6 * g + 0], inner[6 * g + 1],
                                       inner[6 * g + 2]};
        Hacc[g] = Hacc[g] + cw * Vec3c{inner[6 * g + 3], inner[6 * g + 4],
                                       inner[6 * g + 5]};
      }
    }
    const cplx s = 1.0 / (4.0 * PI * PI);
    for (int g = 0; g < G; ++g) {
      out[idx[g]].E = Eacc[g] * s;
      out[idx[g]].H = Hacc[g] * (s / med.eta);
    }
  }
  return out;
}

}  // namespace stripwave::fields
