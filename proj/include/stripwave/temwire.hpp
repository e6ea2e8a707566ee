#pragma once

// Analytic transmission-line estimate of the current a nearby electric
// dipole launches on a thin horizontal wire above a ground plane, keeping
// only the TEM mode of the wire-over-ground line. Used as an independent
// cross-check for the narrow-strip solver (a strip of half-width h behaves
// like a wire of radius h/2).
//
// The TEM mode of a wire of radius s with its axis at height a is the
// electrostatic field of a line charge at z = +zc and its negative image at
// z = -zc, where zc = sqrt(a^2 - s^2) < a: the wire surface is the
// equipotential circle of that pair with potential acosh(a/s), and the
// ground plane is the zero equipotential. Reciprocity then gives the
// launched current as the dipole moment projected on the mode pattern at
// the source point, over twice the line's potential normalisation, with
// waves e^{-jk|x-x0|} running symmetrically away from the source plane.

#include <cmath>
#include <complex>

#include "stripwave/common.hpp"
#include "stripwave/medium.hpp"

namespace stripwave::temwire {

struct WireGeometry {
  double radius = 0.0;  // wire radius s
  double height = 0.0;  // axis height a above the ground plane

  // equivalent wire for a zero-thickness strip of half-width h
  static WireGeometry from_strip(const StripGeometry& geom) {
    return {geom.h / 2.0, geom.a};
  }

  void validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius))
      throw ConfigError("wire: radius must be positive and finite");
    if (!(height > radius) || !std::isfinite(height))
      throw ConfigError("wire: axis height must exceed the radius");
  }

  // height of the electrical axis (the line-charge position)
  double charge_height() const {
    return std::sqrt(height * height - radius * radius);
  }
};

// Transverse TEM mode pattern e(y, z): unit-line-charge field at z = +zc
// minus its image at z = -zc. Purely transverse (no x component); its
// tangential part vanishes on the ground plane z = 0.
struct ModePattern {
  double ey = 0.0;
  double ez = 0.0;
};

inline ModePattern mode_pattern(const WireGeometry& wire, double y, double z) {
  wire.validate();
  const double zc = wire.charge_height();
  const double rm2 = y * y + (z - zc) * (z - zc);
  const double rp2 = y * y + (z + zc) * (z + zc);
  if (rm2 <= 0.0 || rp2 <= 0.0)
    throw ConfigError("wire: field point sits on a line-charge axis");
  return {y / rm2 - y / rp2, (z - zc) / rm2 - (z + zc) / rp2};
}

// Current of the outgoing TEM waves at longitudinal position x, for a unit
// time-harmonic dipole p at (x0, y0, z0) with orientation src.axis.
// A longitudinal (x-directed) dipole does not couple to the transverse
// mode pattern and launches nothing. Exactly at x == x0 the two outgoing
// waves cancel and the value is zero.
inline cplx tem_current(const Medium& med, const WireGeometry& wire,
                        const DipoleSource& src, double x) {
  wire.validate();
  if (!(src.z0 > 0.0))
    throw ConfigError("wire: source must sit above the ground plane");
  const double dy = src.y0, dz = src.z0 - wire.height;
  if (dy * dy + dz * dz <= wire.radius * wire.radius)
    throw ConfigError("wire: source sits inside the wire");

  double coupling = 0.0;
  if (src.axis != 0) {
    const ModePattern pat = mode_pattern(wire, src.y0, src.z0);
    coupling = src.axis == 1 ? pat.ey : pat.ez;
  }
  const double dx = x - src.x0;
  const double sg = dx > 0.0 ? 1.0 : (dx < 0.0 ? -1.0 : 0.0);
  const double norm = 2.0 * std::acosh(wire.height / wire.radius);
  return -sg * J_UNIT * med.omega * src.p * coupling / norm *
         std::exp(-J_UNIT * med.k * std::abs(dx));
}

}  // namespace stripwave::temwire
