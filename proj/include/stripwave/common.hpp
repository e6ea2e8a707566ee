#pragma once

// Shared basics: complex alias, physical constants, error types.
//
// Conventions used throughout the library:
//   * time dependence exp(+j w t); lossy media have Im{eps} < 0, Im{mu} < 0
//   * forward transform  F(kx,ky) = Int f(x,y) exp(+j(kx x + ky y)) dx dy
//   * inverse transform  f(x,y) = 1/(4 pi^2) Int F exp(-j(kx x + ky y)) dkx dky

#include <complex>
#include <stdexcept>
#include <string>

namespace stripwave {

using cplx = std::complex<double>;

inline constexpr cplx J_UNIT{0.0, 1.0};

inline constexpr double PI = 3.14159265358979323846;
inline constexpr double EPS0 = 8.8541878128e-12;  // F/m
inline constexpr double MU0 = 1.25663706212e-6;   // H/m

// Invalid or inconsistent user input (bad config values, bad geometry).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical routine failed to reach its tolerance. Carries the best
// estimate obtained and an error bound so callers can report diagnostics.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, cplx best, double bound)
      : std::runtime_error(what), best_estimate(best), error_bound(bound) {}
  cplx best_estimate{};
  double error_bound{};
};

struct Vec3c {
  cplx x{}, y{}, z{};

  Vec3c operator+(const Vec3c& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3c operator-(const Vec3c& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3c operator*(cplx s) const { return {x * s, y * s, z * s}; }
};

inline Vec3c operator*(cplx s, const Vec3c& v) { return v * s; }

// Unconjugated dot product (the bilinear form used in the spectral algebra).
inline cplx dot(const Vec3c& a, const Vec3c& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

}  // namespace stripwave
