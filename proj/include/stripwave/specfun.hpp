#pragma once

// Bessel functions of the first kind (real argument, integer order) plus the
// closed-form Laplace/Bessel integrals and Bessel-product tail integrals used
// when slowly decaying parts of semi-infinite spectral integrals are removed
// and added back analytically.

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>

#include "stripwave/common.hpp"

namespace stripwave::specfun {

inline constexpr int MAX_ORDER = 64;
inline constexpr double MAX_ARGUMENT = 1.0e4;
inline constexpr double SERIES_CUTOFF = 0.5;

namespace detail {

// Ascending power series, accurate for |x| < ~2; used below SERIES_CUTOFF.
inline double bessel_series(int n, double x) {
  const double hx = 0.5 * x;
  double t = 1.0;
  for (int i = 1; i <= n; ++i) t *= hx / i;
  double sum = t;
  const double q = -hx * hx;
  for (int k = 1; k <= 30; ++k) {
    t *= q / (k * (n + k));
    sum += t;
    if (std::abs(t) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

inline void check_args(int nmax, double x) {
  if (nmax < 0 || nmax > MAX_ORDER)
    throw std::invalid_argument("bessel_j: order out of range 0.." +
                                std::to_string(MAX_ORDER));
  if (!(std::abs(x) <= MAX_ARGUMENT))
    throw std::invalid_argument("bessel_j: |x| exceeds supported range");
}

}  // namespace detail

// J_0(x)..J_nmax(x) in one pass. Backward (Miller) recurrence with series
// normalisation sum J_0 + 2 sum J_2k = 1; plain power series for small |x|.
// Absolute accuracy ~1e-14 over the supported range.
inline void bessel_j_batch(int nmax, double x, std::span<double> out) {
  detail::check_args(nmax, x);
  if (static_cast<int>(out.size()) < nmax + 1)
    throw std::invalid_argument("bessel_j_batch: output span too small");
  const double ax = std::abs(x);
  if (ax == 0.0) {
    out[0] = 1.0;
    for (int i = 1; i <= nmax; ++i) out[i] = 0.0;
    return;
  }
  if (ax < SERIES_CUTOFF) {
    for (int n = 0; n <= nmax; ++n) out[n] = detail::bessel_series(n, ax);
  } else {
    // Start far enough above max(order, turning point) that the admixture of
    // the irregular solution decays below double precision on the way down.
    const int start =
        std::max(nmax, static_cast<int>(ax)) + 25 +
        static_cast<int>(8.0 * std::cbrt(ax));
    constexpr double BIG = 1e250;
    double jp = 0.0;   // J~_{m+1}
    double jc = 1e-30; // J~_m
    double even_sum = 0.0;
    for (int m = start; m >= 1; --m) {
      const double jm = (2.0 * m / ax) * jc - jp;
      jp = jc;
      jc = jm;
      const int ord = m - 1;
      if (ord <= nmax) out[ord] = jc;
      if (ord >= 2 && ord % 2 == 0) even_sum += 2.0 * jc;
      if (std::abs(jc) > BIG) {
        const double inv = 1.0 / BIG;
        jp *= inv;
        jc *= inv;
        even_sum *= inv;
        for (int i = std::max(ord, 0); i <= nmax; ++i) out[i] *= inv;
      }
    }
    const double norm = 1.0 / (jc + even_sum);  // jc holds J~_0 here
    for (int i = 0; i <= nmax; ++i) out[i] *= norm;
  }
  if (x < 0.0)
    for (int i = 1; i <= nmax; i += 2) out[i] = -out[i];
}

inline double bessel_j(int n, double x) {
  double buf[MAX_ORDER + 1] = {};
  bessel_j_batch(n, x, std::span<double>(buf, n + 1));
  return buf[n];
}

// J_n(x)/x for n >= 1, stable through x = 0 (removable there).
inline double bessel_j_over_x(int n, double x) {
  if (n < 1) throw std::invalid_argument("bessel_j_over_x: requires n >= 1");
  if (std::abs(x) >= 0.1) return bessel_j(n, x) / x;
  // series for J_n(x)/x = x^{n-1}/(2^n n!) * sum_k (-x^2/4)^k n!/(k!(n+k)!)
  double t = 0.5;
  for (int i = 2; i <= n; ++i) t *= 0.5 * x / i;
  double sum = t;
  const double q = -0.25 * x * x;
  for (int k = 1; k <= 12; ++k) {
    t *= q / (k * (n + k));
    sum += t;
  }
  return sum;
}

namespace detail {
inline cplx pow_int(cplx z, int m) {
  cplx r{1.0, 0.0};
  for (int i = 0; i < m; ++i) r *= z;
  return r;
}
inline void check_laplace(cplx b, double h) {
  if (!(b.real() > 0.0))
    throw std::invalid_argument("laplace_bessel: requires Re{b} > 0");
  if (!(h > 0.0)) throw std::invalid_argument("laplace_bessel: requires h > 0");
}
}  // namespace detail

// int_0^inf e^{-b t} J_m(t h) dt = (sqrt(b^2+h^2) - b)^m / (h^m sqrt(b^2+h^2)),
// Re{b} > 0. The difference is formed as h^2/(s+b) to avoid cancellation.
inline cplx laplace_bessel_0(cplx b, double h, int m) {
  detail::check_laplace(b, h);
  if (m < 0) throw std::invalid_argument("laplace_bessel_0: m >= 0");
  const cplx s = std::sqrt(b * b + h * h);
  const cplx r = h / (s + b);
  return detail::pow_int(r, m) / s;
}

// int_0^inf e^{-b t} J_m(t h) / t dt = ((sqrt(b^2+h^2) - b)/h)^m / m, m >= 1.
inline cplx laplace_bessel_over_k(cplx b, double h, int m) {
  detail::check_laplace(b, h);
  if (m < 1) throw std::invalid_argument("laplace_bessel_over_k: m >= 1");
  const cplx s = std::sqrt(b * b + h * h);
  const cplx r = h / (s + b);
  return detail::pow_int(r, m) / static_cast<double>(m);
}

// int_0^inf (e^{-b1 t} - e^{-b2 t}) J_0(t h)/t dt
//   = ln[(b2 + sqrt(b2^2+h^2)) / (b1 + sqrt(b1^2+h^2))]
// (the m = 0 counterpart of the previous form; each term alone diverges).
inline cplx laplace_bessel_over_k_diff(cplx b1, cplx b2, double h) {
  detail::check_laplace(b1, h);
  detail::check_laplace(b2, h);
  const cplx s1 = std::sqrt(b1 * b1 + h * h);
  const cplx s2 = std::sqrt(b2 * b2 + h * h);
  return std::log((b2 + s2) / (b1 + s1));
}

// Pinned value of int_1^inf J_0^2(u)/u du.
constexpr double j0_squared_tail_constant() { return 0.3438831082; }

// int_K^inf J_0^2(u)/u du, from integrating the large-argument expansion
// J_0^2(u) = (1/pi u)[1 + sin 2u - cos(2u)/(4u) + (15 sin(2u)/8 - 1/8)/u^2 + ..]
// termwise; error O(K^-4). Intended for K >= ~60.
inline double j0_squared_tail(double K) {
  if (!(K >= 50.0))
    throw std::invalid_argument("j0_squared_tail: requires K >= 50");
  const double s2 = std::sin(2.0 * K), c2 = std::cos(2.0 * K);
  return (1.0 / PI) *
         (1.0 / K + c2 / (2.0 * K * K) + (0.625 * s2 - 1.0 / 24.0) / (K * K * K));
}

// int_K^inf J_mu(u) J_nu(u) / u du for mu, nu of equal parity.
// mu != nu: exact Lommel form K (J_mu J_nu' - J_mu' J_nu)/(mu^2 - nu^2).
// mu == nu: upward recurrence T_{v+1} = (2v T_v + J_v^2 + J_{v+1}^2)/(2(v+1))
// (from d/du[J_v^2 + J_{v+1}^2]), seeded with the asymptotic J_0^2 tail.
inline double bessel_product_tail(int mu, int nu, double K) {
  if (mu < 0 || nu < 0 || mu > MAX_ORDER || nu > MAX_ORDER)
    throw std::invalid_argument("bessel_product_tail: order out of range");
  if ((mu + nu) % 2 != 0)
    throw std::invalid_argument("bessel_product_tail: orders must share parity");
  if (!(K >= 60.0))
    throw std::invalid_argument("bessel_product_tail: requires K >= 60");
  const int top = std::max(mu, nu) + 1;
  double jv[MAX_ORDER + 2];
  bessel_j_batch(top, K, std::span<double>(jv, top + 1));
  if (mu != nu) {
    auto deriv = [&](int n) {
      return n == 0 ? -jv[1] : 0.5 * (jv[n - 1] - jv[n + 1]);
    };
    const double w = jv[mu] * deriv(nu) - deriv(mu) * jv[nu];
    return K * w / (static_cast<double>(mu) * mu - static_cast<double>(nu) * nu);
  }
  double t = j0_squared_tail(K);
  for (int v = 0; v < mu; ++v)
    t = (2.0 * v * t + jv[v] * jv[v] + jv[v + 1] * jv[v + 1]) / (2.0 * (v + 1));
  return t;
}

}  // namespace stripwave::specfun
