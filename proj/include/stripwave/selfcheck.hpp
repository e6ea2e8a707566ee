#pragma once

// Built-in numerical health checks: Bessel-product orthogonality identities
// evaluated with the production quadrature engine, recomputation of the
// pinned J_0^2 tail constant, and agreement of the two Bessel evaluation
// branches near their crossover. Run by the CLI self-test and reused by the
// test suite.

#include <cstdio>
#include <string>
#include <vector>

#include "stripwave/fields.hpp"
#include "stripwave/fullwave.hpp"
#include "stripwave/quadrature.hpp"
#include "stripwave/specfun.hpp"

namespace stripwave::selfcheck {

inline constexpr double IDENTITY_TOL = 1e-7;
inline constexpr double TAIL_CONSTANT_TOL = 1e-8;
inline constexpr double OVERLAP_TOL = 1e-11;
inline constexpr double LAPLACE_TOL = 1e-9;

struct IdentityResult {
  int order_a = 0, order_b = 0;
  double expected = 0.0;
  double computed = 0.0;
  double deviation = 0.0;
};

// int_0^inf J_a(u) J_b(u) / u du over all equal-parity order pairs drawn from
// (2m, 2n) and (2m+1, 2n+1) with m <= n, m + n <= 6; the (0,0) even pair is
// excluded (that integral diverges). Expected values: delta_ab / (2a).
inline std::vector<IdentityResult> identity_suite(double K = 200.0) {
  quadrature::Options opts;
  opts.abs_tol = 1e-12;
  opts.rel_tol = 1e-11;
  std::vector<IdentityResult> out;
  auto run_pair = [&](int a, int b) {
    auto f = [&](double u) -> cplx {
      return specfun::bessel_j(a, u) * specfun::bessel_j(b, u) / u;
    };
    // integrand -> 0 as u -> 0 for a+b >= 2 and nodes are interior, so the
    // lower endpoint can be 0 exactly
    const double pts[] = {0.0, K};
    quadrature::VectorIntegrand vf = [&](double u, std::span<cplx> o) {
      o[0] = f(u);
    };
    cplx head;
    quadrature::integrate_vector(vf, 1, pts, opts, std::span<cplx>(&head, 1));
    const double value = head.real() + specfun::bessel_product_tail(a, b, K);
    const double expected = (a == b) ? 1.0 / (2.0 * a) : 0.0;
    out.push_back({a, b, expected, value, std::abs(value - expected)});
  };
  for (int m = 0; m <= 6; ++m)
    for (int n = m; m + n <= 6; ++n) {
      if (!(m == 0 && n == 0)) run_pair(2 * m, 2 * n);
      run_pair(2 * m + 1, 2 * n + 1);
    }
  return out;
}

// Recompute int_1^inf J_0^2(u)/u du by adaptive quadrature to K plus the
// asymptotic remainder; returns (recomputed, |recomputed - pinned|).
inline std::pair<double, double> tail_constant_check(double K = 200.0) {
  quadrature::Options opts;
  opts.abs_tol = 1e-13;
  opts.rel_tol = 1e-12;
  quadrature::VectorIntegrand vf = [](double u, std::span<cplx> o) {
    const double j0 = specfun::bessel_j(0, u);
    o[0] = j0 * j0 / u;
  };
  const double pts[] = {1.0, K};
  cplx head;
  quadrature::integrate_vector(vf, 1, pts, opts, std::span<cplx>(&head, 1));
  const double value = head.real() + specfun::bessel_product_tail(0, 0, K);
  return {value, std::abs(value - specfun::j0_squared_tail_constant())};
}

// Compare the ascending series against the backward-recurrence branch on a
// band around the internal crossover; returns the worst absolute deviation.
inline double bessel_branch_overlap() {
  double worst = 0.0;
  for (double x : {0.45, 0.48, 0.5, 0.52, 0.55, 0.7, 1.0}) {
    for (int n = 0; n <= 12; ++n) {
      const double a = specfun::detail::bessel_series(n, x);
      const double b = specfun::bessel_j(n, x);
      worst = std::max(worst, std::abs(a - b));
    }
  }
  return worst;
}

// Closed-form switched Laplace transforms of the strip current spectra
// against direct adaptive quadrature, for a fixed synthetic coefficient set
// and both spectral fold directions; returns the worst relative deviation.
inline double laplace_bessel_check() {
  fullwave::ModeSolution sol;
  sol.c = {cplx{0.7, -0.2}, cplx{-0.3, 0.5}};
  sol.d = {cplx{0.1, 0.9}, cplx{0.4, -0.15}};
  const double h = 0.1, q = 0.8;
  quadrature::Options opts;
  opts.rel_tol = 1e-13;
  opts.abs_tol = 1e-16;
  const double pts[] = {0.0, 1.0 / h, 40.0, 400.0};
  double worst = 0.0;
  for (const double sigma : {1.0, -1.0}) {
    const cplx p{0.25, sigma * 0.06};
    quadrature::VectorIntegrand f = [&](double t, std::span<cplx> oc) {
      const auto [ktx, kty] = fullwave::spectral_currents(sol, h, sigma * t);
      const cplx w = -std::expm1(-q * t) * std::exp(-p * t);
      oc[0] = w * ktx;
      oc[1] = w * ktx / t;
      oc[2] = w * kty;
      oc[3] = w * kty * t;
    };
    std::vector<cplx> vals(4);
    quadrature::integrate_vector(f, 4, pts, opts, vals);
    const auto S = fields::detail::strip_tail_sums(sol, h, sigma, p, q);
    const cplx closed[] = {S.xf0, S.xfm1, S.yf0, S.yf1};
    for (int i = 0; i < 4; ++i)
      worst = std::max(worst, std::abs(closed[i] - vals[i]) / std::abs(vals[i]));
  }
  return worst;
}

struct SelfTestReport {
  double identity_worst = 0.0;
  double tail_constant_dev = 0.0;
  double overlap_worst = 0.0;
  double laplace_worst = 0.0;
  bool pass = false;
  std::string summary;
};

inline SelfTestReport run_selftest() {
  SelfTestReport r;
  for (const auto& c : identity_suite())
    r.identity_worst = std::max(r.identity_worst, c.deviation);
  r.tail_constant_dev = tail_constant_check().second;
  r.overlap_worst = bessel_branch_overlap();
  r.laplace_worst = laplace_bessel_check();
  r.pass = r.identity_worst < IDENTITY_TOL &&
           r.tail_constant_dev < TAIL_CONSTANT_TOL &&
           r.overlap_worst < OVERLAP_TOL && r.laplace_worst < LAPLACE_TOL;
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "identity_worst=%.3e tail_constant_dev=%.3e overlap_worst=%.3e "
                "laplace_worst=%.3e : %s",
                r.identity_worst, r.tail_constant_dev, r.overlap_worst,
                r.laplace_worst, r.pass ? "pass" : "FAIL");
  r.summary = buf;
  return r;
}

}  // namespace stripwave::selfcheck
