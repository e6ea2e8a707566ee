#pragma once

// Adaptive Gauss-Kronrod (G7/K15) quadrature for complex vector-valued
// integrands over finite unions of intervals, plus the bookkeeping used to
// truncate semi-infinite Bessel-product integrals: subtract the slowly
// decaying large-argument part inside the finite integral and add its
// closed-form value back.

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "stripwave/common.hpp"
#include "stripwave/specfun.hpp"

namespace stripwave::quadrature {

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_intervals = 4000;
};

// Writes all components at abscissa x into the provided span.
using VectorIntegrand = std::function<void(double, std::span<cplx>)>;

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
inline constexpr double XGK[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double WGK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double WG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double score;                // cached refinement priority
  std::vector<cplx> value;     // K15 result per component
  std::vector<double> error;   // |K15 - G7| per component
};

// Apply G7/K15 on [a,b]; fills panel.value/error. Scratch spans must hold
// ncomp entries each; `accum` collects 15 evaluations worth of data.
inline void gauss_kronrod(const VectorIntegrand& f, int ncomp, Panel& p,
                          std::vector<cplx>& fbuf, std::vector<cplx>& kres,
                          std::vector<cplx>& gres) {
  const double c = 0.5 * (p.a + p.b);
  const double hw = 0.5 * (p.b - p.a);
  std::fill(kres.begin(), kres.end(), cplx{});
  std::fill(gres.begin(), gres.end(), cplx{});
  for (int j = 0; j < 15; ++j) {
    const int idx = j < 8 ? j : 14 - j;           // mirror for x > c
    const double sign = j < 8 ? -1.0 : 1.0;
    const double x = c + sign * hw * XGK[idx];
    f(x, std::span<cplx>(fbuf.data(), ncomp));
    for (int q = 0; q < ncomp; ++q) {
      kres[q] += WGK[idx] * fbuf[q];
      if (idx % 2 == 1) gres[q] += WG[idx / 2] * fbuf[q];
    }
  }
  p.value.resize(ncomp);
  p.error.resize(ncomp);
  for (int q = 0; q < ncomp; ++q) {
    p.value[q] = hw * kres[q];
    p.error[q] = hw * std::abs(kres[q] - gres[q]);
  }
}

}  // namespace detail

// Adaptive integration of `f` over the segments defined by consecutive
// `points` entries (sorted ascending). Converged when, for every component,
// the summed error estimate is below max(abs_tol, rel_tol * |integral|).
// Throws ConvergenceError (carrying the worst component) on panel exhaustion.
inline void integrate_vector(const VectorIntegrand& f, int ncomp,
                             std::span<const double> points,
                             const Options& opts, std::span<cplx> result) {
  if (ncomp < 1 || static_cast<int>(result.size()) < ncomp)
    throw std::invalid_argument("integrate_vector: bad component count");
  if (points.size() < 2)
    throw std::invalid_argument("integrate_vector: need at least one segment");
  std::vector<detail::Panel> panels;
  std::vector<cplx> fbuf(ncomp), kres(ncomp), gres(ncomp);
  std::vector<cplx> total(ncomp);
  std::vector<double> errsum(ncomp), tol(ncomp);

  auto push_panel = [&](double a, double b) {
    detail::Panel p{a, b, 0.0, {}, {}};
    detail::gauss_kronrod(f, ncomp, p, fbuf, kres, gres);
    for (int q = 0; q < ncomp; ++q) {
      total[q] += p.value[q];
      errsum[q] += p.error[q];
    }
    panels.push_back(std::move(p));
  };

  for (size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i] < points[i + 1]))
      throw std::invalid_argument("integrate_vector: points not increasing");
    push_panel(points[i], points[i + 1]);
  }

  auto rescore = [&](detail::Panel& p) {
    double s = 0.0;
    for (int q = 0; q < ncomp; ++q) s = std::max(s, p.error[q] / tol[q]);
    p.score = s;
  };

  while (true) {
    bool converged = true;
    for (int q = 0; q < ncomp; ++q) {
      tol[q] = std::max(opts.abs_tol, opts.rel_tol * std::abs(total[q]));
      if (errsum[q] > tol[q]) converged = false;
    }
    if (converged) break;
    if (static_cast<int>(panels.size()) >= opts.max_intervals) {
      int worst = 0;
      double ratio = 0.0;
      for (int q = 0; q < ncomp; ++q)
        if (errsum[q] / tol[q] > ratio) ratio = errsum[q] / tol[q], worst = q;
      throw ConvergenceError("integrate_vector: panel budget exhausted",
                             total[worst], errsum[worst]);
    }
    for (auto& p : panels) rescore(p);
    auto it = std::max_element(
        panels.begin(), panels.end(),
        [](const auto& x, const auto& y) { return x.score < y.score; });
    detail::Panel parent = std::move(*it);
    panels.erase(it);
    for (int q = 0; q < ncomp; ++q) {
      total[q] -= parent.value[q];
      errsum[q] -= parent.error[q];
    }
    const double mid = 0.5 * (parent.a + parent.b);
    push_panel(parent.a, mid);
    push_panel(mid, parent.b);
  }
  for (int q = 0; q < ncomp; ++q) result[q] = total[q];
}

// Large-k_y behaviour of a spectral kernel component:
//   s(k) = amplitude * J_a(h k) J_b(h k) / k   for k >= start.
// integrate_to_infinity subtracts s from the integrand on the finite range
// and adds back amplitude * int J_a J_b / u du in closed form
// (1/(a+b) for a == b from the orthogonality value 1/(2a); zero otherwise;
// the (0,0) pair starts at k = 1/h and adds the pinned J_0^2 tail constant).
struct TailSubtractionPlan {
  int a = 0, b = 0;
  double h = 1.0;
  cplx amplitude{};
  double start = 0.0;

  void validate() const {
    if (a < 0 || b < 0 || (a + b) % 2 != 0)
      throw std::invalid_argument("tail plan: orders must share parity");
    if (!(h > 0.0)) throw std::invalid_argument("tail plan: h > 0 required");
    if (a == 0 && b == 0) {
      if (std::abs(start * h - 1.0) > 1e-12)
        throw std::invalid_argument("tail plan: (0,0) requires start = 1/h");
    } else if (start != 0.0) {
      throw std::invalid_argument("tail plan: nonzero start only for (0,0)");
    }
  }

  cplx subtrahend(double k) const {
    if (k < start || k <= 0.0) return {};
    return amplitude * specfun::bessel_j(a, h * k) * specfun::bessel_j(b, h * k) / k;
  }

  cplx add_back() const {
    if (a == 0 && b == 0)
      return amplitude * specfun::j0_squared_tail_constant();
    if (a == b) return amplitude / (2.0 * a);
    return {};
  }
};

// int_0^inf f(k) dk with f ~ s(k) at large k: integrates [0, k_max] of
// f - s adaptively (honouring extra interior breakpoints) and adds the
// closed-form tail. The residual beyond k_max must be negligible at the
// requested tolerance; choosing k_max is the caller's job (select_kymax).
inline cplx integrate_spectral(const std::function<cplx(double)>& f,
                               double k_max, const TailSubtractionPlan& plan,
                               const Options& opts,
                               std::span<const double> extra_breaks = {}) {
  plan.validate();
  std::vector<double> pts{0.0};
  if (plan.start > 0.0 && plan.start < k_max) pts.push_back(plan.start);
  for (double b : extra_breaks)
    if (b > 0.0 && b < k_max) pts.push_back(b);
  pts.push_back(k_max);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  VectorIntegrand g = [&](double k, std::span<cplx> out) {
    out[0] = f(k) - plan.subtrahend(k);
  };
  cplx res;
  integrate_vector(g, 1, pts, opts, std::span<cplx>(&res, 1));
  return res + plan.add_back();
}

// Truncation point for the k_y integrals. The exponentially damped parts die
// within a few multiples of 1/a and 1/|a - z0|; what remains decays like
// 1/k_y^2 after tail subtraction, so the cut scales with the strip/height
// geometry and tightens with the cube root of the accuracy demand.
inline double select_kymax(double h, double a, cplx k, double rel_target) {
  if (!(h > 0.0) || !(a > 0.0))
    throw std::invalid_argument("select_kymax: h > 0 and a > 0 required");
  if (!(rel_target > 0.0))
    throw std::invalid_argument("select_kymax: rel_target > 0 required");
  const double base =
      std::max({200.0 / h, 50.0 / a, 100.0 * std::abs(k)});
  const double boost = std::max(1.0, std::cbrt(1e-6 / rel_target));
  return base * boost;
}

}  // namespace stripwave::quadrature
