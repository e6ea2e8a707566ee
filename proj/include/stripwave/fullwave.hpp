#pragma once

// Spectral-domain Galerkin solution for the surface current on a conducting
// strip (|y| <= h, z = a) over a ground plane (z = 0), excited by a point
// dipole. At each longitudinal wavenumber kx the strip current transforms
//
//   Kx~(ky) = pi h sum_m j^m c_m J_m(ky h)
//   Ky~(ky) = pi h sum_m j^m d_m (m+1) J_{m+1}(ky h)/(ky h)
//
// come from Chebyshev expansions with the correct edge behaviour,
//   Kx(y) = sum_m c_m T_m(y/h) / sqrt(1 - (y/h)^2),
//   Ky(y) = sum_m d_m U_m(y/h) sqrt(1 - (y/h)^2),
// and enforcing zero tangential E on the strip, tested with the same family,
// decouples into an even system (unknowns c_{2n}, d_{2n+1}) and an odd system
// (c_{2n+1}, d_{2n}).
//
// All ky integrals run over (0, inf). Matrix kernels decay like 1/ky^2 with
// oscillation: the j/(k ky) J_a J_b part is subtracted and its integral
// restored from orthogonality values. Right-hand sides decay exponentially,
// and their large-ky envelopes are likewise subtracted and restored from
// Laplace-Bessel closed forms.

#include <cmath>
#include <functional>
#include <vector>

#include "stripwave/common.hpp"
#include "stripwave/linalg.hpp"
#include "stripwave/medium.hpp"
#include "stripwave/quadrature.hpp"
#include "stripwave/specfun.hpp"

namespace stripwave::fullwave {

struct SolverParams {
  int m_max = 3;             // highest retained test/basis index pair
  double ky_max = 0.0;       // transverse spectral cut; 0 selects automatically
  double rel_tol = 1e-8;     // ky quadrature relative tolerance
  double abs_tol = 1e-13;    // ky quadrature absolute floor
  int max_intervals = 4000;
  double cond_warn = 1e12;
  double cond_error = 1e14;
  double residual_limit = 1e-10;

  void validate() const {
    if (m_max < 0 || m_max > 15)
      throw ConfigError("solver: m_max must be in 0..15");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw ConfigError("solver: tolerances must be positive");
    if (ky_max < 0.0) throw ConfigError("solver: ky_max must be >= 0");
  }
};

enum class Parity { Even, Odd, Both };

struct ModeSolution {
  // Chebyshev coefficients, index m = 0 .. 2 m_max + 1
  std::vector<cplx> c, d;
  double cond_even = 0.0, cond_odd = 0.0;
};

namespace detail {

inline double effective_kymax(const StripGeometry& geom, const Medium& med,
                              const SolverParams& p) {
  return p.ky_max > 0.0
             ? p.ky_max
             : quadrature::select_kymax(geom.h, geom.a, med.k, p.rel_tol);
}

// (1 - e^{-2 j kz a}) / (k kz): the strip/ground interaction weight
inline cplx w_factor(cplx k, double a, cplx kx, double ky) {
  const cplx kz = longitudinal_wavenumber(k, kx, ky);
  return (1.0 - std::exp(-2.0 * J_UNIT * kz * a)) / (k * kz);
}

// breakpoints for the ky quadrature: the (0,0) subtraction onset, the
// quasi-transition where kz passes near zero, and a geometric ladder above
// them so exponentially damped parts can never hide inside one huge seed
// panel whose quadrature nodes all land beyond the decay range
inline std::vector<double> ky_breakpoints(cplx k, cplx kx, double h,
                                          double kymax) {
  std::vector<double> pts{0.0};
  const double start00 = 1.0 / h;
  if (start00 < kymax) pts.push_back(start00);
  double base = std::max(1.0, std::min(start00, kymax));
  const cplx kc = std::sqrt(k * k - kx * kx);
  if (std::abs(kc.imag()) < 0.5 * std::abs(kc.real()) && kc.real() > 0.0 &&
      kc.real() < kymax) {
    pts.push_back(kc.real());
    base = std::max(base, kc.real());
  }
  for (double p = 2.0 * base; p < kymax; p *= 2.0) pts.push_back(p);
  pts.push_back(kymax);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Laplace-Bessel combinations for the RHS add-backs. A is the Bessel order.
inline cplx lap_cos(double d, double y0, double h, int A) {
  return 0.5 * (specfun::laplace_bessel_0({d, -y0}, h, A) +
                specfun::laplace_bessel_0({d, y0}, h, A));
}
inline cplx lap_sin(double d, double y0, double h, int A) {
  return (specfun::laplace_bessel_0({d, -y0}, h, A) -
          specfun::laplace_bessel_0({d, y0}, h, A)) /
         (2.0 * J_UNIT);
}
inline cplx lap_cos_over(double d1, double d2, double y0, double h, int A) {
  if (A == 0)
    return 0.5 * (specfun::laplace_bessel_over_k_diff({d1, -y0}, {d2, -y0}, h) +
                  specfun::laplace_bessel_over_k_diff({d1, y0}, {d2, y0}, h));
  return 0.5 * ((specfun::laplace_bessel_over_k({d1, -y0}, h, A) -
                 specfun::laplace_bessel_over_k({d2, -y0}, h, A)) +
                (specfun::laplace_bessel_over_k({d1, y0}, h, A) -
                 specfun::laplace_bessel_over_k({d2, y0}, h, A)));
}
inline cplx lap_sin_over(double d1, double d2, double y0, double h, int A) {
  return ((specfun::laplace_bessel_over_k({d1, -y0}, h, A) -
           specfun::laplace_bessel_over_k({d2, -y0}, h, A)) -
          (specfun::laplace_bessel_over_k({d1, y0}, h, A) -
           specfun::laplace_bessel_over_k({d2, y0}, h, A))) /
         (2.0 * J_UNIT);
}

struct PairSet {
  std::vector<int> orders;
  int npairs = 0;
  int index(int i, int j) const {  // i <= j into orders
    const int n = static_cast<int>(orders.size());
    return i * n - i * (i - 1) / 2 + (j - i);
  }
  void build(int first, int last) {  // orders first, first+2, ..., last
    orders.clear();
    for (int o = first; o <= last; o += 2) orders.push_back(o);
    const int n = static_cast<int>(orders.size());
    npairs = n * (n + 1) / 2;
  }
};

}  // namespace detail

// Assembled Galerkin systems at one kx. Row/column n runs 0..m_max for the
// first unknown block and m_max+1..2m_max+1 for the second:
//   even system: x = [c_0, c_2, ..., c_{2N}; d_1, d_3, ..., d_{2N+1}]
//   odd system:  x = [c_1, c_3, ..., c_{2N+1}; d_0, d_2, ..., d_{2N}]
struct Assembly {
  int n_max = 0;
  int dim = 0;
  std::vector<cplx> A_even, b_even, A_odd, b_odd;
};

inline Assembly assemble(const Medium& med, const StripGeometry& geom,
                         const DipoleSource& src, const SolverParams& params,
                         cplx kx, Parity parity = Parity::Both) {
  params.validate();
  geom.validate();
  src.validate(geom);
  const int N = params.m_max;
  const bool wantE = parity != Parity::Odd;
  const bool wantO = parity != Parity::Even;

  const cplx k = med.k;
  const cplx k2 = k * k;
  const double h = geom.h, a = geom.a, y0 = src.y0;
  const double d1 = std::abs(a - src.z0), d2 = a + src.z0;
  const double sg = a > src.z0 ? 1.0 : -1.0;
  const int axis = src.axis;
  const cplx amp_w = J_UNIT / k;    // subtracted amplitude, W table
  const cplx amp_w2 = -J_UNIT / k;  // subtracted amplitude, W2 table
  const double start00 = 1.0 / h;

  detail::PairSet we, w2e, wo;
  we.build(0, 2 * N + 2);       // W, even orders
  w2e.build(2, 2 * N + 2);      // W2, even orders >= 2
  wo.build(1, 2 * N + 1);       // W and W2, odd orders
  const int nR = N + 1;

  int ncomp = 0;
  const int ofsWE = ncomp; ncomp += wantE ? we.npairs : 0;
  const int ofsW2E = ncomp; ncomp += wantE ? w2e.npairs : 0;
  const int ofsR1 = ncomp; ncomp += wantE ? nR : 0;
  const int ofsR2 = ncomp; ncomp += wantE ? nR : 0;
  const int ofsWO = ncomp; ncomp += wantO ? wo.npairs : 0;
  const int ofsW2O = ncomp; ncomp += wantO ? wo.npairs : 0;
  const int ofsR3 = ncomp; ncomp += wantO ? nR : 0;
  const int ofsR4 = ncomp; ncomp += wantO ? nR : 0;

  const int nbes = 2 * N + 2;

  quadrature::VectorIntegrand f = [&](double ky, std::span<cplx> out) {
    const cplx kz = longitudinal_wavenumber(k, kx, ky);
    const cplx w = (1.0 - std::exp(-2.0 * J_UNIT * kz * a)) / (k * kz);
    const double x = ky * h;
    double jv[specfun::MAX_ORDER + 1];
    specfun::bessel_j_batch(nbes, x, std::span<double>(jv, nbes + 1));
    double jr[specfun::MAX_ORDER + 1];  // J_b(x)/x
    if (x < 0.1) {
      for (int b = 1; b <= nbes; ++b) jr[b] = specfun::bessel_j_over_x(b, x);
    } else {
      for (int b = 1; b <= nbes; ++b) jr[b] = jv[b] / x;
    }
    const cplx e1 = std::exp(-J_UNIT * kz * d1);
    const cplx e2 = std::exp(-J_UNIT * kz * d2);
    const cplx E = e1 - e2, S = sg * e1 + e2;
    const double eb1 = std::exp(-ky * d1), eb2 = std::exp(-ky * d2);
    const double Ebar = eb1 - eb2, Sbar = sg * eb1 + eb2;
    const double EbarK = -eb1 * std::expm1(-ky * (d2 - d1)) / ky;
    const double cy = std::cos(ky * y0), sy = std::sin(ky * y0);
    const double syk = std::abs(ky * y0) < 1e-6
                           ? y0 * (1.0 - (ky * y0) * (ky * y0) / 6.0)
                           : sy / ky;
    const cplx ky2 = cplx{ky * ky, 0.0};

    if (wantE) {
      for (int i = 0, idx = 0; i < (int)we.orders.size(); ++i)
        for (int j = i; j < (int)we.orders.size(); ++j, ++idx) {
          const int oa = we.orders[i], ob = we.orders[j];
          cplx v = w * jv[oa] * jv[ob];
          if (oa == 0 && ob == 0) {
            if (ky >= start00) v -= amp_w * jv[0] * jv[0] / ky;
          } else {
            v -= amp_w * jv[oa] * jv[ob] / ky;
          }
          out[ofsWE + idx] = v;
        }
      for (int i = 0, idx = 0; i < (int)w2e.orders.size(); ++i)
        for (int j = i; j < (int)w2e.orders.size(); ++j, ++idx) {
          const int oa = w2e.orders[i], ob = w2e.orders[j];
          out[ofsW2E + idx] = w * (k2 - ky2) * (h * jr[oa]) * (h * jr[ob]) -
                              amp_w2 * jv[oa] * jv[ob] / ky;
        }
      for (int m = 0; m <= N; ++m) {
        const int A1o = 2 * m, A2o = 2 * m + 2;
        cplx exact1, asym1, exact2, asym2;
        switch (axis) {
          case 0:
            exact1 = -(k2 - kx * kx) / kz * E * cy;
            asym1 = -(k2 - kx * kx) * J_UNIT * EbarK * cy;
            exact2 = kx / (kz * h) * E * cy;
            asym2 = kx / h * J_UNIT * EbarK * cy;
            break;
          case 1:
            exact1 = kx * ky / kz * E * (J_UNIT * sy);
            asym1 = -kx * Ebar * sy;
            exact2 = -(k2 - ky2) / (kz * h) * E * (J_UNIT * syk);
            asym2 = -(1.0 / h) * Ebar * sy;
            break;
          default:
            exact1 = kx * S * cy;
            asym1 = kx * Sbar * cy;
            exact2 = (1.0 / h) * S * cy;
            asym2 = (1.0 / h) * Sbar * cy;
        }
        out[ofsR1 + m] = jv[A1o] * (exact1 - asym1);
        out[ofsR2 + m] = jv[A2o] * (exact2 - asym2);
      }
    }
    if (wantO) {
      for (int i = 0, idx = 0; i < (int)wo.orders.size(); ++i)
        for (int j = i; j < (int)wo.orders.size(); ++j, ++idx) {
          const int oa = wo.orders[i], ob = wo.orders[j];
          out[ofsWO + idx] =
              w * jv[oa] * jv[ob] - amp_w * jv[oa] * jv[ob] / ky;
          out[ofsW2O + idx] = w * (k2 - ky2) * (h * jr[oa]) * (h * jr[ob]) -
                              amp_w2 * jv[oa] * jv[ob] / ky;
        }
      for (int m = 0; m <= N; ++m) {
        const int Ao = 2 * m + 1;
        cplx exact3, asym3, exact4, asym4;
        bool r4_uses_ratio = false;
        switch (axis) {
          case 0:
            exact3 = -(k2 - kx * kx) / kz * E * (J_UNIT * sy);
            asym3 = (k2 - kx * kx) * EbarK * sy;
            exact4 = kx / (kz * h) * E * (J_UNIT * sy);
            asym4 = -kx / h * EbarK * sy;
            break;
          case 1:
            exact3 = kx * ky / kz * E * cy;
            asym3 = J_UNIT * kx * Ebar * cy;
            // exact4 carries J_A(ky h)/ky: handled with the ratio below
            exact4 = -(k2 - ky2) / kz * E * cy;
            asym4 = J_UNIT / h * Ebar * cy;
            r4_uses_ratio = true;
            break;
          default:
            exact3 = kx * S * (J_UNIT * sy);
            asym3 = J_UNIT * kx * Sbar * sy;
            exact4 = (1.0 / h) * S * (J_UNIT * sy);
            asym4 = J_UNIT / h * Sbar * sy;
        }
        out[ofsR3 + m] = jv[Ao] * (exact3 - asym3);
        out[ofsR4 + m] = r4_uses_ratio ? exact4 * jr[Ao] - asym4 * jv[Ao]
                                       : jv[Ao] * (exact4 - asym4);
      }
    }
  };

  const double kymax = detail::effective_kymax(geom, med, params);
  const std::vector<double> pts = detail::ky_breakpoints(k, kx, h, kymax);
  quadrature::Options opts;
  opts.abs_tol = params.abs_tol;
  opts.rel_tol = params.rel_tol;
  opts.max_intervals = params.max_intervals;
  std::vector<cplx> vals(ncomp);
  quadrature::integrate_vector(f, ncomp, pts, opts, vals);

  // closed-form add-backs
  if (wantE) {
    for (int i = 0, idx = 0; i < (int)we.orders.size(); ++i)
      for (int j = i; j < (int)we.orders.size(); ++j, ++idx) {
        const int oa = we.orders[i], ob = we.orders[j];
        if (oa == 0 && ob == 0)
          vals[ofsWE + idx] += amp_w * specfun::j0_squared_tail_constant();
        else if (oa == ob)
          vals[ofsWE + idx] += amp_w / (2.0 * oa);
      }
    for (int i = 0, idx = 0; i < (int)w2e.orders.size(); ++i)
      for (int j = i; j < (int)w2e.orders.size(); ++j, ++idx) {
        const int oa = w2e.orders[i], ob = w2e.orders[j];
        if (oa == ob) vals[ofsW2E + idx] += amp_w2 / (2.0 * oa);
      }
    for (int m = 0; m <= N; ++m) {
      const int A1o = 2 * m, A2o = 2 * m + 2;
      switch (axis) {
        case 0:
          vals[ofsR1 + m] += -(k2 - kx * kx) * J_UNIT *
                             detail::lap_cos_over(d1, d2, y0, h, A1o);
          vals[ofsR2 + m] +=
              kx / h * J_UNIT * detail::lap_cos_over(d1, d2, y0, h, A2o);
          break;
        case 1:
          vals[ofsR1 + m] += -kx * (detail::lap_sin(d1, y0, h, A1o) -
                                    detail::lap_sin(d2, y0, h, A1o));
          vals[ofsR2 + m] += -(1.0 / h) * (detail::lap_sin(d1, y0, h, A2o) -
                                           detail::lap_sin(d2, y0, h, A2o));
          break;
        default:
          vals[ofsR1 + m] += kx * (sg * detail::lap_cos(d1, y0, h, A1o) +
                                   detail::lap_cos(d2, y0, h, A1o));
          vals[ofsR2 + m] += (1.0 / h) * (sg * detail::lap_cos(d1, y0, h, A2o) +
                                          detail::lap_cos(d2, y0, h, A2o));
      }
    }
  }
  if (wantO) {
    for (int i = 0, idx = 0; i < (int)wo.orders.size(); ++i)
      for (int j = i; j < (int)wo.orders.size(); ++j, ++idx) {
        const int oa = wo.orders[i], ob = wo.orders[j];
        if (oa == ob) {
          vals[ofsWO + idx] += amp_w / (2.0 * oa);
          vals[ofsW2O + idx] += amp_w2 / (2.0 * oa);
        }
      }
    for (int m = 0; m <= N; ++m) {
      const int Ao = 2 * m + 1;
      switch (axis) {
        case 0:
          vals[ofsR3 + m] +=
              (k2 - kx * kx) * detail::lap_sin_over(d1, d2, y0, h, Ao);
          vals[ofsR4 + m] +=
              -kx / h * detail::lap_sin_over(d1, d2, y0, h, Ao);
          break;
        case 1:
          vals[ofsR3 + m] += J_UNIT * kx * (detail::lap_cos(d1, y0, h, Ao) -
                                            detail::lap_cos(d2, y0, h, Ao));
          vals[ofsR4 + m] += J_UNIT / h * (detail::lap_cos(d1, y0, h, Ao) -
                                           detail::lap_cos(d2, y0, h, Ao));
          break;
        default:
          vals[ofsR3 + m] += J_UNIT * kx * (sg * detail::lap_sin(d1, y0, h, Ao) +
                                            detail::lap_sin(d2, y0, h, Ao));
          vals[ofsR4 + m] += J_UNIT / h * (sg * detail::lap_sin(d1, y0, h, Ao) +
                                           detail::lap_sin(d2, y0, h, Ao));
      }
    }
  }

  // matrices
  Assembly out;
  out.n_max = N;
  out.dim = 2 * (N + 1);
  const int dim = out.dim;
  const cplx pref =
      J_UNIT * src.p / (med.eps * med.eta) * std::exp(J_UNIT * kx * src.x0);
  const double pih = PI * h;

  if (wantE) {
    out.A_even.assign(static_cast<size_t>(dim) * dim, cplx{});
    out.b_even.assign(dim, cplx{});
    for (int m = 0; m <= N; ++m) {
      for (int n = 0; n <= N; ++n) {
        const double sn = (n % 2 == 0) ? 1.0 : -1.0;
        // test J_{2m}: c_{2n} and d_{2n+1} couplings
        const int ia = we.index(std::min(m, n), std::max(m, n));
        out.A_even[m * dim + n] =
            pih * sn * (k2 - kx * kx) * vals[ofsWE + ia];
        const int ib = we.index(std::min(m, n + 1), std::max(m, n + 1));
        out.A_even[m * dim + (N + 1 + n)] =
            pih * sn * (-J_UNIT * kx / h) * (2.0 * n + 2.0) * vals[ofsWE + ib];
        // test J_{2m+2}
        const int ic = we.index(std::min(m + 1, n), std::max(m + 1, n));
        out.A_even[(N + 1 + m) * dim + n] =
            pih * sn * (-kx / h) * vals[ofsWE + ic];
        const int id = w2e.index(std::min(m, n), std::max(m, n));
        out.A_even[(N + 1 + m) * dim + (N + 1 + n)] =
            pih * sn * (J_UNIT * (2.0 * n + 2.0) / (h * h)) * vals[ofsW2E + id];
      }
      out.b_even[m] = pref * vals[ofsR1 + m];
      out.b_even[N + 1 + m] = pref * vals[ofsR2 + m];
    }
  }
  if (wantO) {
    out.A_odd.assign(static_cast<size_t>(dim) * dim, cplx{});
    out.b_odd.assign(dim, cplx{});
    for (int m = 0; m <= N; ++m) {
      for (int n = 0; n <= N; ++n) {
        const double sn = (n % 2 == 0) ? 1.0 : -1.0;
        const int ip = wo.index(std::min(m, n), std::max(m, n));
        out.A_odd[m * dim + n] =
            pih * sn * (J_UNIT * (k2 - kx * kx)) * vals[ofsWO + ip];
        out.A_odd[m * dim + (N + 1 + n)] =
            pih * sn * (-kx / h) * (2.0 * n + 1.0) * vals[ofsWO + ip];
        out.A_odd[(N + 1 + m) * dim + n] =
            pih * sn * (-J_UNIT * kx / h) * vals[ofsWO + ip];
        out.A_odd[(N + 1 + m) * dim + (N + 1 + n)] =
            pih * sn * ((2.0 * n + 1.0) / (h * h)) * vals[ofsW2O + ip];
      }
      out.b_odd[m] = pref * vals[ofsR3 + m];
      out.b_odd[N + 1 + m] = pref * vals[ofsR4 + m];
    }
  }
  return out;
}

inline ModeSolution solve_modes(const Medium& med, const StripGeometry& geom,
                                const DipoleSource& src,
                                const SolverParams& params, cplx kx,
                                Parity parity = Parity::Both) {
  const Assembly asmb = assemble(med, geom, src, params, kx, parity);
  const int N = asmb.n_max;
  ModeSolution sol;
  sol.c.assign(2 * N + 2, cplx{});
  sol.d.assign(2 * N + 2, cplx{});
  auto check = [&](const linalg::SolveReport& rep, const char* which) {
    if (rep.cond1 > params.cond_error)
      throw ConvergenceError(std::string("galerkin system (") + which +
                                 ") numerically singular",
                             rep.x.empty() ? cplx{} : rep.x[0], rep.cond1);
    if (rep.rel_residual > params.residual_limit)
      throw ConvergenceError(std::string("galerkin solve (") + which +
                                 ") residual too large",
                             rep.x.empty() ? cplx{} : rep.x[0],
                             rep.rel_residual);
  };
  if (parity != Parity::Odd) {
    const linalg::SolveReport rep = linalg::solve_dense(asmb.A_even, asmb.b_even);
    check(rep, "even");
    sol.cond_even = rep.cond1;
    for (int n = 0; n <= N; ++n) {
      sol.c[2 * n] = rep.x[n];
      sol.d[2 * n + 1] = rep.x[N + 1 + n];
    }
  }
  if (parity != Parity::Even) {
    const linalg::SolveReport rep = linalg::solve_dense(asmb.A_odd, asmb.b_odd);
    check(rep, "odd");
    sol.cond_odd = rep.cond1;
    for (int n = 0; n <= N; ++n) {
      sol.c[2 * n + 1] = rep.x[n];
      sol.d[2 * n] = rep.x[N + 1 + n];
    }
  }
  return sol;
}

// For a dipole at x0 = 0 the solution at -kx follows from the one at kx by
// fixed sign flips: the x-directed source keeps c and negates d, the y- and
// z-directed sources negate c and keep d.
inline ModeSolution mirror_solution(const ModeSolution& s, int axis) {
  ModeSolution m = s;
  const double sc = axis == 0 ? 1.0 : -1.0;
  const double sd = -sc;
  for (auto& v : m.c) v *= sc;
  for (auto& v : m.d) v *= sd;
  return m;
}

// Strip current transforms at transverse wavenumber ky (signed).
inline std::pair<cplx, cplx> spectral_currents(const ModeSolution& sol,
                                               double h, double ky) {
  const int M = static_cast<int>(sol.c.size());  // 2N+2 coefficients
  const double x = ky * h;
  double jv[specfun::MAX_ORDER + 1];
  specfun::bessel_j_batch(M, x, std::span<double>(jv, M + 1));
  double jr[specfun::MAX_ORDER + 1];
  if (std::abs(x) < 0.1) {
    for (int b = 1; b <= M; ++b) jr[b] = specfun::bessel_j_over_x(b, x);
  } else {
    for (int b = 1; b <= M; ++b) jr[b] = jv[b] / x;
  }
  cplx jm{1.0, 0.0};  // j^m
  cplx kxs{}, kys{};
  for (int m = 0; m < M; ++m) {
    kxs += jm * sol.c[m] * jv[m];
    kys += jm * sol.d[m] * (m + 1.0) * jr[m + 1];
    jm *= J_UNIT;
  }
  return {PI * h * kxs, PI * h * kys};
}

// Net longitudinal current: integral of Kx across the strip.
inline cplx net_current(const ModeSolution& sol, double h) {
  return PI * h * sol.c[0];
}

// Single W-table entry by scalar quadrature; shared with the narrow-strip
// kernel and used for cross-checks against the assembled systems.
inline cplx w_table_entry(const Medium& med, const StripGeometry& geom,
                          const SolverParams& params, cplx kx, int a, int b) {
  if ((a + b) % 2 != 0)
    throw std::invalid_argument("w_table_entry: orders must share parity");
  quadrature::TailSubtractionPlan plan;
  plan.a = a;
  plan.b = b;
  plan.h = geom.h;
  plan.amplitude = J_UNIT / med.k;
  plan.start = (a == 0 && b == 0) ? 1.0 / geom.h : 0.0;
  const double kymax = detail::effective_kymax(geom, med, params);
  auto f = [&](double ky) -> cplx {
    return detail::w_factor(med.k, geom.a, kx, ky) *
           specfun::bessel_j(a, ky * geom.h) * specfun::bessel_j(b, ky * geom.h);
  };
  quadrature::Options opts;
  opts.abs_tol = params.abs_tol;
  opts.rel_tol = params.rel_tol;
  opts.max_intervals = params.max_intervals;
  const std::vector<double> pts =
      detail::ky_breakpoints(med.k, kx, geom.h, kymax);
  return quadrature::integrate_spectral(
      f, kymax, plan, opts,
      std::span<const double>(pts.data() + 1, pts.size() - 2));
}

}  // namespace stripwave::fullwave
