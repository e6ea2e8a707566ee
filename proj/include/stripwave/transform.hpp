#pragma once

// Inverse Fourier transform in the longitudinal wavenumber kx along a
// deformed contour, and reconstruction of spatial currents from the
// Chebyshev coefficient traces.
//
// The spectral solution has quasi-TEM poles just off the real axis at
// kx = +-k (pushed off it only by the medium loss), so the inversion path
// is bent away from them: it runs on the real axis far out, dips to -delta
// below the axis around -Re k (passing below the -k pole, which sits above
// the axis), crosses the origin, runs at +delta above the axis around +Re k
// (passing above the +k pole), and returns to the real axis:
//
//   (-K,0) -- (-u3,0) -- (-u2,-d) -- (-u1,-d) -- (u1,+d) -- (u2,+d)
//          -- (u3,0) -- (K,0),     u1 < Re k < u2.
//
// Nodes are composite 7-point Gauss-Legendre panels laid along the straight
// pieces (panel edges sit on the corners, so the rule never integrates
// across a kink), with narrower panels near +-Re k where the spectrum
// peaks. The contour is exactly symmetric under kx -> -kx
// (node(size-1-i) = -node(i) with equal weights), which lets callers solve
// only the positive half and mirror.

#include <algorithm>
#include <cmath>
#include <span>
#include <thread>
#include <vector>

#include "stripwave/common.hpp"
#include "stripwave/fullwave.hpp"
#include "stripwave/medium.hpp"

namespace stripwave::transform {

struct ContourParams {
  double kx_max = 0.0;  // 0: max(8|k|, 30/|a - z0|)
  double delta = -1.0;  // <0: auto = min(100(-Im k), ln(guard)/x_max); >=0 forced
  int samples_per_wavelength = 8;
  double guard = 1e10;  // |e^{-j kx x}| along the contour stays below this

  void validate() const {
    if (kx_max < 0.0) throw ConfigError("contour: kx_max must be >= 0");
    if (samples_per_wavelength < 2)
      throw ConfigError("contour: samples_per_wavelength must be >= 2");
    if (!(guard > 1.0)) throw ConfigError("contour: guard must exceed 1");
  }
};

struct KxContour {
  double kx_max = 0.0;
  double delta = 0.0;
  double x_max = 0.0;
  std::vector<cplx> nodes;    // ascending in Re{kx}, mirror-symmetric
  std::vector<cplx> weights;  // complex path weights (dz included)

  // nodes[mirror_index(i)] == -nodes[i], with the same weight; the
  // positive-Re half starts at index nodes.size()/2
  int mirror_index(int i) const {
    return static_cast<int>(nodes.size()) - 1 - i;
  }
  int positive_start() const { return static_cast<int>(nodes.size()) / 2; }
};

inline KxContour build_contour(const Medium& med, const StripGeometry& geom,
                               const DipoleSource& src, double x_max,
                               const ContourParams& params = {}) {
  params.validate();
  if (!(x_max > 0.0)) throw ConfigError("contour: x_max must be > 0");
  const double im_loss = -med.k.imag();  // >= 0
  const double cap = std::log(params.guard) / x_max;

  double delta;
  if (params.delta >= 0.0) {
    delta = params.delta;
    if (delta > cap)
      throw ConfigError(
          "contour: forced delta exceeds the overflow guard for this x range");
  } else {
    if (cap < 10.0 * im_loss)
      throw ConfigError(
          "contour: medium loss too small (or x range too large) to keep the "
          "path both far from the axis and below the overflow guard; increase "
          "the loss tangent or reduce the x extent");
    delta = std::min(100.0 * im_loss, cap);
  }

  const double sep = std::abs(geom.a - src.z0);
  const double K = params.kx_max > 0.0
                       ? params.kx_max
                       : std::max(8.0 * std::abs(med.k), 30.0 / sep);
  const double rk = med.k.real();
  const double W = std::max(0.25, 40.0 * delta);
  const double u1 = rk - W, u2 = rk + W, u3 = u2 + W;
  if (!(u1 > 0.0) || !(u3 < K))
    throw ConfigError("contour: wavenumber does not fit the path layout");

  // panel widths: a coarse panel spans one x_max-oscillation (7 nodes per
  // wavelength at the default density) and is further capped by the
  // slowest source-image variation scale; fine panels track the spectral
  // peak structure near +-Re k, whose width scales with delta
  const double scale = 8.0 / params.samples_per_wavelength;
  const double lc = std::min(7.0 * 2.0 * PI / (x_max * 8.0) * scale,
                             2.0 / (geom.a + std::max(src.z0, geom.a)));
  const double lf = delta > 0.0 ? std::min(2.0 * delta * scale, lc) : lc / 8.0;
  const double rf = std::min(std::max(25.0 * delta, 8.0 * lf), 0.9 * W);

  // piecewise-linear contour height, odd in u
  auto height = [&](double u) -> double {
    const double s = u < 0.0 ? -1.0 : 1.0;
    const double au = std::abs(u);
    double v;
    if (au <= u1)
      v = delta * au / u1;
    else if (au <= u2)
      v = delta;
    else if (au <= u3)
      v = delta * (u3 - au) / W;
    else
      v = 0.0;
    return s * v;
  };

  // interval list on the positive half; every corner is an interval edge
  std::vector<double> knots{0.0, u1, u2, u3, K};
  if (rk - rf > 0.0) knots.push_back(rk - rf);
  if (rk + rf < K) knots.push_back(rk + rf);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  // 7-point Gauss-Legendre rule (shared with the Kronrod table)
  const double gx[7] = {-quadrature::detail::XGK[1], -quadrature::detail::XGK[3],
                        -quadrature::detail::XGK[5], 0.0,
                        quadrature::detail::XGK[5],  quadrature::detail::XGK[3],
                        quadrature::detail::XGK[1]};
  const double gw[7] = {quadrature::detail::WG[0], quadrature::detail::WG[1],
                        quadrature::detail::WG[2], quadrature::detail::WG[3],
                        quadrature::detail::WG[2], quadrature::detail::WG[1],
                        quadrature::detail::WG[0]};

  std::vector<cplx> pos_nodes, pos_weights;
  for (size_t s = 0; s + 1 < knots.size(); ++s) {
    const double a = knots[s], b = knots[s + 1];
    const double mid = 0.5 * (a + b);
    const double lw = std::abs(mid - rk) <= rf ? lf : lc;
    const int n = std::max(1, (int)std::ceil((b - a) / lw));
    const double slope = (height(b) - height(a)) / (b - a);
    const cplx dz{1.0, slope};
    for (int p = 0; p < n; ++p) {
      const double pa = a + (b - a) * p / n;
      const double pb = a + (b - a) * (p + 1) / n;
      const double c = 0.5 * (pa + pb), hw = 0.5 * (pb - pa);
      for (int q = 0; q < 7; ++q) {
        const double u = c + hw * gx[q];
        pos_nodes.emplace_back(u, height(u));
        pos_weights.push_back(gw[q] * hw * dz);
      }
    }
  }

  KxContour ct;
  ct.kx_max = K;
  ct.delta = delta;
  ct.x_max = x_max;
  const size_t P = pos_nodes.size();
  ct.nodes.resize(2 * P);
  ct.weights.resize(2 * P);
  for (size_t i = 0; i < P; ++i) {
    ct.nodes[P + i] = pos_nodes[i];
    ct.weights[P + i] = pos_weights[i];
    ct.nodes[P - 1 - i] = -pos_nodes[i];
    ct.weights[P - 1 - i] = pos_weights[i];
  }
  return ct;
}

// Solve the Galerkin system at every contour node. Work on separate nodes
// is independent; results land in fixed slots so the output is identical
// for any thread count. With the source on the x = 0 plane the solution at
// -kx follows from the one at +kx by the coefficient mirror map, halving
// the work.
inline std::vector<fullwave::ModeSolution> solve_contour(
    const Medium& med, const StripGeometry& geom, const DipoleSource& src,
    const fullwave::SolverParams& params, const KxContour& ct,
    int threads = 1) {
  const int n = static_cast<int>(ct.nodes.size());
  std::vector<fullwave::ModeSolution> sols(n);
  const bool mirror = src.x0 == 0.0;
  const int begin = mirror ? ct.positive_start() : 0;
  auto work = [&](int offset, int stride) {
    for (int i = begin + offset; i < n; i += stride)
      sols[i] = fullwave::solve_modes(med, geom, src, params, ct.nodes[i]);
  };
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::exception_ptr> errs(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          work(t, threads);
        } catch (...) {
          errs[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
  }
  if (mirror)
    for (int i = begin; i < n; ++i)
      sols[ct.mirror_index(i)] = fullwave::mirror_solution(sols[i], src.axis);
  return sols;
}

// (1/2pi) * sum_i w_i f(z_i) e^{-j z_i x}
inline cplx inverse_transform(const KxContour& ct,
                              std::span<const cplx> samples, double x) {
  if (samples.size() != ct.nodes.size())
    throw std::invalid_argument(
        "inverse_transform: sample count does not match contour");
  if (std::abs(x) > ct.x_max * (1.0 + 1e-12))
    throw ConfigError("inverse_transform: |x| exceeds the contour guard range");
  cplx acc{};
  for (size_t i = 0; i < samples.size(); ++i)
    acc += ct.weights[i] * samples[i] * std::exp(-J_UNIT * ct.nodes[i] * x);
  return acc / (2.0 * PI);
}

struct CurrentMap {
  std::vector<double> x, y;
  std::vector<cplx> Kx, Ky;  // row-major: index ix * y.size() + iy
  std::vector<cplx> I;       // net longitudinal current per x
};

namespace detail {

// cos(m acos t) / sin(acos t) and sin((m+1) acos t) evaluations; the y grid
// must stay strictly inside the strip for the edge-weighted first kind.
inline void check_strip_y(std::span<const double> y, double h) {
  for (double yy : y) {
    const double t = yy / h;
    if (std::abs(1.0 - t * t) <= 1e-14)
      throw ConfigError(
          "current grid: y = +-h sits on the edge singularity; move the "
          "sample strictly inside (or outside) the strip");
  }
}

}  // namespace detail

// Spatial currents from per-node mode solutions (full solver).
inline CurrentMap reconstruct_currents(
    const KxContour& ct, const std::vector<fullwave::ModeSolution>& sols,
    double h, std::span<const double> xg, std::span<const double> yg) {
  if (sols.size() != ct.nodes.size())
    throw std::invalid_argument(
        "reconstruct_currents: solution count does not match contour");
  if (!(h > 0.0)) throw ConfigError("reconstruct_currents: h must be > 0");
  detail::check_strip_y(yg, h);
  const size_t M = sols.empty() ? 0 : sols[0].c.size();
  for (const auto& s : sols)
    if (s.c.size() != M || s.d.size() != M)
      throw std::invalid_argument(
          "reconstruct_currents: ragged coefficient arrays");

  CurrentMap map;
  map.x.assign(xg.begin(), xg.end());
  map.y.assign(yg.begin(), yg.end());
  map.Kx.assign(xg.size() * yg.size(), cplx{});
  map.Ky.assign(xg.size() * yg.size(), cplx{});
  map.I.assign(xg.size(), cplx{});

  std::vector<cplx> cx(M), dx(M);
  for (size_t jx = 0; jx < xg.size(); ++jx) {
    std::fill(cx.begin(), cx.end(), cplx{});
    std::fill(dx.begin(), dx.end(), cplx{});
    for (size_t i = 0; i < ct.nodes.size(); ++i) {
      const cplx ph =
          ct.weights[i] * std::exp(-J_UNIT * ct.nodes[i] * xg[jx]);
      for (size_t m = 0; m < M; ++m) {
        cx[m] += ph * sols[i].c[m];
        dx[m] += ph * sols[i].d[m];
      }
    }
    for (size_t m = 0; m < M; ++m) {
      cx[m] /= 2.0 * PI;
      dx[m] /= 2.0 * PI;
    }
    map.I[jx] = PI * h * (M > 0 ? cx[0] : cplx{});
    for (size_t jy = 0; jy < yg.size(); ++jy) {
      const double t = yg[jy] / h;
      if (std::abs(t) > 1.0) continue;  // zero outside the strip
      const double th = std::acos(std::clamp(t, -1.0, 1.0));
      const double sth = std::sin(th);
      cplx kxv{}, kyv{};
      for (size_t m = 0; m < M; ++m) {
        kxv += cx[m] * std::cos(m * th);
        kyv += dx[m] * std::sin((m + 1.0) * th);
      }
      map.Kx[jx * yg.size() + jy] = kxv / sth;
      map.Ky[jx * yg.size() + jy] = kyv;
    }
  }
  return map;
}

// Spatial currents in the one-term narrow-strip model: the transverse
// profile is the edge-weighted constant, scaled by the net current.
inline CurrentMap reconstruct_currents_narrow(const KxContour& ct,
                                              std::span<const cplx> current,
                                              double h,
                                              std::span<const double> xg,
                                              std::span<const double> yg) {
  if (current.size() != ct.nodes.size())
    throw std::invalid_argument(
        "reconstruct_currents_narrow: sample count does not match contour");
  if (!(h > 0.0)) throw ConfigError("reconstruct_currents_narrow: h > 0");
  detail::check_strip_y(yg, h);
  CurrentMap map;
  map.x.assign(xg.begin(), xg.end());
  map.y.assign(yg.begin(), yg.end());
  map.Kx.assign(xg.size() * yg.size(), cplx{});
  map.Ky.assign(xg.size() * yg.size(), cplx{});
  map.I.assign(xg.size(), cplx{});
  for (size_t jx = 0; jx < xg.size(); ++jx) {
    map.I[jx] = inverse_transform(ct, current, xg[jx]);
    for (size_t jy = 0; jy < yg.size(); ++jy) {
      const double t = yg[jy] / h;
      if (std::abs(t) > 1.0) continue;
      map.Kx[jx * yg.size() + jy] =
          map.I[jx] / (PI * h * std::sqrt(1.0 - t * t));
    }
  }
  return map;
}

}  // namespace stripwave::transform
