// Acceptance gate: one self-contained check per shipped guarantee, each
// printing a single [PASS]/[FAIL] line with the achieved numbers. Run all of
// them (default) or a single one with --criterion N.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "stripwave/config.hpp"
#include "stripwave/fields.hpp"
#include "stripwave/fullwave.hpp"
#include "stripwave/narrowstrip.hpp"
#include "stripwave/runner.hpp"
#include "stripwave/selfcheck.hpp"
#include "stripwave/transform.hpp"

using namespace stripwave;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0,
                double c = 0.0) {
  char buf[320];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

config::RunConfig bundled(const char* name) {
  return config::load(std::string(STRIPWAVE_SOURCE_DIR) + "/configs/" + name);
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const cplx& z : v) m = std::max(m, std::abs(z));
  return m;
}

// --- 1: Bessel-product orthogonality identities -----------------------------

Outcome criterion1() {
  double worst = 0.0;
  for (const auto& row : selfcheck::identity_suite())
    worst = std::max(worst, row.deviation);
  return {worst < 1e-7,
          fmt("worst identity deviation %.3e (tol 1e-7)", worst)};
}

// --- 2: pinned spectral tail constant ---------------------------------------

Outcome criterion2() {
  const auto [value, dev] = selfcheck::tail_constant_check();
  return {dev <= 1e-8,
          fmt("recomputed %.10f, deviation %.3e (tol 1e-8)", value, dev)};
}

// --- 3: longitudinal purity for an x-directed dipole ------------------------

Outcome criterion3() {
  auto cfg = bundled("wide_strip.json");  // axis is already "x"
  // The transverse-current null is resolved only down to the expansion
  // truncation level, which drops ~8x per added order (7e-4 at m_max=3,
  // 8e-6 at m_max=5, 5e-10 at m_max=10). Two orders beyond the bundled
  // map setting place the null well below the 1e-4 gate.
  cfg.solver.m_max = 5;
  const auto r = runner::run_fullwave(cfg);
  const double mx = max_abs(r.map.Kx);
  const double my = max_abs(r.map.Ky);
  const double ratio = my / mx;
  return {ratio < 1e-4,
          fmt("max|Ky|/max|Kx| = %.3e at m_max=5 (tol 1e-4)", ratio)};
}

// --- 4: symmetry and covariance suite ---------------------------------------

Outcome criterion4() {
  auto cfg = bundled("wide_strip.json");
  cfg.xgrid = {-2.0, 2.0, 21};
  const std::vector<double> xs = cfg.xgrid.values();
  const std::vector<double> ys = cfg.ygrid.values();
  const size_t ny = ys.size();
  const auto ct = transform::build_contour(cfg.medium, cfg.geom, cfg.src, 2.0,
                                           cfg.contour);

  double worst_parity = 0.0;  // relative to the map scale
  double net_ratio = 0.0;     // y-dipole net current / current scale
  for (int axis = 0; axis < 3; ++axis) {
    DipoleSource src = cfg.src;
    src.axis = axis;
    const auto sols =
        transform::solve_contour(cfg.medium, cfg.geom, src, cfg.solver, ct);
    const auto map =
        transform::reconstruct_currents(ct, sols, cfg.geom.h, xs, ys);
    const double scale = max_abs(map.Kx);
    const double sign = axis == 1 ? -1.0 : 1.0;  // Kx odd in y for a y-dipole
    for (size_t ix = 0; ix < xs.size(); ++ix)
      for (size_t iy = 0; iy < ny; ++iy) {
        const cplx a = map.Kx[ix * ny + iy];
        const cplx b = map.Kx[ix * ny + (ny - 1 - iy)];
        worst_parity = std::max(worst_parity, std::abs(a - sign * b) / scale);
      }
    if (axis == 1) {
      // net longitudinal current must integrate to zero across the strip
      const double dy = ys[1] - ys[0];
      double curr_scale = 0.0;
      for (size_t ix = 0; ix < xs.size(); ++ix) {
        double s = 0.0;
        for (size_t iy = 0; iy < ny; ++iy) {
          const double w = (iy == 0 || iy == ny - 1) ? 0.5 : 1.0;
          s += w * std::abs(map.Kx[ix * ny + iy]) * dy;
        }
        curr_scale = std::max(curr_scale, s);
      }
      net_ratio = max_abs(map.I) / curr_scale;
    }
  }

  // mirror-source covariance: moving the dipole from +y0 to -y0 maps the
  // expansion coefficients through c_m -> s(-1)^m c_m, d_m -> -s(-1)^m d_m
  // with an extra sign flip s for a y-directed dipole
  const size_t n = ct.nodes.size();
  const cplx probes_kx[] = {ct.nodes[n / 5], ct.nodes[n / 2],
                            ct.nodes[(4 * n) / 5]};
  double worst_cov = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    DipoleSource sp = cfg.src;
    sp.axis = axis;
    sp.y0 = 0.3;
    DipoleSource sm = sp;
    sm.y0 = -0.3;
    const double s = axis == 1 ? -1.0 : 1.0;
    for (const cplx kx : probes_kx) {
      const auto p = fullwave::solve_modes(cfg.medium, cfg.geom, sp,
                                           cfg.solver, kx);
      const auto m = fullwave::solve_modes(cfg.medium, cfg.geom, sm,
                                           cfg.solver, kx);
      double scale = 0.0;
      for (const cplx& v : p.c) scale = std::max(scale, std::abs(v));
      for (const cplx& v : p.d) scale = std::max(scale, std::abs(v));
      double par = 1.0;  // (-1)^m
      for (size_t i = 0; i < p.c.size(); ++i) {
        worst_cov = std::max(
            worst_cov, std::abs(m.c[i] - s * par * p.c[i]) / scale);
        worst_cov = std::max(
            worst_cov, std::abs(m.d[i] + s * par * p.d[i]) / scale);
        par = -par;
      }
    }
  }

  // x-translation covariance: shifting the source by x0 multiplies every
  // coefficient by exp(+j kx x0)
  const double x0 = 0.7;
  for (const cplx kx : probes_kx) {
    DipoleSource s0 = cfg.src;
    s0.axis = 2;
    s0.y0 = 0.3;
    DipoleSource st = s0;
    st.x0 = x0;
    const auto a =
        fullwave::solve_modes(cfg.medium, cfg.geom, s0, cfg.solver, kx);
    const auto b =
        fullwave::solve_modes(cfg.medium, cfg.geom, st, cfg.solver, kx);
    const cplx phase = std::exp(J_UNIT * kx * x0);
    double scale = 0.0;
    for (const cplx& v : b.c) scale = std::max(scale, std::abs(v));
    for (const cplx& v : b.d) scale = std::max(scale, std::abs(v));
    for (size_t i = 0; i < a.c.size(); ++i) {
      worst_cov =
          std::max(worst_cov, std::abs(b.c[i] - phase * a.c[i]) / scale);
      worst_cov =
          std::max(worst_cov, std::abs(b.d[i] - phase * a.d[i]) / scale);
    }
  }

  const bool pass =
      worst_parity <= 1e-6 && net_ratio < 1e-4 && worst_cov <= 1e-6;
  return {pass, fmt("Kx parity %.3e (tol 1e-6), y-dipole net current %.3e "
                    "(tol 1e-4), covariance %.3e (tol 1e-6)",
                    worst_parity, net_ratio, worst_cov)};
}

// --- 5: narrow-strip approximation fidelity ---------------------------------

Outcome criterion5() {
  const auto cfg = bundled("narrow_strip.json");  // x grid spans 0..40
  const auto r = runner::run_narrow_compare(cfg);
  const double worst =
      std::max({r.max_d[0], r.max_d[1], r.max_d[2]});
  return {worst < 0.1,
          fmt("max relative deviation d(x): x-dipole %.3f, y-dipole %.3f, "
              "z-dipole %.3f (tol 0.1)",
              r.max_d[0], r.max_d[1], r.max_d[2])};
}

// --- 6: thin-wire model agreement and its breakdown -------------------------

Outcome criterion6() {
  const auto near = runner::run_tem_compare(bundled("tem_wire_a1.json"));
  const auto far = runner::run_tem_compare(bundled("tem_wire_a2.json"));
  const bool pass = near.rms_ratio < 0.25 && far.rms_ratio > 0.25;
  return {pass, fmt("RMS(strip-wire)/RMS(strip) over the 5-20 m window: "
                    "%.3f at height 1 (tol < 0.25), %.3f at height 2 "
                    "(expected > 0.25)",
                    near.rms_ratio, far.rms_ratio)};
}

// --- 7: guided-pole excitation selectivity ----------------------------------

Outcome criterion7() {
  const auto cfg = bundled("tem_wire_a1.json");
  const auto ct = transform::build_contour(cfg.medium, cfg.geom, cfg.src, 25.0,
                                           cfg.contour);
  const double k = cfg.medium.k.real();
  auto nearest = [&](double target) {
    size_t best = 0;
    double dist = 1e300;
    for (size_t i = 0; i < ct.nodes.size(); ++i) {
      const double d = std::abs(ct.nodes[i].real() - target);
      if (ct.nodes[i].real() > 0.0 && d < dist) {
        dist = d;
        best = i;
      }
    }
    return ct.nodes[best];
  };
  const cplx at_pole = nearest(k);
  const cplx away = nearest(0.8 * k);
  auto mag = [&](int axis, cplx kx) {
    DipoleSource src = cfg.src;
    src.axis = axis;
    return std::abs(narrowstrip::spectral_current(cfg.medium, cfg.geom, src,
                                                  cfg.solver, kx)
                        .current);
  };
  const double ratio_x = mag(0, at_pole) / mag(0, away);
  const double ratio_z = mag(2, at_pole) / mag(2, away);
  const bool pass = ratio_x <= 3.0 && ratio_z >= 10.0;
  return {pass, fmt("|I(k)|/|I(0.8k)|: x-dipole %.2f (tol <= 3), z-dipole "
                    "%.1f (expected >= 10)",
                    ratio_x, ratio_z)};
}

// --- 8: boundary residuals --------------------------------------------------

Outcome criterion8() {
  // (a) per spectral point the two ground-plane image families cancel the
  // tangential electric field at z = 0 algebraically
  const Medium med = Medium::make(3.0e8, EPS0 * cplx{1.0, -1e-5},
                                  MU0 * cplx{1.0, -1e-5});
  const StripGeometry geom{0.5, 1.0};
  const cplx Kx{0.83, -0.31}, Ky{-0.12, 0.57};
  double worst_spectral = 0.0;
  for (int axis : {0, 1, 2}) {
    const DipoleSource src{axis, 1e-12, 0.1, 0.2, 0.5};
    for (const cplx kx : {cplx{3.1, -0.4}, cplx{6.2, 0.0063}, cplx{0.35, 0.0}})
      for (const double ky : {0.7, 5.0, 23.0}) {
        const auto sf =
            fields::spectral_field(med, geom, src, kx, ky, Kx, Ky, 0.0);
        const double scale =
            std::max(std::abs(sf.E.z),
                     std::abs(med.eta) * (std::abs(sf.H.x) + std::abs(sf.H.y)));
        worst_spectral =
            std::max(worst_spectral,
                     std::max(std::abs(sf.E.x), std::abs(sf.E.y)) / scale);
      }
  }

  // (b) reconstructed spatial field: tangential E on the strip surface stays
  // at the truncation level of the current expansion
  auto cfg = bundled("narrow_strip.json");
  const auto ct = transform::build_contour(cfg.medium, cfg.geom, cfg.src, 2.0,
                                           cfg.contour);
  const auto sols =
      transform::solve_contour(cfg.medium, cfg.geom, cfg.src, cfg.solver, ct);
  const double zs = cfg.geom.a + 1e-8;
  std::vector<fields::Probe> probes;
  for (int j = 1; j <= 5; ++j)  // interior Chebyshev angles j pi / 6
    probes.push_back({1.5, cfg.geom.h * std::cos(j * PI / 6.0), zs});
  const auto tot =
      fields::spatial_fields(cfg.medium, cfg.geom, cfg.src, ct, sols, probes);
  fields::FieldParams pinc;
  pinc.parts = fields::FieldParts::incident;
  const auto inc = fields::spatial_fields(cfg.medium, cfg.geom, cfg.src, ct,
                                          {}, probes, pinc);
  double worst_spatial = 0.0;
  for (size_t i = 0; i < probes.size(); ++i) {
    const double res = std::hypot(std::abs(tot[i].E.x), std::abs(tot[i].E.y));
    const double scale =
        std::hypot(std::abs(inc[i].E.x), std::abs(inc[i].E.y));
    worst_spatial = std::max(worst_spatial, res / scale);
  }

  const bool pass = worst_spectral < 1e-12 && worst_spatial < 1e-3;
  return {pass, fmt("spectral tangential E at z=0: %.3e (tol 1e-12); strip "
                    "surface residual: %.3e (tol 1e-3)",
                    worst_spectral, worst_spatial)};
}

// --- 9: scalar kernel against the first Galerkin entry ----------------------

Outcome criterion9() {
  const auto cfg = bundled("narrow_strip.json");
  const auto ct = transform::build_contour(cfg.medium, cfg.geom, cfg.src, 2.0,
                                           cfg.contour);
  const size_t stride = std::max<size_t>(1, ct.nodes.size() / 20);
  double worst = 0.0;
  int points = 0;
  for (size_t i = 0; i < ct.nodes.size() && points < 20; i += stride, ++points) {
    const cplx kx = ct.nodes[i];
    const cplx kernel = narrowstrip::spectral_current(cfg.medium, cfg.geom,
                                                      cfg.src, cfg.solver, kx)
                            .kernel;
    const auto asmb = fullwave::assemble(cfg.medium, cfg.geom, cfg.src,
                                         cfg.solver, kx,
                                         fullwave::Parity::Even);
    const cplx entry = asmb.A_even[0] / (PI * cfg.geom.h);
    worst = std::max(worst, std::abs(kernel - entry) / std::abs(entry));
  }
  return {worst <= 1e-6,
          fmt("worst relative kernel mismatch over %g contour points: %.3e "
              "(tol 1e-6)",
              double(points), worst)};
}

// --- 10: convergence robustness ---------------------------------------------

Outcome criterion10() {
  auto cfg = bundled("narrow_strip.json");
  const double probes_x[] = {2.0, 10.0, 25.0};

  auto currents = [&](const config::RunConfig& c) {
    const auto ct = transform::build_contour(c.medium, c.geom, c.src, 25.0,
                                             c.contour);
    const auto sols =
        transform::solve_contour(c.medium, c.geom, c.src, c.solver, ct);
    const auto samples = runner::detail::net_current_samples(sols, c.geom.h);
    std::array<cplx, 3> out;
    for (int i = 0; i < 3; ++i)
      out[i] = transform::inverse_transform(ct, samples, probes_x[i]);
    return out;
  };

  const auto base = currents(cfg);

  auto worst_change = [&](const config::RunConfig& c) {
    const auto v = currents(c);
    double w = 0.0;
    for (int i = 0; i < 3; ++i)
      w = std::max(w, std::abs(v[i] - base[i]) / std::abs(base[i]));
    return w;
  };

  config::RunConfig ky2 = cfg;
  ky2.solver.ky_max = 2.0 * fullwave::detail::effective_kymax(
                                cfg.geom, cfg.medium, cfg.solver);
  const double ch_ky = worst_change(ky2);

  config::RunConfig tol2 = cfg;
  tol2.solver.rel_tol *= 0.5;
  tol2.solver.abs_tol *= 0.5;
  const double ch_tol = worst_change(tol2);

  config::RunConfig dens2 = cfg;
  dens2.contour.samples_per_wavelength *= 2;
  const double ch_dens = worst_change(dens2);

  const bool pass = ch_ky < 0.01 && ch_tol < 0.01 && ch_dens < 0.01;
  return {pass, fmt("I(x) change at probes: ky_max doubled %.2e, tolerance "
                    "halved %.2e, kx density doubled %.2e (tol 1e-2)",
                    ch_ky, ch_tol, ch_dens)};
}

struct Criterion {
  const char* name;
  Outcome (*run)();
};

const Criterion CRITERIA[] = {
    {"Bessel-product quadrature identities", criterion1},
    {"pinned spectral tail constant", criterion2},
    {"longitudinal purity for an x-directed dipole", criterion3},
    {"symmetry and covariance suite", criterion4},
    {"narrow-strip approximation fidelity", criterion5},
    {"thin-wire agreement and its breakdown", criterion6},
    {"guided-pole excitation selectivity", criterion7},
    {"boundary residuals", criterion8},
    {"scalar kernel matches the first Galerkin entry", criterion9},
    {"convergence robustness", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;  // 0 = run all
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      const char* v = argv[++i];
      if (std::strcmp(v, "all") != 0) {
        only = std::atoi(v);
        if (only < 1 || only > 10) {
          std::fprintf(stderr, "usage: acceptance [--criterion 1..10|all]\n");
          return 2;
        }
      }
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion 1..10|all]\n");
      return 2;
    }
  }

  bool all_pass = true;
  for (int n = 1; n <= 10; ++n) {
    if (only != 0 && n != only) continue;
    Outcome out;
    try {
      out = CRITERIA[n - 1].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %d: %s — %s\n", out.pass ? "PASS" : "FAIL", n,
                CRITERIA[n - 1].name, out.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && out.pass;
  }
  return all_pass ? 0 : 1;
}
