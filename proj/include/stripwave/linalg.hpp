#pragma once

// Small dense complex solver for the Galerkin systems (dimension <= ~16):
// LU with scaled partial pivoting, an exact 1-norm condition number (the
// systems are tiny, so the inverse is formed), and the relative residual of
// the returned solution.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "stripwave/common.hpp"

namespace stripwave::linalg {

struct SolveReport {
  std::vector<cplx> x;
  double cond1 = 0.0;          // ||A||_1 * ||A^-1||_1
  double rel_residual = 0.0;   // ||A x - b||_inf / (||A||_1 ||x||_inf + ||b||_inf)
};

namespace detail {

struct Lu {
  int n = 0;
  std::vector<cplx> lu;     // factored matrix, row-major
  std::vector<int> perm;    // row permutation
};

inline Lu factor(const std::vector<cplx>& A, int n) {
  Lu f{n, A, std::vector<int>(n)};
  std::vector<double> scale(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s = std::max(s, std::abs(f.lu[i * n + j]));
    if (s == 0.0) throw std::runtime_error("linalg: matrix has a zero row");
    scale[i] = 1.0 / s;
  }
  for (int i = 0; i < n; ++i) f.perm[i] = i;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = -1.0;
    for (int r = col; r < n; ++r) {
      const double v = std::abs(f.lu[r * n + col]) * scale[r];
      if (v > best) best = v, piv = r;
    }
    if (std::abs(f.lu[piv * n + col]) == 0.0)
      throw std::runtime_error("linalg: singular matrix");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(f.lu[piv * n + j], f.lu[col * n + j]);
      std::swap(scale[piv], scale[col]);
      std::swap(f.perm[piv], f.perm[col]);
    }
    const cplx inv = 1.0 / f.lu[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const cplx m = f.lu[r * n + col] * inv;
      f.lu[r * n + col] = m;
      for (int j = col + 1; j < n; ++j) f.lu[r * n + j] -= m * f.lu[col * n + j];
    }
  }
  return f;
}

inline std::vector<cplx> backsolve(const Lu& f, const std::vector<cplx>& b) {
  const int n = f.n;
  std::vector<cplx> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= f.lu[i * n + j] * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= f.lu[i * n + j] * x[j];
    x[i] /= f.lu[i * n + i];
  }
  return x;
}

inline double norm1(const std::vector<cplx>& A, int n) {
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::abs(A[i * n + j]);
    worst = std::max(worst, s);
  }
  return worst;
}

}  // namespace detail

inline SolveReport solve_dense(const std::vector<cplx>& A,
                               const std::vector<cplx>& b) {
  const int n = static_cast<int>(b.size());
  if (A.size() != static_cast<size_t>(n) * n)
    throw std::invalid_argument("linalg: shape mismatch");
  const detail::Lu f = detail::factor(A, n);
  SolveReport rep;
  rep.x = detail::backsolve(f, b);

  // exact 1-norm condition number via the explicit inverse (n is tiny)
  std::vector<cplx> inv(static_cast<size_t>(n) * n);
  std::vector<cplx> e(n);
  for (int j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), cplx{});
    e[j] = 1.0;
    const std::vector<cplx> col = detail::backsolve(f, e);
    for (int i = 0; i < n; ++i) inv[i * n + j] = col[i];
  }
  const double na = detail::norm1(A, n);
  rep.cond1 = na * detail::norm1(inv, n);

  double rnum = 0.0, xmax = 0.0, bmax = 0.0;
  for (int i = 0; i < n; ++i) {
    cplx r = -b[i];
    for (int j = 0; j < n; ++j) r += A[i * n + j] * rep.x[j];
    rnum = std::max(rnum, std::abs(r));
    xmax = std::max(xmax, std::abs(rep.x[i]));
    bmax = std::max(bmax, std::abs(b[i]));
  }
  rep.rel_residual = rnum / (na * xmax + bmax + 1e-300);
  return rep;
}

}  // namespace stripwave::linalg
