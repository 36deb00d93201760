// SPDX-License-Identifier: Apache-2.0
#include "trendkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace trendkit {

DenseMat matmul(const DenseMat& a, const DenseMat& b) {
  DenseMat c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int k = 0; k < a.cols; ++k) {
      const double aik = a.at(i, k);
      if (aik == 0.0) continue;
      const double* brow = b.data.data() + static_cast<std::size_t>(k) * b.cols;
      double* crow = c.data.data() + static_cast<std::size_t>(i) * c.cols;
      for (int j = 0; j < b.cols; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

DenseMat transpose(const DenseMat& a) {
  DenseMat t(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
  return t;
}

double frobenius_norm(const DenseMat& a) {
  double s = 0.0;
  for (double v : a.data) s += v * v;
  return std::sqrt(s);
}

namespace {

double column_dot(const DenseMat& m, int ci, int cj) {
  double s = 0.0;
  for (int r = 0; r < m.rows; ++r) s += m.at(r, ci) * m.at(r, cj);
  return s;
}

void rotate_columns(DenseMat& m, int ci, int cj, double c, double s) {
  for (int r = 0; r < m.rows; ++r) {
    const double vi = m.at(r, ci);
    const double vj = m.at(r, cj);
    m.at(r, ci) = c * vi - s * vj;
    m.at(r, cj) = s * vi + c * vj;
  }
}

// One-sided Jacobi for m >= n. Returns U (m x n), sigma (n), V (n x n).
void jacobi_tall(DenseMat a, DenseMat& u_out, std::vector<double>& sigma_out,
                 DenseMat& v_out) {
  const int n = a.cols;
  DenseMat v(n, n);
  for (int i = 0; i < n; ++i) v.at(i, i) = 1.0;

  constexpr int kMaxSweeps = 64;
  constexpr double kTol = 1e-15;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (int i = 0; i < n - 1; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double alpha = column_dot(a, i, i);
        const double beta = column_dot(a, j, j);
        const double gamma = column_dot(a, i, j);
        if (std::abs(gamma) <= kTol * std::sqrt(alpha * beta) || gamma == 0.0)
          continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t =
            (zeta >= 0.0 ? 1.0 : -1.0) /
            (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate_columns(a, i, j, c, s);
        rotate_columns(v, i, j, c, s);
      }
    }
    if (!rotated) break;
  }

  sigma_out.assign(n, 0.0);
  for (int j = 0; j < n; ++j) sigma_out[j] = std::sqrt(column_dot(a, j, j));

  // Descending order, stable for ties.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return sigma_out[x] > sigma_out[y]; });

  DenseMat u(a.rows, n), vs(n, n);
  std::vector<double> sigma(n);
  for (int jj = 0; jj < n; ++jj) {
    const int src = order[jj];
    sigma[jj] = sigma_out[src];
    if (sigma[jj] > 0.0) {
      const double inv = 1.0 / sigma[jj];
      for (int r = 0; r < a.rows; ++r) u.at(r, jj) = a.at(r, src) * inv;
    }
    for (int r = 0; r < n; ++r) vs.at(r, jj) = v.at(r, src);
  }

  // Complete zero-sigma columns of U to an orthonormal basis.
  for (int jj = 0; jj < n; ++jj) {
    if (sigma[jj] > 0.0) continue;
    for (int basis = 0; basis < a.rows; ++basis) {
      std::vector<double> cand(a.rows, 0.0);
      cand[basis] = 1.0;
      for (int prev = 0; prev < n; ++prev) {
        if (prev == jj || (sigma[prev] == 0.0 && prev > jj)) continue;
        double proj = 0.0;
        for (int r = 0; r < a.rows; ++r) proj += cand[r] * u.at(r, prev);
        for (int r = 0; r < a.rows; ++r) cand[r] -= proj * u.at(r, prev);
      }
      double norm = 0.0;
      for (double vv : cand) norm += vv * vv;
      norm = std::sqrt(norm);
      if (norm > 1e-8) {
        for (int r = 0; r < a.rows; ++r) u.at(r, jj) = cand[r] / norm;
        break;
      }
    }
  }

  u_out = std::move(u);
  sigma_out = std::move(sigma);
  v_out = std::move(vs);
}

}  // namespace

SvdResult jacobi_svd(const DenseMat& a) {
  SvdResult res;
  if (a.rows >= a.cols) {
    DenseMat u, v;
    std::vector<double> sigma;
    jacobi_tall(a, u, sigma, v);
    res.u = std::move(u);
    res.sigma = std::move(sigma);
    res.vt = transpose(v);
  } else {
    // A = U S V'  <=>  A' = V S U'
    DenseMat u, v;
    std::vector<double> sigma;
    jacobi_tall(transpose(a), u, sigma, v);
    res.u = std::move(v);
    res.sigma = std::move(sigma);
    res.vt = transpose(u);
  }
  return res;
}

void orthonormalize_columns(DenseMat& m) {
  const int n = m.cols;
  for (int pass = 0; pass < 2; ++pass) {
    for (int c = 0; c < n; ++c) {
      for (int prev = 0; prev < c; ++prev) {
        const double proj = column_dot(m, c, prev);
        for (int r = 0; r < m.rows; ++r)
          m.at(r, c) -= proj * m.at(r, prev);
      }
      double norm = std::sqrt(column_dot(m, c, c));
      if (norm < 1e-12) {
        // Degenerate direction: substitute a basis vector and redo the column.
        for (int basis = 0; basis < m.rows; ++basis) {
          for (int r = 0; r < m.rows; ++r) m.at(r, c) = (r == basis) ? 1.0 : 0.0;
          for (int prev = 0; prev < c; ++prev) {
            const double proj = column_dot(m, c, prev);
            for (int r = 0; r < m.rows; ++r) m.at(r, c) -= proj * m.at(r, prev);
          }
          norm = std::sqrt(column_dot(m, c, c));
          if (norm > 1e-8) break;
        }
      }
      const double inv = 1.0 / norm;
      for (int r = 0; r < m.rows; ++r) m.at(r, c) *= inv;
    }
  }
}

}  // namespace trendkit
