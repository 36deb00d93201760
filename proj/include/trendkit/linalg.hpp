// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace trendkit {

/// Row-major dense matrix, just enough for the SVD paths and their tests.
struct DenseMat {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  DenseMat() = default;
  DenseMat(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

DenseMat matmul(const DenseMat& a, const DenseMat& b);
DenseMat transpose(const DenseMat& a);
double frobenius_norm(const DenseMat& a);

struct SvdResult {
  DenseMat u;                 // rows x k, orthonormal columns
  std::vector<double> sigma;  // k values, descending
  DenseMat vt;                // k x cols, orthonormal rows
};

/// Full SVD (k = min(rows, cols)) by one-sided Jacobi rotations on the
/// column space. Exact to machine precision for the dense sizes used here;
/// columns for zero singular values are completed to an orthonormal basis.
SvdResult jacobi_svd(const DenseMat& a);

/// Orthonormalizes the columns of m in place (modified Gram-Schmidt with one
/// re-orthogonalization pass). Rank-deficient columns are replaced by unit
/// basis vectors orthogonal to the rest.
void orthonormalize_columns(DenseMat& m);

}  // namespace trendkit
