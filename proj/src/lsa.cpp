// SPDX-License-Identifier: Apache-2.0
#include "trendkit/lsa.hpp"

#include <algorithm>
#include <cmath>

#include "trendkit/errors.hpp"
#include "trendkit/linalg.hpp"
#include "trendkit/rng.hpp"

namespace trendkit {

namespace {

constexpr int kDenseCutoff = 64;
constexpr int kOversampling = 10;
constexpr int kPowerIterations = 4;

// Y = A * B where A is the |V| x D term-document view of x (docs x terms).
DenseMat term_view_times(const DocTermMatrix& x, const DenseMat& b) {
  DenseMat y(x.term_count, b.cols);
  for (int d = 0; d < x.doc_count; ++d) {
    const double* brow = b.data.data() + static_cast<std::size_t>(d) * b.cols;
    for (const auto& [t, val] : x.rows[d]) {
      double* yrow = y.data.data() + static_cast<std::size_t>(t) * y.cols;
      for (int c = 0; c < b.cols; ++c) yrow[c] += val * brow[c];
    }
  }
  return y;
}

// Z = A' * Q (D x l) for the same term-document view.
DenseMat term_view_transpose_times(const DocTermMatrix& x, const DenseMat& q) {
  DenseMat z(x.doc_count, q.cols);
  for (int d = 0; d < x.doc_count; ++d) {
    double* zrow = z.data.data() + static_cast<std::size_t>(d) * z.cols;
    for (const auto& [t, val] : x.rows[d]) {
      const double* qrow = q.data.data() + static_cast<std::size_t>(t) * q.cols;
      for (int c = 0; c < q.cols; ++c) zrow[c] += val * qrow[c];
    }
  }
  return z;
}

void canonicalize_signs(LsaModel& model) {
  for (int c = 0; c < model.k; ++c) {
    int best = 0;
    double best_abs = -1.0;
    for (int t = 0; t < model.term_count; ++t) {
      const double a = std::abs(model.u_at(t, c));
      if (a > best_abs) {
        best_abs = a;
        best = t;
      }
    }
    if (model.u_at(best, c) < 0.0) {
      for (int t = 0; t < model.term_count; ++t)
        model.u[static_cast<std::size_t>(t) * model.k + c] *= -1.0;
      for (int d = 0; d < model.doc_count; ++d)
        model.vt[static_cast<std::size_t>(c) * model.doc_count + d] *= -1.0;
    }
  }
}

LsaModel from_svd(const SvdResult& svd, const DocTermMatrix& x, int k,
                  std::uint64_t seed) {
  LsaModel model;
  model.k = k;
  model.term_count = x.term_count;
  model.doc_count = x.doc_count;
  model.seed = seed;
  model.u.resize(static_cast<std::size_t>(x.term_count) * k);
  model.sigma.assign(svd.sigma.begin(), svd.sigma.begin() + k);
  model.vt.resize(static_cast<std::size_t>(k) * x.doc_count);
  for (int t = 0; t < x.term_count; ++t)
    for (int c = 0; c < k; ++c)
      model.u[static_cast<std::size_t>(t) * k + c] = svd.u.at(t, c);
  for (int c = 0; c < k; ++c)
    for (int d = 0; d < x.doc_count; ++d)
      model.vt[static_cast<std::size_t>(c) * x.doc_count + d] = svd.vt.at(c, d);
  canonicalize_signs(model);
  return model;
}

}  // namespace

LsaModel fit_lsa(const DocTermMatrix& x, int k, std::uint64_t seed) {
  const int v = x.term_count;
  const int d = x.doc_count;
  if (v == 0 || d == 0) throw EmptyCorpusError("lsa: empty matrix");
  if (k < 1 || k > std::min(v, d))
    throw RankTooLargeError("lsa: k must be in [1, min(|V|, D)]");

  if (std::min(v, d) <= kDenseCutoff) {
    DenseMat a(v, d);
    for (int doc = 0; doc < d; ++doc)
      for (const auto& [t, val] : x.rows[doc]) a.at(t, doc) = val;
    return from_svd(jacobi_svd(a), x, k, seed);
  }

  // Randomized range finder on the |V| x D view.
  const int l = std::min(k + kOversampling, std::min(v, d));
  SeededRng rng(seed);
  DenseMat omega(d, l);
  for (auto& val : omega.data) val = rng.next_gaussian();

  DenseMat q = term_view_times(x, omega);
  orthonormalize_columns(q);
  for (int it = 0; it < kPowerIterations; ++it) {
    DenseMat z = term_view_transpose_times(x, q);
    orthonormalize_columns(z);
    q = term_view_times(x, z);
    orthonormalize_columns(q);
  }

  // B = Q'A is l x D; its SVD gives the truncated triplets.
  DenseMat b_t = term_view_transpose_times(x, q);  // D x l = B'
  SvdResult small = jacobi_svd(transpose(b_t));
  // U = Q * U_b
  DenseMat u_full = matmul(q, small.u);
  SvdResult assembled;
  assembled.u = std::move(u_full);
  assembled.sigma = std::move(small.sigma);
  assembled.vt = std::move(small.vt);
  return from_svd(assembled, x, k, seed);
}

std::vector<double> doc_vector(const LsaModel& model, int j) {
  std::vector<double> out(model.k);
  for (int c = 0; c < model.k; ++c) out[c] = model.sigma[c] * model.vt_at(c, j);
  return out;
}

double cosine(const std::vector<double>& u, const std::vector<double>& v) {
  double uu = 0.0, vv = 0.0, uv = 0.0;
  const std::size_t n = std::min(u.size(), v.size());
  for (std::size_t i = 0; i < n; ++i) {
    uu += u[i] * u[i];
    vv += v[i] * v[i];
    uv += u[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) return 0.0;
  return uv / (std::sqrt(uu) * std::sqrt(vv));
}

std::vector<std::pair<int, double>> lsa_topic_terms(const LsaModel& model,
                                                    int component, int n) {
  std::vector<std::pair<int, double>> entries(model.term_count);
  for (int t = 0; t < model.term_count; ++t)
    entries[t] = {t, model.u_at(t, component)};
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    const double aa = std::abs(a.second), ab = std::abs(b.second);
    if (aa != ab) return aa > ab;
    return a.first < b.first;
  });
  if (n < static_cast<int>(entries.size())) entries.resize(n);
  return entries;
}

std::vector<double> lsa_fold_in(const LsaModel& model,
                                const std::vector<std::pair<int, double>>& doc_row) {
  std::vector<double> coords(model.k, 0.0);
  for (const auto& [t, val] : doc_row)
    for (int c = 0; c < model.k; ++c) coords[c] += model.u_at(t, c) * val;
  for (int c = 0; c < model.k; ++c)
    coords[c] = model.sigma[c] > 0.0 ? coords[c] / model.sigma[c] : 0.0;
  return coords;
}

}  // namespace trendkit
