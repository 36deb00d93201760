// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "trendkit/vectorize.hpp"

namespace trendkit {

/// Truncated SVD of the term-document matrix (the docs x terms input is
/// interpreted in transposed, |V| x D orientation): X = U S V'.
struct LsaModel {
  int k = 0;
  int term_count = 0;  // |V|
  int doc_count = 0;   // D
  std::uint64_t seed = 0;
  std::vector<double> u;      // |V| x k row-major, orthonormal columns
  std::vector<double> sigma;  // k, descending
  std::vector<double> vt;     // k x D row-major, orthonormal rows

  double u_at(int t, int c) const { return u[static_cast<std::size_t>(t) * k + c]; }
  double vt_at(int c, int d) const { return vt[static_cast<std::size_t>(c) * doc_count + d]; }
};

/// Top-k singular triplets. Exact dense SVD when min(|V|, D) <= 64,
/// otherwise a seeded randomized range finder (oversampling 10, 4 power
/// iterations). Signs are canonicalized so the largest-magnitude entry of
/// each U column is positive. Throws RankTooLargeError when
/// k > min(|V|, D).
LsaModel fit_lsa(const DocTermMatrix& x, int k, std::uint64_t seed);

/// Document j's latent coordinates: sigma .* Vt[:, j].
std::vector<double> doc_vector(const LsaModel& model, int j);

/// u.v / (|u||v|); 0 when either norm is 0.
double cosine(const std::vector<double>& u, const std::vector<double>& v);

/// n terms with the largest |U[., component]| loadings, descending by
/// absolute value, ties by term index. Weights keep their sign.
std::vector<std::pair<int, double>> lsa_topic_terms(const LsaModel& model,
                                                    int component, int n);

/// Projects a new weighted document row into the latent space:
/// Sigma^-1 U' x. Zero singular values contribute zero coordinates.
std::vector<double> lsa_fold_in(const LsaModel& model,
                                const std::vector<std::pair<int, double>>& doc_row);

}  // namespace trendkit
