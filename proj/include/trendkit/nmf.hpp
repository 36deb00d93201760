// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "trendkit/vectorize.hpp"

namespace trendkit {

struct NmfConfig {
  int rank = 5;            // r
  int max_iter = 300;
  double tol = 1e-4;       // relative objective change; 0 disables early stop
  std::uint64_t seed = 42;
  double epsilon = 1e-12;  // denominator floor

  // Optional explicit initialization (row-major m x r and r x n); used by
  // fixed-point tests. When absent, factors start uniform-random in (0,1)
  // scaled by sqrt(mean(X)/r).
  std::optional<std::vector<double>> init_w;
  std::optional<std::vector<double>> init_h;
};

struct NmfModel {
  NmfConfig config;
  int doc_count = 0;   // m
  int term_count = 0;  // n
  std::vector<double> w;  // m x r, nonnegative basis
  std::vector<double> h;  // r x n, nonnegative coefficients
  std::vector<double> objective_trace;  // 0.5 * ||X - WH||_F^2 per iteration
  int iterations_run = 0;

  double w_at(int i, int c) const { return w[i * config.rank + c]; }
  double h_at(int c, int j) const { return h[c * term_count + j]; }
};

/// Multiplicative updates minimizing the Frobenius objective:
///   H <- H .* (W'X) ./ (W'WH + eps)
///   W <- W .* (XH') ./ (WHH' + eps)
/// Stops when the relative objective change drops below tol or max_iter is
/// reached. Deterministic for a fixed seed.
NmfModel fit_nmf(const DocTermMatrix& x, const NmfConfig& cfg);

/// n largest term loadings of one component (row of H), descending,
/// ties broken by term index.
std::vector<std::pair<int, double>> nmf_topic_terms(const NmfModel& model,
                                                    int component, int n);

struct DocTopicMix {
  std::vector<double> proportions;  // sums to 1
  bool flagged_uniform = false;     // all-zero W row, uniform substituted
};

/// W row normalized to sum 1; an all-zero row becomes the uniform vector
/// with a flag.
DocTopicMix nmf_doc_topics(const NmfModel& model, int doc_row);

/// Folds one weighted document row into a fitted model: a one-sided,
/// H-fixed multiplicative update of the new document's W row.
DocTopicMix nmf_fold_in(const NmfModel& model,
                        const std::vector<std::pair<int, double>>& doc_row,
                        int iterations = 50);

}  // namespace trendkit
