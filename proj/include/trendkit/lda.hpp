// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "trendkit/vectorize.hpp"

namespace trendkit {

struct LdaConfig {
  int topics = 10;          // K
  double alpha = 0.0;       // symmetric doc-topic prior; <= 0 means 50/K
  double beta = 0.01;       // symmetric topic-word prior
  int iterations = 1000;
  int burn_in = 500;        // sweeps discarded before averaging
  std::uint64_t seed = 42;

  // Diagnostics, off by default.
  bool validate_counts = false;  // verify count conservation every sweep
  bool track_loglik = false;     // record per-sweep corpus log likelihood

  double resolved_alpha() const {
    return alpha > 0.0 ? alpha : 50.0 / static_cast<double>(topics);
  }
};

struct LdaModel {
  LdaConfig config;
  int doc_count = 0;
  int term_count = 0;
  std::vector<double> theta;  // doc_count x K row-major, rows sum to 1
  std::vector<double> phi;    // K x term_count row-major, rows sum to 1
  std::vector<int> assignments;   // final topic label per token position
  std::vector<int> doc_offsets;   // doc d's tokens are [offsets[d], offsets[d+1])
  std::vector<double> loglik_trace;  // per sweep, when track_loglik

  double theta_at(int d, int k) const { return theta[d * config.topics + k]; }
  double phi_at(int k, int v) const { return phi[k * term_count + v]; }
};

/// Collapsed Gibbs sampling. Token topics are initialized uniformly at
/// random from the seed; each sweep resamples every token from
/// p(z=k) ~ (n_dk + alpha) * (n_kw + beta) / (n_k + V*beta) with the token
/// removed from the counts. Post-burn-in count states are averaged and
/// smoothed by the priors to produce theta and phi. Deterministic for a
/// fixed seed; resampling order is document order, then position order.
LdaModel fit_lda(const DocTermMatrix& counts, const LdaConfig& cfg);

/// n highest-phi terms of one topic, descending, ties broken by term index.
std::vector<std::pair<int, double>> lda_top_terms(const LdaModel& model,
                                                  int topic, int n);

/// Per-token log( sum_k theta_dk phi_kw ) summed over the corpus.
double log_likelihood(const LdaModel& model, const DocTermMatrix& counts);

}  // namespace trendkit
